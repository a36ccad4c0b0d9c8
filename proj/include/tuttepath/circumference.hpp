#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "tuttepath/tutte_path.hpp"

namespace tuttepath {

namespace detail {

/// Calls visit(S) for every vertex set S with |S| <= max_size; stops early
/// when visit returns false.
template <class Visit>
bool for_each_small_set(const std::vector<Vertex>& vs, std::size_t max_size, Visit visit) {
  VertexSet s;
  auto rec = [&](auto&& self, std::size_t from) -> bool {
    if (!visit(s)) return false;
    if (s.size() == max_size) return true;
    for (std::size_t i = from; i < vs.size(); ++i) {
      s.insert(vs[i]);
      const bool go = self(self, i + 1);
      s.erase(vs[i]);
      if (!go) return false;
    }
    return true;
  };
  return rec(rec, 0);
}

}  // namespace detail

/// G - S is connected for every S with |S| < k, and G has more than k vertices.
inline bool is_k_connected(const RotationEmbedding& g, std::size_t k) {
  const auto vs = g.vertices();
  if (vs.size() <= k) return false;
  return detail::for_each_small_set(vs, k - 1, [&](const VertexSet& s) {
    return components_without(g, s).size() == 1;
  });
}

inline bool is_4_connected(const RotationEmbedding& g) { return is_k_connected(g, 4); }

/// Connected, and removing fewer than four vertices leaves the graph connected
/// or split into exactly two parts, one of them a single vertex.
inline bool is_essentially_4_connected(const RotationEmbedding& g) {
  if (!is_connected(g)) return false;
  return detail::for_each_small_set(g.vertices(), 3, [&](const VertexSet& s) {
    const auto comps = components_without(g, s);
    if (comps.size() <= 1) return true;
    return comps.size() == 2 && (comps[0].size() == 1 || comps[1].size() == 1);
  });
}

/// A Tutte path certificate on an auxiliary circuit graph derived from G.
struct SubCertificate {
  std::string role;  // "G", "H", "K" or "J"
  CircuitGraph graph;
  TuttePathCertificate certificate;
};

struct BridgeAuditEntry {
  std::vector<Vertex> attachments;
  std::vector<Vertex> inner;  // bridge vertices off the cycle
  std::size_t size = 0;
  bool claw = false;  // one inner vertex joined to three cycle vertices
};

struct LongCycleReport {
  std::size_t order = 0;
  std::vector<Vertex> cycle;  // closed implicitly: last vertex adjacent to first
  std::size_t length = 0;
  std::int64_t bound = 0;     // ceil((2n + 6) / 3)
  bool within_theorem = true; // false for n <= 5, where only Hamiltonicity is claimed
  std::string branch;         // "4conn", "deg3-i", "deg3-ii", "deg3-iii", "small-n"
  std::optional<Vertex> removed;  // the degree-3 vertex in the deg3 branches
  bool mirrored = false;
  std::vector<SubCertificate> sub_certificates;
  std::vector<BridgeAuditEntry> bridge_audit;
  std::vector<std::string> notes;
};

inline std::int64_t long_cycle_bound(std::size_t n) { return (2 * static_cast<std::int64_t>(n) + 6 + 2) / 3; }

namespace detail {

inline std::vector<BridgeAuditEntry> audit_cycle_bridges(const RotationEmbedding& g, const std::vector<Vertex>& cycle) {
  Subgraph q = path_subgraph(cycle);
  q.edges.emplace(cycle.back(), cycle.front());
  std::vector<BridgeAuditEntry> out;
  for (const Bridge& b : bridges_of(g, q)) {
    if (b.size() < 3) continue;
    BridgeAuditEntry a;
    a.attachments = b.attachments;
    for (Vertex x : b.vertices)
      if (!q.contains(x)) a.inner.push_back(x);
    a.size = b.size();
    a.claw = a.inner.size() == 1 && a.attachments.size() == 3 && b.edges.size() == 3;
    out.push_back(std::move(a));
  }
  return out;
}

/// Longest cycle by exhaustive search; only used for tiny graphs.
inline std::vector<Vertex> small_longest_cycle(const RotationEmbedding& g) {
  std::vector<Vertex> best, path;
  VertexSet on;
  const auto vs = g.vertices();
  for (Vertex s : vs) {
    path = {s};
    on = {s};
    auto dfs = [&](auto&& self, Vertex x) -> void {
      for (Vertex y : g.neighbors(x)) {
        if (y == s && path.size() >= 3 && path.size() > best.size()) best = path;
        if (y <= s || on.count(y)) continue;
        on.insert(y);
        path.push_back(y);
        self(self, y);
        path.pop_back();
        on.erase(y);
      }
    };
    dfs(dfs, s);
  }
  return best;
}

/// G - x with the face that held x as the outer face.
inline CircuitGraph delete_degree3(const RotationEmbedding& g, Vertex x) {
  const Vertex a = g.neighbors(x).front();
  const Vertex b = g.succ(a, x);
  RotationEmbedding h = g;
  h.remove_vertex(x);
  h.set_outer_dart({a, b});
  return CircuitGraph::from_embedding(h);
}

/// cg minus the outer-cycle edge {a, b}; the outer face absorbs the inner face.
inline CircuitGraph delete_outer_edge(const CircuitGraph& cg, Vertex a, Vertex b) {
  const Dart d = cg.clockwise(Edge(a, b));
  RotationEmbedding k = cg.embedding();
  const Dart keep{d.head, cg.next_on_cycle(d.head)};
  k.remove_edge(a, b);
  k.set_outer_dart(keep);
  return CircuitGraph::from_embedding(k);
}

}  // namespace detail

/// Hamilton cycle of a 4-connected plane graph: a Tutte path between the ends
/// of one outer edge through another outer edge has no nontrivial bridges.
inline LongCycleReport hamilton_cycle_4connected(const RotationEmbedding& g, SolveOptions options = {}) {
  if (!is_4_connected(g)) throw InputError("graph is not 4-connected");
  if (!g.outer_dart()) throw InputError("embedding has no outer face");
  const CircuitGraph cg = CircuitGraph::from_embedding(g);
  const auto& t = cg.outer_cycle();
  const Vertex u = t[1], v = t[0];
  const Edge e(t[1], t[2]);
  LongCycleReport r;
  r.order = g.vertex_count();
  r.bound = long_cycle_bound(r.order);
  r.branch = "4conn";
  auto cert = tutte_path(cg, u, v, e, options);
  if (cert.beta != 0)
    throw CertifiedFailure("4-connected branch produced a path with " + std::to_string(cert.beta) + " bridges",
                           cert.trace);
  r.cycle = cert.path;
  r.sub_certificates.push_back({"G", cg, std::move(cert)});
  r.length = r.cycle.size();
  return r;
}

namespace detail {

inline LongCycleReport finish_cycle(const RotationEmbedding& g, LongCycleReport r, Vertex x,
                                    const TuttePathCertificate& cert) {
  r.cycle = cert.path;
  r.cycle.push_back(x);
  r.length = r.cycle.size();
  r.bridge_audit = audit_cycle_bridges(g, r.cycle);
  for (const auto& b : r.bridge_audit)
    if (!b.claw) throw CertifiedFailure("a bridge of the cycle is not a claw", cert.trace);
  if (static_cast<std::int64_t>(r.length) < r.bound)
    throw CertifiedFailure("cycle of length " + std::to_string(r.length) + " is below the bound", cert.trace);
  return r;
}

/// Neighbours of x in clockwise order on the outer cycle of h.
inline std::vector<Vertex> neighbours_on_cycle(const RotationEmbedding& g, const CircuitGraph& h, Vertex x) {
  std::vector<Vertex> nb;
  for (Vertex c : h.outer_cycle())
    if (g.has_edge(c, x)) nb.push_back(c);
  TUTTEPATH_CHECK(nb.size() == 3, "neighbours of the removed vertex are not on one face");
  return nb;
}

/// The three-case construction around the degree-3 vertex x. Throws
/// CircuitError when an intermediate graph is not a circuit graph.
inline LongCycleReport long_cycle_at(const RotationEmbedding& g, Vertex x, const SolveOptions& options) {
  LongCycleReport r;
  r.order = g.vertex_count();
  r.bound = long_cycle_bound(r.order);
  r.removed = x;
  const CircuitGraph h = delete_degree3(g, x);
  // Clockwise outer order u, w, v, so that u, v, w run counterclockwise.
  const auto nb = neighbours_on_cycle(g, h, x);
  auto arc_len = [](const CircuitGraph& cg, Vertex a, Vertex b) { return cycle_arc(cg, a, b).size(); };

  for (int rot = 0; rot < 3; ++rot) {
    const Vertex u = nb[rot], w = nb[(rot + 1) % 3], v = nb[(rot + 2) % 3];
    if (arc_len(h, u, w) >= 3 && arc_len(h, w, v) >= 3) {
      r.branch = "deg3-i";
      auto cert = tutte_path(h, u, v, Edge(h.prev_on_cycle(w), w), options);
      r.sub_certificates.push_back({"H", h, cert});
      return finish_cycle(g, std::move(r), x, cert);
    }
  }
  int rot = 0;
  while (rot < 3 && !(arc_len(h, nb[(rot + 1) % 3], nb[(rot + 2) % 3]) == 2 &&
                      arc_len(h, nb[(rot + 2) % 3], nb[rot]) == 2))
    ++rot;
  TUTTEPATH_CHECK(rot < 3, "no two short arcs among the neighbours");
  const Vertex u = nb[rot];
  Vertex w = nb[(rot + 1) % 3], v = nb[(rot + 2) % 3];
  const CircuitGraph k = delete_outer_edge(h, w, v);
  const Edge e(w, k.next_on_cycle(w));
  const Third t_ue = tau(k, ArcEndpoint::at(u), ArcEndpoint::along(e));
  const Third t_ev = tau(k, ArcEndpoint::along(e), ArcEndpoint::at(v));
  if (t_ue == Third{} || t_ev == Third{}) {
    r.branch = "deg3-ii";
    auto cert = tutte_path(k, u, v, e, options);
    r.sub_certificates.push_back({"K", k, cert});
    return finish_cycle(g, std::move(r), x, cert);
  }
  r.branch = "deg3-iii";
  TUTTEPATH_CHECK(h.outer_cycle().size() == 3, "third case needs a triangular outer cycle");
  auto has_inner_neighbour = [&](Vertex a) {
    for (Vertex c : k.embedding().neighbors(a))
      if (!k.on_cycle(c)) return true;
    return false;
  };
  CircuitGraph hh = h;
  if (!has_inner_neighbour(w)) {
    TUTTEPATH_CHECK(has_inner_neighbour(v), "neither w nor v has an inner neighbour");
    hh = mirror(h);
    std::swap(v, w);
    r.mirrored = true;
    r.notes.push_back("mirrored so that the vertex with an inner neighbour plays w");
  }
  const CircuitGraph j = delete_outer_edge(hh, u, w);
  const Edge f(j.prev_on_cycle(w), w);
  auto cert = tutte_path(j, u, v, f, options);
  r.sub_certificates.push_back({"J", j, cert});
  return finish_cycle(g, std::move(r), x, cert);
}

/// Every query (u, v, e) on G - x with u, v neighbours of x; first cycle that
/// meets the bound with claw bridges only.
inline std::optional<LongCycleReport> long_cycle_direct(const RotationEmbedding& g, Vertex x,
                                                        const SolveOptions& options) {
  const CircuitGraph h = delete_degree3(g, x);
  const auto nb = neighbours_on_cycle(g, h, x);
  for (Vertex u : nb)
    for (Vertex v : nb) {
      if (u == v) continue;
      for (const Edge& e : arc_edges(cycle_arc(h, u, v))) {
        LongCycleReport r;
        r.order = g.vertex_count();
        r.bound = long_cycle_bound(r.order);
        r.removed = x;
        r.branch = "deg3-ii";
        r.notes.push_back("direct query on G - x after the closures failed");
        auto cert = tutte_path(h, u, v, e, options);
        try {
          r.sub_certificates.push_back({"H", h, cert});
          return finish_cycle(g, std::move(r), x, cert);
        } catch (const CertifiedFailure&) {
        }
      }
    }
  return std::nullopt;
}

}  // namespace detail

/// Cycle of length at least ceil((2n+6)/3) in an essentially 4-connected
/// 3-connected plane graph on n >= 6 vertices.
inline LongCycleReport long_cycle(const RotationEmbedding& g, SolveOptions options = {}) {
  g.validate();
  const std::size_t n = g.vertex_count();
  if (!is_essentially_4_connected(g)) throw InputError("graph is not essentially 4-connected");
  if (!is_k_connected(g, 3)) throw InputError("graph is not 3-connected");

  if (n <= 5) {
    LongCycleReport r;
    r.order = n;
    r.bound = long_cycle_bound(n);
    r.within_theorem = false;
    r.branch = "small-n";
    r.cycle = detail::small_longest_cycle(g);
    r.length = r.cycle.size();
    if (r.length != n) throw StructuralError("small graph is not Hamiltonian");
    r.notes.push_back("n <= 5: Hamilton cycle by exhaustive search");
    return r;
  }

  if (is_4_connected(g)) {
    RotationEmbedding h = g;
    if (!h.outer_dart()) h.set_outer_dart(h.faces().front().front());
    return hamilton_cycle_4connected(h, options);
  }

  std::vector<Vertex> cubic;
  for (Vertex c : g.vertices())
    if (g.degree(c) == 3) cubic.push_back(c);
  TUTTEPATH_CHECK(!cubic.empty(), "not 4-connected but no vertex of degree 3");
  std::vector<std::string> skipped;
  for (Vertex x : cubic) {
    try {
      LongCycleReport r = detail::long_cycle_at(g, x, options);
      r.notes.insert(r.notes.begin(), skipped.begin(), skipped.end());
      return r;
    } catch (const CircuitError& err) {
      skipped.push_back("vertex " + std::to_string(x) + " skipped: " + err.what());
    }
  }
  // Every choice hit a closure that is not a circuit graph; fall back to all
  // direct queries on G - x and keep the first cycle meeting the bound.
  for (Vertex x : cubic)
    if (auto r = detail::long_cycle_direct(g, x, options)) {
      r->notes.insert(r->notes.begin(), skipped.begin(), skipped.end());
      return *r;
    }
  throw StructuralError("no degree-3 vertex yields a cycle meeting the bound");
}

}  // namespace tuttepath
