#pragma once

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "tuttepath/circuit.hpp"
#include "tuttepath/circumference.hpp"
#include "tuttepath/structure.hpp"

// Checks certificates from first principles. Only the embedding, bridge and
// circuit-graph primitives are shared with the solver; arcs, goodness, tau
// and the bound are recomputed here.

namespace tuttepath::labkit {

struct Check {
  std::string clause;
  bool ok = true;
  std::string detail;
};

struct Verdict {
  std::vector<Check> checks;

  bool ok() const {
    for (const auto& c : checks)
      if (!c.ok) return false;
    return true;
  }
  std::vector<std::string> failed() const {
    std::vector<std::string> out;
    for (const auto& c : checks)
      if (!c.ok) out.push_back(c.clause);
    return out;
  }
  void add(std::string clause, bool ok, std::string detail = "") {
    checks.push_back({std::move(clause), ok, std::move(detail)});
  }
  void merge(const std::string& prefix, const Verdict& other) {
    for (const auto& c : other.checks) checks.push_back({prefix + c.clause, c.ok, c.detail});
  }
};

inline nlohmann::ordered_json verdict_json(const Verdict& v) {
  nlohmann::ordered_json j;
  j["format"] = 1;
  j["ok"] = v.ok();
  j["failed"] = v.failed();
  auto arr = nlohmann::ordered_json::array();
  for (const auto& c : v.checks) arr.push_back({{"clause", c.clause}, {"ok", c.ok}, {"detail", c.detail}});
  j["checks"] = arr;
  return j;
}

namespace verify_detail {

/// Position-based view of the outer cycle.
struct Ring {
  std::vector<Vertex> cyc;
  std::map<Vertex, std::size_t> at;

  explicit Ring(const std::vector<Vertex>& c) : cyc(c) {
    for (std::size_t i = 0; i < c.size(); ++i) at[c[i]] = i;
  }
  std::size_t size() const { return cyc.size(); }
  Vertex operator[](std::size_t i) const { return cyc[i % cyc.size()]; }
  bool has(Vertex x) const { return at.count(x) != 0; }
  /// Index of the clockwise tail of a cycle edge, or npos.
  std::size_t tail_of(Edge e) const {
    if (!has(e.a) || !has(e.b)) return std::string::npos;
    const std::size_t ia = at.at(e.a), ib = at.at(e.b);
    if ((ia + 1) % size() == ib) return ia;
    if ((ib + 1) % size() == ia) return ib;
    return std::string::npos;
  }
};

/// End of an arc: a cycle vertex, or a cycle edge.
struct End {
  bool edge = false;
  Vertex v = 0;
  Edge e;
};

/// Vertices of the clockwise arc from x to y, where an edge end contributes
/// only its endpoint inside the arc.
inline std::vector<Vertex> arc(const Ring& r, const End& x, const End& y) {
  const std::size_t first = x.edge ? (r.tail_of(x.e) + 1) % r.size() : r.at.at(x.v);
  const std::size_t last = y.edge ? r.tail_of(y.e) : r.at.at(y.v);
  std::vector<Vertex> out;
  for (std::size_t i = first;; i = (i + 1) % r.size()) {
    out.push_back(r[i]);
    if (i == last || out.size() > r.size()) break;
  }
  return out;
}

/// Pieces of G hanging off {s, t}: components of G - {s, t} with their
/// edges to s and t, plus the edge st itself when present.
struct Piece {
  VertexSet vertices;
  EdgeSet edges;
};

inline std::vector<Piece> pieces_at(const RotationEmbedding& g, Vertex s, Vertex t) {
  std::vector<Piece> out;
  if (g.has_edge(s, t)) out.push_back({{s, t}, {Edge(s, t)}});
  VertexSet seen{s, t};
  for (Vertex start : g.vertices()) {
    if (seen.count(start)) continue;
    Piece p;
    std::vector<Vertex> stack{start};
    seen.insert(start);
    while (!stack.empty()) {
      const Vertex x = stack.back();
      stack.pop_back();
      p.vertices.insert(x);
      for (Vertex y : g.neighbors(x)) {
        p.edges.insert(Edge(x, y));
        if (y == s || y == t) {
          p.vertices.insert(y);
        } else if (seen.insert(y).second) {
          stack.push_back(y);
        }
      }
    }
    out.push_back(std::move(p));
  }
  return out;
}

/// The arc is not good when some s before t on it admits a split of G into
/// two edge-disjoint sides meeting in {s, t}, with the arc from s to t on the
/// second side and at least three vertices there. Sides are unions of pieces.
inline bool arc_good(const RotationEmbedding& g, const std::vector<Vertex>& a) {
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = i + 1; j < a.size(); ++j) {
      const auto ps = pieces_at(g, a[i], a[j]);
      if (ps.size() < 2) continue;
      EdgeSet span;
      for (std::size_t k = i; k < j; ++k) span.insert(Edge(a[k], a[k + 1]));
      for (std::size_t drop = 0; drop < ps.size(); ++drop) {
        bool holds_span = false;
        for (const Edge& e : ps[drop].edges) holds_span = holds_span || span.count(e);
        if (holds_span) continue;
        VertexSet second;
        for (std::size_t k = 0; k < ps.size(); ++k)
          if (k != drop) second.insert(ps[k].vertices.begin(), ps[k].vertices.end());
        if (second.size() >= 3) return false;
      }
    }
  return true;
}

/// Arc weight in thirds.
inline std::int64_t tau_thirds(const RotationEmbedding& g, const Ring& r, const End& x, const End& y) {
  const auto a = arc(r, x, y);
  if (!arc_good(g, a)) return 2;
  if (x.edge != y.edge) {
    const Edge e = x.edge ? x.e : y.e;
    const Vertex w = x.edge ? y.v : x.v;
    if (e.has(w)) return 2;
    if (a.size() == 2) return 1;
  }
  return 0;
}

}  // namespace verify_detail

/// Independent arc weight of the clockwise arc between two cycle elements.
inline Third verify_tau(const CircuitGraph& cg, const ArcEndpoint& x, const ArcEndpoint& y) {
  const verify_detail::Ring r(cg.outer_cycle());
  auto end = [](const ArcEndpoint& p) { return verify_detail::End{p.is_edge(), p.v, p.e}; };
  return Third{verify_detail::tau_thirds(cg.embedding(), r, end(x), end(y))};
}

inline bool verify_good(const CircuitGraph& cg, const ArcEndpoint& x, const ArcEndpoint& y) {
  const verify_detail::Ring r(cg.outer_cycle());
  auto end = [](const ArcEndpoint& p) { return verify_detail::End{p.is_edge(), p.v, p.e}; };
  return verify_detail::arc_good(cg.embedding(), verify_detail::arc(r, end(x), end(y)));
}

/// Re-derives every claim of a path certificate on cg.
inline Verdict verify_certificate(const CircuitGraph& cg, const TuttePathCertificate& c) {
  using namespace verify_detail;
  Verdict out;
  const auto& g = cg.embedding();
  const Ring ring(cg.outer_cycle());
  const std::size_t n = g.vertex_count();

  out.add("order", c.order == 0 || c.order == n,
          "claimed " + std::to_string(c.order) + ", graph has " + std::to_string(n));

  const std::size_t et = ring.tail_of(c.e);
  bool query_ok = ring.has(c.u) && ring.has(c.v) && c.u != c.v && et != std::string::npos;
  if (query_ok) {
    const auto uv = arc(ring, End{false, c.u, {}}, End{false, c.v, {}});
    bool found = false;
    for (std::size_t i = 0; i + 1 < uv.size(); ++i) found = found || Edge(uv[i], uv[i + 1]) == c.e;
    query_ok = found;
  }
  out.add("query", query_ok, "u, v on the outer cycle and e on the clockwise arc from u to v");

  bool known = true, simple = true, adjacent = true;
  VertexSet seen;
  for (Vertex x : c.path) {
    known = known && g.has_vertex(x);
    simple = seen.insert(x).second && simple;
  }
  for (std::size_t i = 0; known && i + 1 < c.path.size(); ++i) adjacent = adjacent && g.has_edge(c.path[i], c.path[i + 1]);
  out.add("path vertices", known && !c.path.empty(), "every path vertex exists");
  out.add("path simple", simple, "no repeated vertex");
  out.add("path edges", adjacent, "consecutive path vertices are adjacent");
  out.add("path ends", !c.path.empty() && c.path.front() == c.u && c.path.back() == c.v, "path runs from u to v");
  bool has_e = false;
  for (std::size_t i = 0; i + 1 < c.path.size(); ++i) has_e = has_e || Edge(c.path[i], c.path[i + 1]) == c.e;
  out.add("e on path", has_e, has_e ? "" : "e not on path");
  if (!(known && simple && adjacent) || !query_ok) return out;

  const auto bridges = bridges_of(g, path_subgraph(c.path));
  EdgeSet outer;
  for (std::size_t i = 0; i < ring.size(); ++i) outer.insert(Edge(ring[i], ring[i + 1]));
  bool tutte = true;
  std::string why;
  std::int64_t beta = 0;
  for (const auto& b : bridges) {
    if (b.size() >= 3) ++beta;
    bool touches_outer = false;
    for (const Edge& e : b.edges) touches_outer = touches_outer || outer.count(e);
    if (b.attachments.size() > 3 || (touches_outer && b.attachments.size() > 2)) {
      tutte = false;
      why = "bridge at " + std::to_string(*b.vertices.begin()) + " has " + std::to_string(b.attachments.size()) +
            " attachments";
    }
  }
  out.add("outer-cycle Tutte", tutte, why);
  out.add("beta", beta == c.beta, beta == c.beta ? "" : "beta mismatch: claimed " + std::to_string(c.beta) +
                                                            ", recomputed " + std::to_string(beta));
  if (!c.bridges.empty() || c.beta == 0) {
    bool same = c.bridges.size() == bridges.size();
    for (std::size_t i = 0; same && i < bridges.size(); ++i)
      same = c.bridges[i].vertices == bridges[i].vertices && c.bridges[i].attachments == bridges[i].attachments;
    out.add("bridges", same, same ? "" : "bridge list differs from recomputation");
  }

  const End u{false, c.u, {}}, v{false, c.v, {}}, e{true, 0, c.e};
  const std::int64_t t_vu = tau_thirds(g, ring, v, u);
  const std::int64_t t_ue = tau_thirds(g, ring, u, e);
  const std::int64_t t_ev = tau_thirds(g, ring, e, v);
  const bool tau_ok = c.tau_vu.num == t_vu && c.tau_ue.num == t_ue && c.tau_ev.num == t_ev;
  out.add("tau", tau_ok,
          "recomputed " + std::to_string(t_vu) + "/3, " + std::to_string(t_ue) + "/3, " + std::to_string(t_ev) + "/3");
  const std::int64_t bound = static_cast<std::int64_t>(n) - 6 + t_vu + t_ue + t_ev;
  out.add("bound", c.bound.num == bound,
          "recomputed " + std::to_string(bound) + "/3, claimed " + std::to_string(c.bound.num) + "/3");
  out.add("beta within bound", 3 * beta <= bound,
          std::to_string(beta) + " bridges against " + std::to_string(bound) + "/3");
  return out;
}

/// Re-derives every claim of a long-cycle report on g, including each
/// embedded path certificate against its own graph.
inline Verdict verify_report(const RotationEmbedding& g, const LongCycleReport& r) {
  Verdict out;
  const std::size_t n = g.vertex_count();
  out.add("order", r.order == 0 || r.order == n, "");
  bool known = r.cycle.size() >= 3, simple = true, adjacent = true;
  VertexSet seen;
  for (Vertex x : r.cycle) {
    known = known && g.has_vertex(x);
    simple = seen.insert(x).second && simple;
  }
  for (std::size_t i = 0; known && i < r.cycle.size(); ++i)
    adjacent = adjacent && g.has_edge(r.cycle[i], r.cycle[(i + 1) % r.cycle.size()]);
  out.add("cycle vertices", known, "at least three existing vertices");
  out.add("cycle simple", simple, "");
  out.add("cycle edges", adjacent, "consecutive cycle vertices are adjacent, last to first included");
  out.add("length", r.length == r.cycle.size(), "claimed " + std::to_string(r.length));
  const std::int64_t bound = (2 * static_cast<std::int64_t>(n) + 6 + 2) / 3;
  out.add("bound", r.bound == bound, "recomputed " + std::to_string(bound));
  if (n >= 6)
    out.add("length within bound", static_cast<std::int64_t>(r.cycle.size()) >= bound,
            std::to_string(r.cycle.size()) + " against " + std::to_string(bound));
  else
    out.add("hamiltonian", r.cycle.size() == n, "graphs on at most five vertices need a Hamilton cycle");
  if (known && simple && adjacent && r.branch.rfind("deg3", 0) == 0) {
    Subgraph q = path_subgraph(r.cycle);
    q.edges.insert(Edge(r.cycle.back(), r.cycle.front()));
    bool claws = true;
    for (const auto& b : bridges_of(g, q))
      if (b.size() >= 3) claws = claws && b.size() == 4 && b.attachments.size() == 3 && b.edges.size() == 3;
    out.add("claw bridges", claws, "every bridge with an inner vertex is a claw");
  }
  for (std::size_t i = 0; i < r.sub_certificates.size(); ++i) {
    const auto& s = r.sub_certificates[i];
    bool inside = true;
    for (const Edge& e : s.graph.embedding().edges()) inside = inside && g.has_edge(e);
    out.add("sub[" + std::to_string(i) + "] subgraph", inside, "auxiliary graph uses only edges of the input");
    out.merge("sub[" + std::to_string(i) + "] ", verify_certificate(s.graph, s.certificate));
  }
  if (r.branch == "4conn")
    out.add("hamilton path", !r.sub_certificates.empty() && r.sub_certificates[0].certificate.beta == 0,
            "the 4-connected branch needs a path without bridges");
  return out;
}

}  // namespace tuttepath::labkit
