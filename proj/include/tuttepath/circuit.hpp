#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "tuttepath/embedding.hpp"
#include "tuttepath/errors.hpp"
#include "tuttepath/structure.hpp"
#include "tuttepath/third.hpp"

namespace tuttepath {

/// Which clause of the circuit-graph definition failed.
enum class CircuitClause { ok, malformed, not_two_connected, outer_mismatch, hidden_component };

inline const char* to_string(CircuitClause c) {
  switch (c) {
    case CircuitClause::ok: return "ok";
    case CircuitClause::malformed: return "malformed embedding";
    case CircuitClause::not_two_connected: return "not 2-connected";
    case CircuitClause::outer_mismatch: return "outer cycle does not bound the outer face";
    case CircuitClause::hidden_component: return "2-cut with a component avoiding the outer cycle";
  }
  return "?";
}

class CircuitError : public InputError {
 public:
  CircuitError(CircuitClause clause, const std::string& detail)
      : InputError(std::string(to_string(clause)) + (detail.empty() ? "" : ": " + detail)),
        clause_(clause) {}
  CircuitClause clause() const { return clause_; }

 private:
  CircuitClause clause_;
};

/// A 2-connected plane graph with its outer cycle, clockwise.
class CircuitGraph {
 public:
  CircuitGraph() = default;

  const RotationEmbedding& embedding() const { return emb_; }
  const std::vector<Vertex>& outer_cycle() const { return cycle_; }
  std::size_t order() const { return emb_.vertex_count(); }

  bool on_cycle(Vertex v) const { return pos_.count(v) != 0; }
  int position(Vertex v) const {
    auto it = pos_.find(v);
    if (it == pos_.end()) throw InputError("vertex " + std::to_string(v) + " is not on the outer cycle");
    return it->second;
  }
  /// Clockwise successor on C.
  Vertex next_on_cycle(Vertex v) const {
    return cycle_[(position(v) + 1) % static_cast<int>(cycle_.size())];
  }
  Vertex prev_on_cycle(Vertex v) const {
    const int k = static_cast<int>(cycle_.size());
    return cycle_[(position(v) + k - 1) % k];
  }
  bool is_cycle_edge(Edge e) const {
    if (!on_cycle(e.a) || !on_cycle(e.b)) return false;
    return next_on_cycle(e.a) == e.b || next_on_cycle(e.b) == e.a;
  }
  /// The cycle edge oriented clockwise, as (tail, head).
  Dart clockwise(Edge e) const {
    if (!is_cycle_edge(e)) throw InputError("edge is not on the outer cycle");
    return next_on_cycle(e.a) == e.b ? Dart{e.a, e.b} : Dart{e.b, e.a};
  }
  EdgeSet cycle_edges() const {
    EdgeSet out;
    for (std::size_t i = 0; i < cycle_.size(); ++i)
      out.emplace(cycle_[i], cycle_[(i + 1) % cycle_.size()]);
    return out;
  }

  /// Builds from an embedding whose outer dart is set; checks every clause.
  static CircuitGraph from_embedding(RotationEmbedding emb);

  /// Same clockwise cycle, rotated to start at v.
  std::vector<Vertex> cycle_from(Vertex v) const {
    std::vector<Vertex> out;
    const int k = static_cast<int>(cycle_.size());
    for (int i = 0, p = position(v); i < k; ++i) out.push_back(cycle_[(p + i) % k]);
    return out;
  }

 private:
  friend CircuitGraph validate_circuit(const RotationEmbedding&, const std::vector<Vertex>&);
  RotationEmbedding emb_;
  std::vector<Vertex> cycle_;
  std::map<Vertex, int> pos_;
};

/// Returns the failing clause (ok when (emb, outer_cycle) is a circuit graph).
inline std::pair<CircuitClause, std::string> diagnose_circuit(const RotationEmbedding& emb,
                                                              const std::vector<Vertex>& cycle) {
  try {
    emb.validate();
  } catch (const StructuralError& e) {
    return {CircuitClause::malformed, e.what()};
  }
  if (!is_biconnected(emb)) return {CircuitClause::not_two_connected, ""};
  if (cycle.size() < 3) return {CircuitClause::outer_mismatch, "cycle shorter than 3"};
  {
    VertexSet uniq(cycle.begin(), cycle.end());
    if (uniq.size() != cycle.size()) return {CircuitClause::outer_mismatch, "cycle repeats a vertex"};
    for (std::size_t i = 0; i < cycle.size(); ++i)
      if (!emb.has_edge(cycle[i], cycle[(i + 1) % cycle.size()]))
        return {CircuitClause::outer_mismatch, "consecutive cycle vertices are not adjacent"};
    auto walk = emb.face_walk({cycle[0], cycle[1]});
    if (walk != cycle)
      return {CircuitClause::outer_mismatch, "cycle is not a face walked clockwise"};
    if (auto od = emb.outer_dart()) {
      auto darts = emb.face_darts({cycle[0], cycle[1]});
      if (std::find(darts.begin(), darts.end(), *od) == darts.end())
        return {CircuitClause::outer_mismatch, "designated outer face differs"};
    }
  }
  VertexSet on_c(cycle.begin(), cycle.end());
  for (const TwoCut& cut : enumerate_2_separations(emb))
    for (const VertexSet& comp : cut.components) {
      bool meets = false;
      for (Vertex v : comp) meets = meets || on_c.count(v);
      if (!meets)
        return {CircuitClause::hidden_component,
                "cut {" + std::to_string(cut.s) + "," + std::to_string(cut.t) + "}"};
    }
  return {CircuitClause::ok, ""};
}

/// Validates (emb, outer_cycle) and returns the circuit graph or throws CircuitError.
inline CircuitGraph validate_circuit(const RotationEmbedding& emb, const std::vector<Vertex>& cycle) {
  auto [clause, detail] = diagnose_circuit(emb, cycle);
  if (clause != CircuitClause::ok) throw CircuitError(clause, detail);
  CircuitGraph cg;
  cg.emb_ = emb;
  cg.emb_.set_outer_dart({cycle[0], cycle[1]});
  cg.cycle_ = cycle;
  for (std::size_t i = 0; i < cycle.size(); ++i) cg.pos_[cycle[i]] = static_cast<int>(i);
  return cg;
}

inline CircuitGraph CircuitGraph::from_embedding(RotationEmbedding emb) {
  if (!emb.outer_dart()) throw CircuitError(CircuitClause::outer_mismatch, "no outer face");
  auto walk = emb.outer_walk();
  return validate_circuit(emb, walk);
}

/// Mirror image: rotations reversed, so the clockwise outer order is reversed.
inline CircuitGraph mirror(const CircuitGraph& cg) {
  std::vector<Vertex> rev(cg.outer_cycle().rbegin(), cg.outer_cycle().rend());
  std::rotate(rev.begin(), rev.end() - 1, rev.end());  // keep the same first vertex
  return validate_circuit(cg.embedding().mirrored(), rev);
}

/// Endpoint of an arc on C: a vertex of C or an edge of C.
struct ArcEndpoint {
  enum class Kind { vertex, edge };
  Kind kind = Kind::vertex;
  Vertex v = 0;  // when kind == vertex
  Edge e;        // when kind == edge

  static ArcEndpoint at(Vertex x) { return {Kind::vertex, x, {}}; }
  static ArcEndpoint along(Edge x) { return {Kind::edge, 0, x}; }
  bool is_edge() const { return kind == Kind::edge; }
  bool operator==(const ArcEndpoint& o) const {
    return kind == o.kind && (is_edge() ? e == o.e : v == o.v);
  }
  std::string str() const {
    return is_edge() ? "(" + std::to_string(e.a) + "," + std::to_string(e.b) + ")" : std::to_string(v);
  }
};

/// Clockwise subpath xCy of C with x, y not in its edge set.
struct Arc {
  ArcEndpoint from, to;
  std::vector<Vertex> vertices;
  std::size_t length() const { return vertices.size(); }
};

inline Arc subpath(const CircuitGraph& cg, const ArcEndpoint& x, const ArcEndpoint& y) {
  if (x == y) throw InputError("arc endpoints coincide: " + x.str());
  const int k = static_cast<int>(cg.outer_cycle().size());
  auto start = [&](const ArcEndpoint& p) {
    if (!p.is_edge()) return cg.position(p.v);
    return cg.position(cg.clockwise(p.e).head);
  };
  auto stop = [&](const ArcEndpoint& p) {
    if (!p.is_edge()) return cg.position(p.v);
    return cg.position(cg.clockwise(p.e).tail);
  };
  const int s = start(x);
  const int t = stop(y);
  Arc arc{x, y, {}};
  for (int i = s;; i = (i + 1) % k) {
    arc.vertices.push_back(cg.outer_cycle()[i]);
    if (i == t) break;
    if (static_cast<int>(arc.vertices.size()) > k) throw InternalError("arc does not close");
  }
  return arc;
}

/// True iff no 2-separation (G1,G2) with cut {s,t}, x,s,t,y in order on xCy,
/// sCt in G2 and |G2| >= 3. For a 2-connected graph such a separation
/// exists exactly when {s,t} is a 2-cut, or s,t are adjacent and sCt has an
/// inner vertex.
inline bool is_good(const CircuitGraph& cg, const ArcEndpoint& x, const ArcEndpoint& y) {
  const Arc arc = subpath(cg, x, y);
  const auto& g = cg.embedding();
  const auto& a = arc.vertices;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = i + 1; j < a.size(); ++j) {
      if (j - i >= 2 && g.has_edge(a[i], a[j])) return false;
      if (components_without(g, {a[i], a[j]}).size() >= 2) return false;
    }
  return true;
}

enum class TauReason { not_good, incident_edge, short_edge_arc, zero };

inline const char* to_string(TauReason r) {
  switch (r) {
    case TauReason::not_good: return "not-good";
    case TauReason::incident_edge: return "incident-edge";
    case TauReason::short_edge_arc: return "short-edge-arc";
    case TauReason::zero: return "zero";
  }
  return "?";
}

struct TauValue {
  Third value;
  TauReason reason;
};

/// The arc weight in {0, 1/3, 2/3}; cases are tested top-down.
inline TauValue tau_detail(const CircuitGraph& cg, const ArcEndpoint& x, const ArcEndpoint& y) {
  if (x.is_edge() && y.is_edge()) throw InputError("tau is undefined when both ends are edges");
  const Arc arc = subpath(cg, x, y);
  if (!is_good(cg, x, y)) return {Third::of(2), TauReason::not_good};
  const bool one_edge = x.is_edge() != y.is_edge();
  if (one_edge) {
    const Edge e = x.is_edge() ? x.e : y.e;
    const Vertex w = x.is_edge() ? y.v : x.v;
    if (e.has(w)) return {Third::of(2), TauReason::incident_edge};
    if (arc.length() == 2) return {Third::of(1), TauReason::short_edge_arc};
  }
  return {Third::of(0), TauReason::zero};
}

inline Third tau(const CircuitGraph& cg, const ArcEndpoint& x, const ArcEndpoint& y) {
  return tau_detail(cg, x, y).value;
}

/// Path query bound (n-6)/3 + tau(vu) + tau(ue) + tau(ev).
inline Third path_bound(const CircuitGraph& cg, Vertex u, Vertex v, Edge e) {
  return size_term(static_cast<std::int64_t>(cg.order())) +
         tau(cg, ArcEndpoint::at(v), ArcEndpoint::at(u)) +
         tau(cg, ArcEndpoint::at(u), ArcEndpoint::along(e)) +
         tau(cg, ArcEndpoint::along(e), ArcEndpoint::at(v));
}

/// Closes a clockwise outer arc x..y of `sub` with the edge yx, giving a
/// circuit graph whose outer cycle is the arc plus yx. An existing edge xy is
/// re-embedded in the outer face instead of being duplicated.
inline CircuitGraph close_outer_arc(RotationEmbedding sub, const std::vector<Vertex>& arc) {
  if (arc.size() < 3) throw StructuralError("closing arc needs at least three vertices");
  const Vertex x = arc.front();
  const Vertex y = arc.back();
  if (sub.has_edge(x, y)) sub.remove_edge(x, y);
  const Vertex q = arc[1];
  const Vertex p = arc[arc.size() - 2];
  sub.insert_outer_path(p, y, {}, x, q);
  sub.set_outer_dart({x, q});
  return validate_circuit(sub, arc);
}

/// Outer face walk of a subgraph, located through a dart known to lie on it.
inline std::vector<Vertex> walk_from(const RotationEmbedding& sub, Dart d) {
  return sub.face_walk(d);
}

/// Side of the split at {x,y} that contains the arc xCy, plus the edge xy,
/// embedded with outer cycle xCy + yx.
inline CircuitGraph add_virtual_edge(const CircuitGraph& cg, Vertex x, Vertex y) {
  const Arc arc = subpath(cg, ArcEndpoint::at(x), ArcEndpoint::at(y));
  if (arc.length() < 3) throw InputError("arc xCy has no inner vertex");
  const auto& g = cg.embedding();
  VertexSet keep{x, y};
  for (const VertexSet& comp : components_without(g, {x, y}))
    if (comp.count(arc.vertices[1])) keep.insert(comp.begin(), comp.end());
  EdgeSet edges;
  for (const Edge& e : g.edges())
    if (keep.count(e.a) && keep.count(e.b)) edges.insert(e);
  return close_outer_arc(g.restricted(keep, edges), arc.vertices);
}

}  // namespace tuttepath
