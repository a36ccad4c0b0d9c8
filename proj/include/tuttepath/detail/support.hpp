#pragma once

#include <algorithm>
#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include "tuttepath/certificate.hpp"
#include "tuttepath/circuit.hpp"

namespace tuttepath {

struct SolveOptions {
  /// Solve recursive instances with at most this many vertices by exhaustive
  /// search instead of the structural recursion. 0 disables.
  std::size_t oracle_below = 0;
  /// Re-run the soundness check on every recursive result.
  bool check_every_call = true;
  /// Receives one line per solver call when set.
  std::ostream* log = nullptr;
};

namespace detail {

struct SolveContext {
  Vertex next_fresh = 0;
  SolveOptions options;
  std::vector<LedgerEntry> ledger;

  Vertex fresh() { return next_fresh++; }

  int open(int parent, const CircuitGraph& g, Vertex u, Vertex v, Edge e) {
    LedgerEntry en;
    en.id = static_cast<int>(ledger.size());
    en.parent = parent;
    en.order = g.order();
    en.u = u;
    en.v = v;
    en.e = e;
    ledger.push_back(std::move(en));
    if (options.log) {
      *options.log << "call " << ledger.back().id << " parent " << parent << " n=" << g.order() << " u=" << u
                   << " v=" << v << " e=" << e.a << "-" << e.b << " C=";
      for (Vertex x : g.outer_cycle()) *options.log << x << ' ';
      *options.log << "\n";
    }
    return ledger.back().id;
  }
  LedgerEntry& at(int id) { return ledger.at(static_cast<std::size_t>(id)); }
  void note(int id, std::string s) {
    if (options.log) *options.log << "  [" << id << "] " << s << "\n";
    at(id).notes.push_back(std::move(s));
  }

  [[noreturn]] void fail(const std::string& what) const { throw CertifiedFailure(what, ledger); }
};

/// Recursive entry point; defined in tutte_path.hpp.
std::vector<Vertex> solve(const CircuitGraph& g, Vertex u, Vertex v, Edge e, SolveContext& ctx,
                          int parent);

inline std::string vstr(Vertex v) { return std::to_string(v); }
inline std::string estr(Edge e) { return "(" + vstr(e.a) + "," + vstr(e.b) + ")"; }

inline bool is_two_cut(const RotationEmbedding& g, Vertex a, Vertex b) {
  return components_without(g, {a, b}).size() >= 2;
}

/// Component of g - removed containing `probe`.
inline VertexSet component_of(const RotationEmbedding& g, const VertexSet& removed, Vertex probe) {
  for (auto& c : components_without(g, removed))
    if (c.count(probe)) return c;
  throw InternalError("probe vertex " + vstr(probe) + " not found");
}

/// Edges of g with both ends in `vs`.
inline EdgeSet induced_edges(const RotationEmbedding& g, const VertexSet& vs) {
  EdgeSet out;
  for (const Edge& e : g.edges())
    if (vs.count(e.a) && vs.count(e.b)) out.insert(e);
  return out;
}

/// Vertices met walking the face of `sub` through dart d, from d.tail up to
/// the first arrival at `stop` (inclusive).
inline std::vector<Vertex> face_segment(const RotationEmbedding& sub, Dart d, Vertex stop) {
  std::vector<Vertex> out;
  for (const Dart& x : sub.face_darts(d)) {
    out.push_back(x.tail);
    if (x.tail == stop && out.size() > 1) return out;
    if (x.head == stop) {
      out.push_back(stop);
      return out;
    }
  }
  throw InternalError("face walk from " + vstr(d.tail) + " never reaches " + vstr(stop));
}

/// Replaces the edge a-b (consecutive in either order) of `path` by `seg`,
/// which runs between a and b in either direction.
inline std::vector<Vertex> splice(const std::vector<Vertex>& path, Vertex a, Vertex b,
                                  std::vector<Vertex> seg) {
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    const bool fwd = path[i] == a && path[i + 1] == b;
    const bool bwd = path[i] == b && path[i + 1] == a;
    if (!fwd && !bwd) continue;
    if (seg.front() != path[i]) std::reverse(seg.begin(), seg.end());
    TUTTEPATH_CHECK(seg.front() == path[i] && seg.back() == path[i + 1], "splice ends mismatch");
    std::vector<Vertex> out(path.begin(), path.begin() + static_cast<std::ptrdiff_t>(i));
    out.insert(out.end(), seg.begin(), seg.end());
    out.insert(out.end(), path.begin() + static_cast<std::ptrdiff_t>(i + 2), path.end());
    return out;
  }
  throw InternalError("edge " + estr(Edge(a, b)) + " is not on the path");
}

inline bool path_uses(const std::vector<Vertex>& path, Edge e) {
  for (std::size_t i = 0; i + 1 < path.size(); ++i)
    if (Edge(path[i], path[i + 1]) == e) return true;
  return false;
}

/// beta of `path` and whether it is a C-Tutte path of the circuit graph.
struct PathAudit {
  bool simple = true;
  bool tutte = true;
  bool c_tutte = true;
  std::int64_t beta = 0;
  std::string defect;  // first offending bridge, when not C-Tutte
};

inline PathAudit audit_path(const CircuitGraph& g, const std::vector<Vertex>& path) {
  PathAudit a;
  VertexSet seen;
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (!g.embedding().has_vertex(path[i]) || !seen.insert(path[i]).second) a.simple = false;
    if (i + 1 < path.size() && !g.embedding().has_edge(path[i], path[i + 1])) a.simple = false;
  }
  if (!a.simple) {
    a.tutte = a.c_tutte = false;
    return a;
  }
  const EdgeSet c = g.cycle_edges();
  for (const Bridge& b : bridges_of(g.embedding(), path_subgraph(path))) {
    if (b.size() >= 3) ++a.beta;
    const bool over = b.attachments.size() > 3;
    const bool outer = b.attachments.size() > 2 && b.contains_edge_of(c);
    if (over) a.tutte = false;
    if ((over || outer) && a.defect.empty()) {
      a.defect = "bridge at";
      for (Vertex x : b.attachments) a.defect += " " + std::to_string(x);
      if (outer) a.defect += " holds an outer edge";
    }
    if (over || outer) a.c_tutte = false;
  }
  return a;
}

/// Edges of C along the clockwise vertex run `arc`.
inline std::vector<Edge> arc_edges(const std::vector<Vertex>& arc) {
  std::vector<Edge> out;
  for (std::size_t i = 0; i + 1 < arc.size(); ++i) out.emplace_back(arc[i], arc[i + 1]);
  return out;
}

/// close_outer_arc that reports a failed closure as a solver defect tagged
/// with the step that asked for it.
inline CircuitGraph close_piece(const std::string& step, const RotationEmbedding& sub, const std::vector<Vertex>& arc) {
  try {
    return close_outer_arc(sub, arc);
  } catch (const InputError& err) {
    throw StructuralError(step + ": closure is not a circuit graph (" + err.what() + ")");
  }
}

/// Clockwise run of C from `from` to `to`; a single vertex when they agree.
inline std::vector<Vertex> cycle_arc(const CircuitGraph& g, Vertex from, Vertex to) {
  if (from == to) return {from};
  return subpath(g, ArcEndpoint::at(from), ArcEndpoint::at(to)).vertices;
}

}  // namespace detail
}  // namespace tuttepath
