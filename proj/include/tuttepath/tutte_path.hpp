#pragma once

#include <algorithm>
#include <vector>

#include "tuttepath/detail/main_induction.hpp"
#include "tuttepath/detail/special_cuts.hpp"
#include "tuttepath/detail/support.hpp"
#include "tuttepath/oracle.hpp"

namespace tuttepath {
namespace detail {

/// Normalized query: u is not an end of e. Picks the reduction that applies.
inline std::vector<Vertex> dispatch(const CircuitGraph& g, Vertex u, Vertex v, Edge e, SolveContext& ctx, int id) {
  const Dart ce = g.clockwise(e);
  const Vertex v1 = ce.tail, v2 = ce.head;
  if (is_two_cut(g.embedding(), u, v1)) return split_on_endpoint_2cut(g, u, v, e, ctx, id);
  if (v2 != v && is_two_cut(g.embedding(), v, v2)) {
    ctx.note(id, "mirrored for the cut {v, v''}");
    auto p = split_on_endpoint_2cut(mirror(g), v, u, e, ctx, id);
    std::reverse(p.begin(), p.end());
    return p;
  }
  for (const auto& cut : separating_cuts(g, u, v, e))
    if (cut.y != u) {
      ctx.at(id).rule = "split-2cut";
      return split_on_separating_2cut(g, u, v, e, cut, ctx, id);
    }
  const CircuitGraph mg = mirror(g);
  for (const auto& cut : separating_cuts(mg, v, u, e))
    if (cut.y != v) {
      ctx.at(id).rule = "split-2cut";
      ctx.note(id, "mirrored for a separating cut through u");
      auto p = split_on_separating_2cut(mg, v, u, e, cut, ctx, id);
      std::reverse(p.begin(), p.end());
      return p;
    }
  return main_induction(g, u, v, e, ctx, id);
}

inline std::vector<Vertex> solve(const CircuitGraph& g, Vertex u, Vertex v, Edge e, SolveContext& ctx, int parent) {
  const int id = ctx.open(parent, g, u, v, e);
  if (parent >= 0 && g.order() >= ctx.at(parent).order)
    ctx.fail("recursive instance of order " + std::to_string(g.order()) + " does not shrink");
  std::vector<Vertex> path;
  if (is_base_query(g, u, v, e)) {
    ctx.at(id).rule = "base";
    path = base_case(g, u, v, e);
  } else if (parent >= 0 && g.order() <= ctx.options.oracle_below) {
    ctx.at(id).rule = "oracle";
    const auto best = brute_tutte_path(g, u, v, e);
    if (!best) ctx.fail("no Tutte path found by exhaustive search");
    path = best->path;
  } else if (e.has(u)) {
    ctx.at(id).mirrored = true;
    path = dispatch(mirror(g), v, u, e, ctx, id);
    std::reverse(path.begin(), path.end());
  } else {
    path = dispatch(g, u, v, e, ctx, id);
  }

  const Third bound = path_bound(g, u, v, e);
  std::int64_t beta = 0;
  if (ctx.options.check_every_call || parent < 0) {
    if (path.empty() || path.front() != u || path.back() != v)
      ctx.fail("entry " + std::to_string(id) + ": path has wrong ends");
    if (!path_uses(path, e)) ctx.fail("entry " + std::to_string(id) + ": path misses e");
    const auto a = audit_path(g, path);
    if (!a.c_tutte) {
      std::string p;
      for (Vertex x : path) p += " " + std::to_string(x);
      ctx.fail("entry " + std::to_string(id) + ": path is not C-Tutte (" + a.defect + "; path" + p + ")");
    }
    beta = a.beta;
    if (!within(beta, bound))
      ctx.fail("entry " + std::to_string(id) + ": beta " + std::to_string(beta) + " exceeds " + bound.str());
  }
  auto& en = ctx.at(id);
  en.path = path;
  en.beta = beta;
  en.bound = bound;
  return path;
}

}  // namespace detail

/// Checks that (u, v, e) is a path query on cg: u != v on C and e on uCv.
inline void check_query(const CircuitGraph& cg, Vertex u, Vertex v, Edge e) {
  if (!cg.on_cycle(u) || !cg.on_cycle(v)) throw InputError("u and v must lie on the outer cycle");
  if (u == v) throw InputError("u and v must differ");
  const auto arc = detail::cycle_arc(cg, u, v);
  for (const Edge& x : detail::arc_edges(arc))
    if (x == e) return;
  throw InputError("e must be an edge of the clockwise arc from u to v");
}

/// Tutte path from u to v through e with at most (n-6)/3 + tau(vu) + tau(ue)
/// + tau(ev) bridges of three or more vertices.
inline TuttePathCertificate tutte_path(const CircuitGraph& cg, Vertex u, Vertex v, Edge e, SolveOptions options = {}) {
  check_query(cg, u, v, e);
  detail::SolveContext ctx;
  ctx.options = options;
  ctx.next_fresh = cg.embedding().max_vertex() + 1;
  TuttePathCertificate c;
  c.path = detail::solve(cg, u, v, e, ctx, -1);
  c.order = cg.order();
  c.u = u;
  c.v = v;
  c.e = e;
  c.bridges = bridges_of(cg.embedding(), path_subgraph(c.path));
  for (const auto& b : c.bridges)
    if (b.size() >= 3) ++c.beta;
  c.bound = path_bound(cg, u, v, e);
  c.tau_vu = tau(cg, ArcEndpoint::at(v), ArcEndpoint::at(u));
  c.tau_ue = tau(cg, ArcEndpoint::at(u), ArcEndpoint::along(e));
  c.tau_ev = tau(cg, ArcEndpoint::along(e), ArcEndpoint::at(v));
  c.trace = std::move(ctx.ledger);
  return c;
}

}  // namespace tuttepath
