#pragma once

#include <optional>
#include <vector>

#include "tuttepath/detail/support.hpp"

namespace tuttepath::detail {

inline bool is_base_query(const CircuitGraph& g, Vertex u, Vertex v, Edge e) {
  return (e == Edge(u, v) && g.next_on_cycle(u) == v) || g.order() == 3;
}

/// e = uv gives the single edge; on a triangle the two-edge arc uCv.
inline std::vector<Vertex> base_case(const CircuitGraph& g, Vertex u, Vertex v, Edge e) {
  TUTTEPATH_CHECK(is_base_query(g, u, v, e), "base case outside its precondition");
  if (e == Edge(u, v) && g.next_on_cycle(u) == v) return {u, v};
  return cycle_arc(g, u, v);
}

/// Cut {x,y} with x on eCv and y on uCe whose side through e avoids one of u, v.
struct SeparatingCut {
  Vertex x = 0;
  Vertex y = 0;
};

/// All separating cuts for the normalized query, in enumeration order.
inline std::vector<SeparatingCut> separating_cuts(const CircuitGraph& g, Vertex u, Vertex v, Edge e) {
  const Dart ce = g.clockwise(e);
  const auto near = cycle_arc(g, u, ce.tail);  // uCe
  const auto far = cycle_arc(g, ce.head, v);   // eCv
  const VertexSet near_set(near.begin(), near.end());
  const VertexSet far_set(far.begin(), far.end());
  std::vector<SeparatingCut> out;
  for (const TwoCut& cut : enumerate_2_separations(g.embedding())) {
    for (int flip = 0; flip < 2; ++flip) {
      const Vertex x = flip ? cut.s : cut.t;
      const Vertex y = flip ? cut.t : cut.s;
      if (!far_set.count(x) || !near_set.count(y)) continue;
      if (y == u && x == v) continue;  // {u,v} would lie in the e side
      const Vertex probe = g.next_on_cycle(y);
      if (probe == x) continue;
      // The component through the interior of yCx must avoid xCy.
      const VertexSet side = component_of(g.embedding(), {x, y}, probe);
      bool clean = true;
      for (Vertex w : cycle_arc(g, x, y))
        if (w != x && w != y && side.count(w)) clean = false;
      if (clean) out.push_back({x, y});
    }
  }
  return out;
}

/// Splits at the cut, solves both halves closed by the virtual edge xy, and
/// splices the e-side path into the other one.
inline std::vector<Vertex> split_on_separating_2cut(const CircuitGraph& g, Vertex u, Vertex v, Edge e,
                                                    SeparatingCut cut, SolveContext& ctx, int id) {
  const Vertex x = cut.x, y = cut.y;
  TUTTEPATH_CHECK(u != y, "separating cut must be normalized so that u != y");
  const auto& emb = g.embedding();
  const VertexSet inner2 = component_of(emb, {x, y}, g.next_on_cycle(y));
  VertexSet side2 = inner2;
  side2.insert({x, y});
  VertexSet side1;
  for (Vertex w : emb.vertices())
    if (!inner2.count(w)) side1.insert(w);
  EdgeSet e1 = induced_edges(emb, side1);
  EdgeSet e2 = induced_edges(emb, side2);
  e2.erase(Edge(x, y));  // the cut edge, if any, stays with side 1

  const CircuitGraph g1 = close_piece("split-2cut", emb.restricted(side1, e1), cycle_arc(g, x, y));
  const CircuitGraph g2 = close_piece("split-2cut", emb.restricted(side2, e2), cycle_arc(g, y, x));
  ctx.note(id, "cut {" + vstr(x) + "," + vstr(y) + "}");
  const auto p1 = solve(g1, u, v, Edge(x, y), ctx, id);
  const auto p2 = solve(g2, y, x, e, ctx, id);
  return splice(p1, x, y, p2);
}

/// {u, x} is a 2-cut where x is the tail of e.
inline std::vector<Vertex> split_on_endpoint_2cut(const CircuitGraph& g, Vertex u, Vertex v, Edge e,
                                                  SolveContext& ctx, int id) {
  const auto& emb = g.embedding();
  const Vertex x = g.clockwise(e).tail;
  const Vertex probe = g.next_on_cycle(u);
  TUTTEPATH_CHECK(probe != x, "endpoint cut on adjacent cycle vertices");
  const VertexSet inner2 = component_of(emb, {u, x}, probe);
  VertexSet side1, side2 = inner2;
  side2.insert({u, x});
  for (Vertex w : emb.vertices())
    if (!inner2.count(w)) side1.insert(w);
  EdgeSet e1 = induced_edges(emb, side1);
  e1.erase(Edge(u, x));  // maximal second side takes the edge ux
  const EdgeSet e2 = induced_edges(emb, side2);
  const RotationEmbedding g1 = emb.restricted(side1, e1);

  if (is_biconnected(g1)) {
    ctx.at(id).rule = "endpoint-cut-direct";
    RotationEmbedding outer = g1;
    outer.set_outer_dart(g.clockwise(e));
    const CircuitGraph c1 = CircuitGraph::from_embedding(outer);
    return solve(c1, u, v, e, ctx, id);
  }

  ctx.at(id).rule = "endpoint-cut-split";
  const CircuitGraph c1 = close_piece("endpoint-cut", g1, cycle_arc(g, x, u));
  const CircuitGraph c2 = close_piece("endpoint-cut", emb.restricted(side2, e2), cycle_arc(g, u, x));
  const auto p1 = solve(c1, u, v, e, ctx, id);

  // e' on uC2x with tau(e'x) = 1/3 and tau(ue') <= 2/3; otherwise the
  // cheapest admissible edge.
  const auto arc = cycle_arc(c2, u, x);
  std::optional<Edge> pick;
  Third best{1000};
  for (const Edge& cand : arc_edges(arc)) {
    const Third t_ex = tau(c2, ArcEndpoint::along(cand), ArcEndpoint::at(x));
    const Third t_ue = tau(c2, ArcEndpoint::at(u), ArcEndpoint::along(cand));
    if (t_ex == Third::of(1) && t_ue <= Third::of(2)) {
      pick = cand;
      break;
    }
    if (t_ex + t_ue < best) {
      best = t_ex + t_ue;
      pick = cand;
    }
  }
  TUTTEPATH_CHECK(pick.has_value(), "no edge on uCx");

  if (p1.size() >= 2 && p1[1] == x) {
    const auto p2 = solve(c2, u, x, *pick, ctx, id);
    return splice(p1, u, x, p2);
  }
  // The first path avoided the virtual edge, so it already lives in G.
  ctx.note(id, "virtual edge ux unused; first path kept");
  return p1;
}

}  // namespace tuttepath::detail
