#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "tuttepath/detail/support.hpp"

namespace tuttepath::detail {

/// A contracted piece of H: `inner` hangs off the cut {s, t} and is replaced
/// in K by the path s - id - t.
struct Marker {
  Vertex id = 0;
  Vertex s = 0, t = 0;
  VertexSet inner;
  EdgeSet edges;  // edges of the contracted side, including st if present
  std::size_t first = 0, last = 0;  // positions of s and t on v'C'u
};

/// Dart of `sub` leaving a on the face that contains the angle of `g` at a
/// starting at `start` (scanning the rotation of g clockwise from start).
inline Dart sub_dart_from(const RotationEmbedding& g, const RotationEmbedding& sub, Vertex a,
                          Vertex start) {
  const auto& r = g.rotation(a);
  auto it = std::find(r.begin(), r.end(), start);
  TUTTEPATH_CHECK(it != r.end(), "start is not a neighbour");
  const std::size_t k = static_cast<std::size_t>(it - r.begin());
  for (std::size_t i = 0; i < r.size(); ++i) {
    const Vertex x = r[(k + i) % r.size()];
    if (sub.has_edge(a, x)) return {a, x};
  }
  throw InternalError("vertex " + vstr(a) + " has no edge in the piece");
}

inline Edge pick_edge(const std::vector<Edge>& cands, const std::function<bool(Edge)>& want,
                      const std::function<Third(Edge)>& cost) {
  TUTTEPATH_CHECK(!cands.empty(), "no candidate edge");
  for (const Edge& c : cands)
    if (want(c)) return c;
  Edge best = cands.front();
  for (const Edge& c : cands)
    if (cost(c) < cost(best)) best = c;
  return best;
}

/// Replaces the vertex at `at` in path by seg (oriented to fit its neighbours).
inline std::vector<Vertex> replace_vertex(const std::vector<Vertex>& path, Vertex at, std::vector<Vertex> seg) {
  auto it = std::find(path.begin(), path.end(), at);
  TUTTEPATH_CHECK(it != path.end() && it != path.begin() && it + 1 != path.end(),
                  "marker must be an inner path vertex");
  const Vertex before = *(it - 1);
  if (seg.front() != before) std::reverse(seg.begin(), seg.end());
  TUTTEPATH_CHECK(seg.front() == before && seg.back() == *(it + 1), "replacement does not fit");
  std::vector<Vertex> out(path.begin(), it - 1);
  out.insert(out.end(), seg.begin(), seg.end());
  out.insert(out.end(), it + 2, path.end());
  return out;
}

/// Solves s -> t through f on `sub` closed along `arc`. When the closure has
/// cut vertices the path runs through the chain of blocks between s and t,
/// each block solved as its own circuit graph.
template <class Run>
std::vector<Vertex> solve_closure(const std::string& step, RotationEmbedding sub, const std::vector<Vertex>& arc,
                                  Vertex s, Vertex t, Edge f, Run&& run, SolveContext& ctx, int id) {
  TUTTEPATH_CHECK(arc.size() >= 3, step + ": closing arc too short");
  const Vertex x = arc.front(), y = arc.back();
  if (sub.has_edge(x, y)) sub.remove_edge(x, y);
  sub.insert_outer_path(arc[arc.size() - 2], y, {}, x, arc[1]);
  sub.set_outer_dart({x, arc[1]});
  if (diagnose_circuit(sub, arc).first == CircuitClause::ok) return run(validate_circuit(sub, arc), s, t, f);
  if (sub.component_count() != 1 || is_biconnected(sub))
    throw StructuralError(step + ": closure is not a circuit graph (" + diagnose_circuit(sub, arc).second + ")");

  ctx.note(id, step + ": closure has cut vertices, solved block by block");
  const auto bd = blocks(sub);
  const auto& bl = bd.blocks;
  // Shortest chain of blocks from one containing s to one containing t.
  std::vector<int> prev(bl.size(), -2);
  std::vector<std::size_t> queue;
  for (std::size_t i = 0; i < bl.size(); ++i)
    if (bl[i].vertices.count(s)) {
      prev[i] = -1;
      queue.push_back(i);
    }
  std::optional<std::size_t> goal;
  for (std::size_t qi = 0; qi < queue.size() && !goal; ++qi) {
    const std::size_t b = queue[qi];
    if (bl[b].vertices.count(t)) {
      goal = b;
      break;
    }
    for (std::size_t c = 0; c < bl.size(); ++c) {
      if (prev[c] != -2) continue;
      for (Vertex w : bl[b].vertices)
        if (bd.cut_vertices.count(w) && bl[c].vertices.count(w)) {
          prev[c] = static_cast<int>(b);
          queue.push_back(c);
          break;
        }
    }
  }
  TUTTEPATH_CHECK(goal.has_value(), step + ": no block chain between the path ends");
  std::vector<std::size_t> chain;
  for (int b = static_cast<int>(*goal); b >= 0; b = prev[static_cast<std::size_t>(b)]) chain.push_back(static_cast<std::size_t>(b));
  std::reverse(chain.begin(), chain.end());

  const auto outer = sub.outer_face_darts();
  std::vector<Vertex> path{s};
  bool used_f = false;
  for (std::size_t k = 0; k < chain.size(); ++k) {
    const Block& b = bl[chain[k]];
    const Vertex entry = path.back();
    Vertex exit = t;
    if (k + 1 < chain.size()) {
      bool found = false;
      for (Vertex w : b.vertices)
        if (w != entry && bl[chain[k + 1]].vertices.count(w) && bd.cut_vertices.count(w)) {
          exit = w;
          found = true;
        }
      TUTTEPATH_CHECK(found, step + ": consecutive blocks share no cut vertex");
    }
    if (b.vertices.size() == 2) {
      TUTTEPATH_CHECK(b.edges.count(Edge(entry, exit)), step + ": bridge block off the chain");
      used_f = used_f || Edge(entry, exit) == f;
      path.push_back(exit);
      continue;
    }
    RotationEmbedding be = sub.restricted(b.vertices, b.edges);
    std::optional<Dart> od;
    for (const Dart& d : outer)
      if (b.edges.count(Edge(d.tail, d.head))) {
        od = d;
        break;
      }
    TUTTEPATH_CHECK(od.has_value(), step + ": block off the outer face");
    be.set_outer_dart(*od);
    const CircuitGraph bc = CircuitGraph::from_embedding(be);
    std::vector<Vertex> seg;
    auto forward = cycle_arc(bc, entry, exit);
    const auto fwd_edges = arc_edges(forward);
    if (b.edges.count(f)) {
      used_f = true;
      if (std::find(fwd_edges.begin(), fwd_edges.end(), f) != fwd_edges.end()) {
        seg = run(bc, entry, exit, f);
      } else {
        seg = run(bc, exit, entry, f);
        std::reverse(seg.begin(), seg.end());
      }
    } else {
      const auto at = ArcEndpoint::at;
      const auto along = ArcEndpoint::along;
      const Edge g = pick_edge(
          fwd_edges, [](Edge) { return false; },
          [&](Edge c) { return tau(bc, at(entry), along(c)) + tau(bc, along(c), at(exit)); });
      seg = run(bc, entry, exit, g);
    }
    path.insert(path.end(), seg.begin() + 1, seg.end());
  }
  TUTTEPATH_CHECK(used_f, step + ": required edge lies off the block chain");
  return path;
}

// -- H is a single edge ------------------------------------------------------

inline std::vector<Vertex> reduce_degree_two(const CircuitGraph& g, Vertex u, Vertex v, Vertex v1,
                                             Vertex v2, SolveContext& ctx, int id) {
  ctx.at(id).rule = "degree-two";
  const auto& G = g.embedding();
  TUTTEPATH_CHECK(G.degree(v1) == 2, "v' must have degree 2 when H is an edge");
  VertexSet keep;
  for (Vertex x : G.vertices())
    if (x != v1) keep.insert(x);
  const CircuitGraph gp = close_piece("degree-two", G.restricted(keep, induced_edges(G, keep)), cycle_arc(g, v2, u));
  const auto p = solve(gp, u, v, Edge(u, v2), ctx, id);
  TUTTEPATH_CHECK(p.size() >= 2 && p[1] == v2, "path must start with uv''");
  std::vector<Vertex> out{u, v1};
  out.insert(out.end(), p.begin() + 1, p.end());
  return out;
}

// -- the path P_K through the contracted graph ---------------------------------

inline std::vector<Vertex> contracted_path(const CircuitGraph& kc, Vertex u, Vertex v1,
                                           const std::vector<Marker>& markers, Vertex wp,
                                           Third tau_g_ue, SolveContext& ctx, int id) {
  const auto at = ArcEndpoint::at;
  const auto along = ArcEndpoint::along;
  const Third tk = tau(kc, at(u), at(v1));
  const auto right = cycle_arc(kc, v1, u);  // v'Du
  std::set<Vertex> tset;
  for (const auto& m : markers) tset.insert(m.id);
  auto cost = [&](Edge c) { return tau(kc, at(v1), along(c)) + tau(kc, along(c), at(u)); };
  auto reversed = [](std::vector<Vertex> p) {
    std::reverse(p.begin(), p.end());
    return p;
  };

  if (tk < tau_g_ue) {
    ctx.note(id, "contracted: tau_K(uv') < tau_G(ue)");
    std::vector<Edge> cands;
    for (const Edge& c : arc_edges(right))
      if (!c.has(v1)) cands.push_back(c);
    std::vector<Edge> strong, weak;
    for (const Edge& c : cands) {
      if (tset.size() >= 2) {
        if (c.has(wp)) strong.push_back(c);
      } else if (tset.size() == 1) {
        const Vertex t0 = *tset.begin();
        if (c.has(t0) && c.has(wp)) strong.push_back(c);
        else if (c.has(t0)) weak.push_back(c);
      } else {
        strong.push_back(c);
      }
    }
    const auto& pool = !strong.empty() ? strong : !weak.empty() ? weak : cands;
    Edge best = pool.front();
    for (const Edge& c : pool)
      if (cost(c) < cost(best)) best = c;
    ctx.note(id, "contracted: e' = " + estr(best));
    return reversed(solve(kc, v1, u, best, ctx, id));
  }

  if (!tset.empty()) {
    // Prefer t in N_K(w') + {w'}; markers are scanned along D from v'.
    std::optional<Vertex> pick;
    for (Vertex x : right)
      if (tset.count(x) && (x == wp || kc.embedding().has_edge(x, wp))) {
        pick = x;
        break;
      }
    if (!pick)
      for (Vertex x : right)
        if (tset.count(x)) {
          pick = x;
          break;
        }
    const Vertex t = *pick;
    const Vertex x = kc.prev_on_cycle(t);
    const Vertex y = kc.next_on_cycle(t);
    ctx.note(id, "contracted: remove marker " + vstr(t));
    RotationEmbedding km = kc.embedding();
    km.remove_vertex(t);
    const CircuitGraph kp = close_piece("contracted", km, cycle_arc(kc, y, x));
    const auto p = reversed(solve(kp, v1, u, Edge(x, y), ctx, id));
    return splice(p, x, y, {x, t, y});
  }

  if (right.size() >= 4) {
    const Edge c = pick_edge(
        arc_edges(right),
        [&](Edge c) {
          return tau(kc, at(v1), along(c)) == Third::of(0) && tau(kc, along(c), at(u)) <= Third::of(2);
        },
        cost);
    ctx.note(id, "contracted: e' = " + estr(c));
    return reversed(solve(kc, v1, u, c, ctx, id));
  }

  TUTTEPATH_CHECK(right.size() == 3, "v'Du must have at least three vertices");
  const Vertex x = right[1];
  if (tau_g_ue != Third::of(0)) {
    const Edge f = pick_edge(
        arc_edges(cycle_arc(kc, u, v1)),
        [&](Edge c) {
          return tau(kc, along(c), at(v1)) == Third::of(1) && tau(kc, at(u), along(c)) <= Third::of(2);
        },
        [&](Edge c) { return tau(kc, along(c), at(v1)) + tau(kc, at(u), along(c)); });
    ctx.note(id, "contracted: f = " + estr(f));
    return solve(kc, u, v1, f, ctx, id);
  }
  ctx.note(id, "contracted: reroute uv' around the outside");
  RotationEmbedding km = kc.embedding();
  km.remove_edge(v1, x);
  km.set_outer_dart({u, kc.next_on_cycle(u)});
  const auto walk = km.outer_walk();
  auto it = std::find(walk.begin(), walk.end(), v1);
  TUTTEPATH_CHECK(it != walk.end(), "v' left the outer walk");
  std::vector<Vertex> arc(it, walk.end());
  arc.push_back(u);
  const CircuitGraph kp = close_piece("contracted", km, arc);
  auto p = reversed(solve(kp, v1, u, Edge(x, u), ctx, id));
  if (audit_path(kc, p).c_tutte) return p;
  // A bridge inside the new outer cycle can hold edges of uDv' with three
  // attachments. Fall back to the direct queries through x and keep the
  // cheaper one.
  ctx.note(id, "contracted: rerouted path is not D-Tutte in K; direct queries through x");
  std::vector<Vertex> best;
  std::int64_t best_beta = 0;
  for (const Edge& c : {Edge(v1, x), Edge(x, u)}) {
    auto q = reversed(solve(kc, v1, u, c, ctx, id));
    const auto a = audit_path(kc, q);
    if (a.c_tutte && (best.empty() || a.beta < best_beta)) {
      best = std::move(q);
      best_beta = a.beta;
    }
  }
  TUTTEPATH_CHECK(!best.empty(), "no D-Tutte path through x");
  return best;
}

// -- decomposition along eCv ---------------------------------------------------

struct PieceClass {
  bool at_vertex = true;
  Vertex h = 0;                  // vertex location
  VertexSet comp;                // component location
  std::vector<Vertex> attach;    // component attachments on P_K - T, ordered along D from v'
  std::vector<std::size_t> bridges;
  std::size_t a = 0, b = 0;      // positions on eCv
  std::size_t key = 0;
  VertexSet vertices;
  EdgeSet edges;
};

inline std::vector<Vertex> main_induction(const CircuitGraph& g, Vertex u, Vertex v, Edge e,
                                          SolveContext& ctx, int id) {
  const auto& G = g.embedding();
  const auto at = ArcEndpoint::at;
  const auto along = ArcEndpoint::along;
  const Dart ce = g.clockwise(e);
  const Vertex v1 = ce.tail, v2 = ce.head;
  const auto ecv = cycle_arc(g, v2, v);
  const VertexSet ecv_set(ecv.begin(), ecv.end());
  const auto uce = cycle_arc(g, u, v1);
  const bool ecv_good = is_good(g, along(e), at(v));
  ctx.at(id).rule = ecv_good ? "decompose-good-arc" : "decompose-bad-arc";
  const Third tau_g_ue = tau(g, at(u), along(e));

  // (a) the block H of G - eCv through uCe.
  VertexSet rest_v;
  for (Vertex x : G.vertices())
    if (!ecv_set.count(x)) rest_v.insert(x);
  const auto bd = blocks(G.restricted(rest_v, induced_edges(G, rest_v)));
  const Block* hb = nullptr;
  for (const auto& b : bd.blocks) {
    bool all = true;
    for (const Edge& x : arc_edges(uce)) all = all && b.edges.count(x);
    if (all) {
      hb = &b;
      break;
    }
  }
  TUTTEPATH_CHECK(hb != nullptr, "uCe is not inside one block of G - eCv");
  if (hb->vertices.size() == 2) return reduce_degree_two(g, u, v, v1, v2, ctx, id);

  RotationEmbedding hemb = G.restricted(hb->vertices, hb->edges);
  hemb.set_outer_dart({u, g.next_on_cycle(u)});
  const auto cp = hemb.outer_walk();  // C', from u
  std::map<Vertex, std::size_t> cpos;
  for (std::size_t i = 0; i < cp.size(); ++i) cpos[cp[i]] = i;
  TUTTEPATH_CHECK(cpos.size() == cp.size(), "outer walk of H is not a cycle");
  const std::size_t iv1 = cpos.at(v1);
  std::vector<Vertex> top(cp.begin() + static_cast<std::ptrdiff_t>(iv1), cp.end());  // v'C'u
  top.push_back(u);

  // (b) contract the maximal 2-separations with cut on v'C'u.
  struct Cand {
    std::size_t i, j;
    VertexSet inner;
  };
  std::vector<Cand> cands;
  for (std::size_t i = 0; i < top.size(); ++i)
    for (std::size_t j = i + 2; j < top.size(); ++j) {
      if (!is_two_cut(hemb, top[i], top[j])) continue;
      VertexSet inner = component_of(hemb, {top[i], top[j]}, top[i + 1]);
      const VertexSet between(top.begin() + static_cast<std::ptrdiff_t>(i + 1),
                              top.begin() + static_cast<std::ptrdiff_t>(j));
      bool clean = true;
      for (Vertex c : cp)
        if (inner.count(c) && !between.count(c)) clean = false;
      if (clean) cands.push_back({i, j, std::move(inner)});
    }
  // Widest spans first; a span crossing a kept one can only run along a chain
  // of degree-2 vertices, and is dropped.
  std::sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) {
    return a.j - a.i != b.j - b.i ? a.j - a.i > b.j - b.i : a.i < b.i;
  });
  std::vector<Cand> maximal;
  for (const auto& a : cands) {
    bool keep = true;
    for (const auto& b : maximal) {
      const bool inside = b.i <= a.i && a.j <= b.j;
      const bool apart = a.j <= b.i || b.j <= a.i;
      if (inside) keep = false;
      if (!inside && !apart) {
        keep = false;
        ctx.note(id, "crossing 2-separation (" + vstr(top[a.i]) + "," + vstr(top[a.j]) + ") dropped");
      }
    }
    if (keep) maximal.push_back(a);
  }
  std::sort(maximal.begin(), maximal.end(), [](const Cand& a, const Cand& b) { return a.i < b.i; });

  RotationEmbedding kemb = hemb;
  std::vector<Marker> markers;
  for (const auto& c : maximal) {
    Marker mk;
    mk.s = top[c.i];
    mk.t = top[c.j];
    mk.inner = c.inner;
    mk.first = c.i;
    mk.last = c.j;
    for (const Edge& x : hemb.edges())
      if (c.inner.count(x.a) || c.inner.count(x.b) || x == Edge(mk.s, mk.t)) mk.edges.insert(x);
    Vertex p = c.i == 0 ? cp[iv1 - 1] : top[c.i - 1];
    if (!markers.empty() && markers.back().last == c.i) p = markers.back().id;
    const Vertex q = c.j + 1 < top.size() ? top[c.j + 1] : cp[1];
    for (Vertex x : c.inner) kemb.remove_vertex(x);
    if (kemb.has_edge(mk.s, mk.t)) kemb.remove_edge(mk.s, mk.t);
    mk.id = ctx.fresh();
    kemb.insert_outer_path(p, mk.s, {mk.id}, mk.t, q);
    markers.push_back(std::move(mk));
  }
  kemb.set_outer_dart({u, g.next_on_cycle(u)});
  CircuitGraph kc;
  try {
    kc = CircuitGraph::from_embedding(kemb);
  } catch (const CircuitError& err) {
    throw InternalError(std::string("contracted graph K is not a circuit graph: ") + err.what());
  }
  std::map<Vertex, const Marker*> marker_of;
  for (const auto& m : markers) marker_of[m.id] = &m;

  // Anchor w: C' and C agree from w back to v'.
  Vertex w = v1;
  for (std::size_t guard = 0; guard < cp.size(); ++guard) {
    const Vertex a = cp[(cpos.at(w) + cp.size() - 1) % cp.size()];
    if (a != g.prev_on_cycle(w)) break;
    w = a;
  }
  Vertex wp = w;
  if (!kc.embedding().has_vertex(w)) {
    bool found = false;
    for (const auto& m : markers)
      if (m.inner.count(w)) {
        wp = m.id;
        found = true;
      }
    TUTTEPATH_CHECK(found, "anchor w is neither in K nor contracted");
  }
  ctx.note(id, "|K|=" + std::to_string(kc.order()) + " |T|=" + std::to_string(markers.size()) +
                   " w=" + vstr(w) + " w'=" + vstr(wp));

  // (c) P_K.
  const int c3_entry = static_cast<int>(ctx.ledger.size());
  const std::vector<Vertex> pk = contracted_path(kc, u, v1, markers, wp, tau_g_ue, ctx, id);
  {
    PieceRecord rec;
    rec.tag = "contracted";
    rec.size = kc.order();
    rec.entry = c3_entry;
    rec.beta = audit_path(kc, pk).beta;
    rec.budget = size_term(static_cast<std::int64_t>(kc.order())) + tau_g_ue +
                 (markers.size() >= 2 ? Third::of(3) : Third::of(2));
    if (*rec.beta * 3 > rec.budget->num) ctx.note(id, "contracted budget exceeded");
    ctx.at(id).pieces.push_back(rec);
    if (std::find(pk.begin(), pk.end(), wp) == pk.end()) ctx.note(id, "w' not on P_K");
  }
  TUTTEPATH_CHECK(pk.front() == u && pk.back() == v1, "P_K has wrong ends");
  const VertexSet pk_set(pk.begin(), pk.end());
  VertexSet pkt;  // P_K - T
  for (Vertex x : pk)
    if (!marker_of.count(x)) pkt.insert(x);

  // (d) bridges between H and eCv, grouped by location on H.
  std::map<Vertex, std::size_t> epos;
  for (std::size_t i = 0; i < ecv.size(); ++i) epos[ecv[i]] = i;
  Subgraph base;
  base.vertices = hb->vertices;
  base.vertices.insert(ecv.begin(), ecv.end());
  base.edges = hb->edges;
  for (const Edge& x : arc_edges(ecv)) base.edges.insert(x);
  const auto bs = bridges_of(G, base);

  const auto comps = components_without(hemb, pkt);
  std::map<Vertex, std::size_t> comp_index;  // vertex -> index into comps
  for (std::size_t i = 0; i < comps.size(); ++i)
    for (Vertex x : comps[i]) comp_index[x] = i;

  const std::size_t len = cp.size();
  auto top_rank = [&](Vertex h) { return (cpos.at(h) + len - iv1) % len; };
  const auto& dcyc = kc.outer_cycle();
  auto d_rank = [&](Vertex x) {
    return (static_cast<std::size_t>(kc.position(x)) + dcyc.size() - static_cast<std::size_t>(kc.position(v1))) %
           dcyc.size();
  };

  std::map<std::pair<int, Vertex>, std::size_t> class_of;  // (kind, key vertex) -> class
  std::vector<PieceClass> classes;
  std::vector<std::size_t> free_bridges;
  for (std::size_t bi = 0; bi < bs.size(); ++bi) {
    std::vector<Vertex> hs, es;
    for (Vertex x : bs[bi].attachments) (hb->vertices.count(x) ? hs : es).push_back(x);
    TUTTEPATH_CHECK(hs.size() <= 1, "a bridge meets H twice");
    if (hs.empty()) {
      free_bridges.push_back(bi);
      continue;
    }
    TUTTEPATH_CHECK(!es.empty(), "bridge without an eCv attachment");
    const Vertex h = hs.front();
    std::pair<int, Vertex> key;
    if (pkt.count(h)) key = {0, h};
    else key = {1, *comps.at(comp_index.at(h)).begin()};
    auto [it, fresh] = class_of.try_emplace(key, classes.size());
    if (fresh) {
      PieceClass pc;
      pc.at_vertex = key.first == 0;
      pc.h = h;
      pc.key = top_rank(h);
      if (!pc.at_vertex) pc.comp = comps.at(comp_index.at(h));
      pc.a = epos.at(es.front());
      pc.b = pc.a;
      classes.push_back(std::move(pc));
    }
    PieceClass& pc = classes[it->second];
    pc.bridges.push_back(bi);
    pc.key = std::min(pc.key, top_rank(h));
    for (Vertex x : es) {
      pc.a = std::min(pc.a, epos.at(x));
      pc.b = std::max(pc.b, epos.at(x));
    }
  }
  std::sort(classes.begin(), classes.end(), [](const PieceClass& a, const PieceClass& b) { return a.key < b.key; });
  const std::size_t m = classes.size();
  TUTTEPATH_CHECK(m >= 1, "no bridge between H and eCv");
  TUTTEPATH_CHECK(classes.front().at_vertex && classes.front().h == v1, "first class must sit at v'");
  TUTTEPATH_CHECK(classes.front().a == 0, "a_1 must be v''");
  TUTTEPATH_CHECK(classes.back().b + 1 == ecv.size(), "b_m must be v");
  for (std::size_t i = 0; i + 1 < m; ++i)
    TUTTEPATH_CHECK(classes[i].b <= classes[i + 1].a, "piece intervals overlap on eCv");

  // Piece vertex and edge sets.
  std::vector<VertexSet> lv(m > 0 ? m - 1 : 0);
  std::vector<EdgeSet> le(lv.size());
  for (std::size_t i = 0; i < m; ++i) {
    auto& pc = classes[i];
    for (std::size_t k = pc.a; k <= pc.b; ++k) pc.vertices.insert(ecv[k]);
    for (std::size_t k = pc.a; k < pc.b; ++k) pc.edges.emplace(ecv[k], ecv[k + 1]);
    for (std::size_t bi : pc.bridges) {
      pc.vertices.insert(bs[bi].vertices.begin(), bs[bi].vertices.end());
      pc.edges.insert(bs[bi].edges.begin(), bs[bi].edges.end());
    }
    if (!pc.at_vertex) {
      VertexSet att;
      for (Vertex x : pc.comp)
        for (Vertex y : hemb.neighbors(x)) {
          pc.edges.emplace(x, y);
          if (pkt.count(y)) att.insert(y);
        }
      pc.vertices.insert(pc.comp.begin(), pc.comp.end());
      pc.vertices.insert(att.begin(), att.end());
      // The cut edge of a contracted side travels with that side.
      for (const auto& mk : markers)
        if (pc.comp.count(*mk.inner.begin()) && pc.vertices.count(mk.s) && pc.vertices.count(mk.t) &&
            hemb.has_edge(mk.s, mk.t))
          pc.edges.emplace(mk.s, mk.t);
      pc.attach.assign(att.begin(), att.end());
      std::sort(pc.attach.begin(), pc.attach.end(), [&](Vertex a, Vertex b) { return d_rank(a) < d_rank(b); });
      TUTTEPATH_CHECK(pc.attach.size() == 2, "component location must have two attachments");
    }
  }
  for (std::size_t i = 0; i + 1 < m; ++i) {
    for (std::size_t k = classes[i].b; k <= classes[i + 1].a; ++k) lv[i].insert(ecv[k]);
    for (std::size_t k = classes[i].b; k < classes[i + 1].a; ++k) le[i].emplace(ecv[k], ecv[k + 1]);
  }
  for (std::size_t bi : free_bridges) {
    std::size_t lo = ecv.size(), hi = 0;
    for (Vertex x : bs[bi].attachments) {
      lo = std::min(lo, epos.at(x));
      hi = std::max(hi, epos.at(x));
    }
    bool placed = false;
    for (std::size_t i = 0; i < m && !placed; ++i)
      if (classes[i].a <= lo && hi <= classes[i].b) {
        classes[i].vertices.insert(bs[bi].vertices.begin(), bs[bi].vertices.end());
        classes[i].edges.insert(bs[bi].edges.begin(), bs[bi].edges.end());
        placed = true;
      }
    for (std::size_t i = 0; i + 1 < m && !placed; ++i)
      if (classes[i].b <= lo && hi <= classes[i + 1].a) {
        lv[i].insert(bs[bi].vertices.begin(), bs[bi].vertices.end());
        le[i].insert(bs[bi].edges.begin(), bs[bi].edges.end());
        placed = true;
      }
    TUTTEPATH_CHECK(placed, "bridge on eCv spans two pieces");
  }

  // Ledger bookkeeping: vertices of G counted so far, markers not yet absorbed.
  VertexSet counted;
  for (Vertex x : kc.embedding().vertices())
    if (!marker_of.count(x)) counted.insert(x);
  auto record = [&](const std::string& tag, const VertexSet& vs, std::size_t absorbed, int entry,
                    std::optional<std::size_t> expected_overlap) {
    PieceRecord rec;
    rec.tag = tag;
    rec.size = vs.size();
    std::size_t ov = absorbed;
    for (Vertex x : vs)
      if (counted.count(x)) ++ov;
    rec.overlap = ov;
    rec.entry = entry;
    counted.insert(vs.begin(), vs.end());
    if (expected_overlap && *expected_overlap != ov)
      ctx.note(id, tag + ": overlap " + std::to_string(ov) + " differs from " + std::to_string(*expected_overlap));
    ctx.at(id).pieces.push_back(rec);
  };
  int child = -1;
  auto sub_solve = [&](const CircuitGraph& sg, Vertex a, Vertex b, Edge f) {
    child = static_cast<int>(ctx.ledger.size());
    return solve(sg, a, b, f, ctx, id);
  };
  auto markers_in = [&](const VertexSet& comp) {
    std::size_t k = 0;
    for (const auto& mk : markers)
      if (comp.count(*mk.inner.begin())) ++k;
    return k;
  };

  // (e) paths through the pieces.
  std::map<Vertex, std::vector<Vertex>> replace;  // marker on P_K -> path between its neighbours
  std::vector<std::vector<Vertex>> piece_path(m);
  std::vector<std::vector<Vertex>> link_path(lv.size());
  VertexSet located_markers;

  for (std::size_t i = 0; i < m; ++i) {
    PieceClass& pc = classes[i];
    const Vertex ai = ecv[pc.a], bi = ecv[pc.b];
    const RotationEmbedding jemb = G.restricted(pc.vertices, pc.edges);
    const bool last = i + 1 == m;
    if (!pc.at_vertex)
      for (const auto& mk : markers)
        if (pc.comp.count(*mk.inner.begin())) located_markers.insert(mk.id);

    if (i == 0 && !last) {
      TUTTEPATH_CHECK(pc.vertices.size() == 2 && pc.b == 0, "J_1 must be the edge e");
      piece_path[i] = {v1, v2};
      record("first-edge", pc.vertices, 0, -1, 1);
      continue;
    }

    if (last) {
      // J_m: close with y a_m and route from x to b_m through e_m = y a_m.
      const Vertex x = pc.at_vertex ? pc.h : pc.attach[1];
      const Vertex y = pc.at_vertex ? pc.h : pc.attach[0];
      if (pc.at_vertex && pc.h != w) ctx.note(id, "last-piece: located at " + vstr(pc.h) + " rather than w");
      if (pc.at_vertex && pc.a == pc.b) {
        piece_path[i] = {ai};
        record("last-piece", pc.vertices, 0, -1, 2);
        continue;
      }
      const Dart d0 = sub_dart_from(G, jemb, ai, g.next_on_cycle(ai));
      const auto face = jemb.face_walk(d0);
      std::size_t ix = 0;
      while (ix < face.size() && face[ix] != x) ++ix;
      TUTTEPATH_CHECK(ix < face.size(), "x is not on the outer walk of J_m");
      std::size_t iy = ix;
      while (iy < face.size() && face[iy] != y) ++iy;
      TUTTEPATH_CHECK(iy < face.size(), "y is not on the outer walk of J_m");
      std::vector<Vertex> arc(face.begin(), face.begin() + static_cast<std::ptrdiff_t>(iy + 1));
      const auto r = solve_closure("last-piece", jemb, arc, x, bi, Edge(y, ai), sub_solve, ctx, id);
      auto ya = std::find(r.begin(), r.end(), ai);
      TUTTEPATH_CHECK(ya != r.begin() && *(ya - 1) == y, "J_m path must use y a_m");
      piece_path[i].assign(ya, r.end());
      if (!pc.at_vertex) {
        const std::vector<Vertex> top_part(r.begin(), ya);
        TUTTEPATH_CHECK(located_markers.size() >= 1, "J_m component without a marker");
        bool done = false;
        for (const auto& mk : markers)
          if (pc.comp.count(*mk.inner.begin()) && pk_set.count(mk.id)) {
            replace[mk.id] = top_part;
            done = true;
          }
        TUTTEPATH_CHECK(done, "J_m marker is not on P_K");
      }
      record("last-piece", pc.vertices, pc.at_vertex ? 0 : markers_in(pc.comp), child,
             pc.at_vertex ? 2 : 4);
      continue;
    }

    if (pc.at_vertex) {
      if (pc.a == pc.b) {
        piece_path[i] = {ai};
        record("piece-point", pc.vertices, 0, -1, 2);
        continue;
      }
      // J_i + a_i x, path from x to b_i through x a_i.
      const Vertex x = pc.h;
      const auto seg = face_segment(jemb, {ai, ecv[pc.a + 1]}, x);
      const auto r = solve_closure("piece-at-vertex", jemb, seg, x, bi, Edge(x, ai), sub_solve, ctx, id);
      TUTTEPATH_CHECK(r.size() >= 2 && r[1] == ai, "J_i path must start x a_i");
      piece_path[i].assign(r.begin() + 1, r.end());
      record("piece-at-vertex", pc.vertices, 0, child, 2);
      continue;
    }

    const Vertex y = pc.attach[0], x = pc.attach[1];
    const Marker* own = nullptr;
    for (const auto& mk : markers)
      if (mk.inner == pc.comp && pk_set.count(mk.id)) own = &mk;

    if (own != nullptr) {
      // J_i + b_i x, path from a_i to y through b_i x.
      const Dart d0 = sub_dart_from(G, jemb, ai, g.next_on_cycle(ai));
      const auto face = jemb.face_walk(d0);
      const std::size_t ib = pc.b - pc.a;
      TUTTEPATH_CHECK(face.size() > ib && face[ib] == bi, "outer walk of J_i leaves eCv early");
      std::size_t ix = ib;
      while (ix < face.size() && face[ix] != x) ++ix;
      TUTTEPATH_CHECK(ix < face.size(), "x missing from the outer walk of J_i");
      std::vector<Vertex> arc(face.begin() + static_cast<std::ptrdiff_t>(ix), face.end());
      arc.insert(arc.end(), face.begin(), face.begin() + static_cast<std::ptrdiff_t>(ib + 1));
      const auto r = solve_closure("piece-marker", jemb, arc, ai, y, Edge(bi, x), sub_solve, ctx, id);
      auto pb = std::find(r.begin(), r.end(), bi);
      TUTTEPATH_CHECK(pb + 1 != r.end() && *(pb + 1) == x, "J_i path must use b_i x");
      piece_path[i].assign(r.begin(), pb + 1);
      replace[own->id] = std::vector<Vertex>(pb + 1, r.end());
      record("piece-marker", pc.vertices, markers_in(pc.comp), child, 4);
      continue;
    }

    // the block of J_i - {x, y} through a_iCb_i.
    if (pc.a == pc.b) {
      piece_path[i] = {ai};
      record("piece-block", pc.vertices, markers_in(pc.comp), -1, 4);
      continue;
    }
    VertexSet jv = pc.vertices;
    jv.erase(x);
    jv.erase(y);
    const RotationEmbedding jmx = G.restricted(jv, induced_edges(jemb, jv));
    const Block* jb = nullptr;
    const auto jbd = blocks(jmx);
    for (const auto& b : jbd.blocks) {
      bool all = true;
      for (std::size_t k = pc.a; k < pc.b; ++k) all = all && b.edges.count(Edge(ecv[k], ecv[k + 1]));
      if (all) {
        jb = &b;
        break;
      }
    }
    TUTTEPATH_CHECK(jb != nullptr, "a_iCb_i is not inside one block of J_i - {x,y}");
    if (jb->vertices.size() == 2) {
      piece_path[i] = {ai, bi};
      record("piece-block", pc.vertices, markers_in(pc.comp), -1, 4);
      continue;
    }
    RotationEmbedding jp = G.restricted(jb->vertices, jb->edges);
    jp.set_outer_dart({ai, ecv[pc.a + 1]});
    const CircuitGraph jpc = CircuitGraph::from_embedding(jp);
    const auto back = cycle_arc(jpc, bi, ai);  // b_iC_ia_i
    std::size_t kx = 1, ky = back.size() - 2;
    for (std::size_t k = 0; k < back.size(); ++k) {
      if (G.has_edge(back[k], x)) kx = std::max(kx, k);
      if (G.has_edge(back[k], y)) ky = std::min(ky, k);
    }
    TUTTEPATH_CHECK(kx <= ky, "no split vertex z on b_iC_ia_i");
    const std::size_t kz = kx;
    const Vertex z = back[kz];
    std::vector<Vertex> pi;
    if (is_good(jpc, at(bi), at(ai))) {
      std::vector<Edge> cands{Edge(back[kz - 1], z), Edge(z, back[kz + 1])};
      const Edge ei = pick_edge(
          cands,
          [&](Edge c) {
            return tau(jpc, along(c), at(ai)) <= Third::of(1) || tau(jpc, at(bi), along(c)) <= Third::of(1);
          },
          [&](Edge c) { return tau(jpc, along(c), at(ai)) + tau(jpc, at(bi), along(c)); });
      pi = sub_solve(jpc, bi, ai, ei);
    } else {
      // Minimal (M1, M2) with cut on b_iC_ia_i, preferring M2 through z.
      struct Split {
        std::size_t s, t;
        VertexSet inner;
      };
      std::vector<Split> splits;
      const auto front = cycle_arc(jpc, ai, bi);
      const VertexSet front_arc(front.begin(), front.end());
      for (std::size_t s = 0; s < back.size(); ++s)
        for (std::size_t t = s + 2; t < back.size(); ++t) {
          if (!is_two_cut(jp, back[s], back[t])) continue;
          VertexSet inner = component_of(jp, {back[s], back[t]}, back[s + 1]);
          bool clean = true;
          for (Vertex c : front_arc)
            if (inner.count(c)) clean = false;
          if (clean) splits.push_back({s, t, std::move(inner)});
        }
      if (splits.empty()) {
        // Only the one-edge side a_ib_i witnesses the defect: the whole block
        // plays the second side, entered through an edge at z.
        TUTTEPATH_CHECK(front.size() == 2, "b_iC_ia_i not good but no split found");
        ctx.note(id, "piece-block: a_ib_i is the only split; whole block solved");
        const Edge fz = pick_edge(
            arc_edges(back),
            [&](Edge c) {
              return c.has(z) && (tau(jpc, at(bi), along(c)) <= Third::of(1) ||
                                  tau(jpc, along(c), at(ai)) <= Third::of(1));
            },
            [&](Edge c) {
              return tau(jpc, at(bi), along(c)) + tau(jpc, along(c), at(ai)) + Third::of(c.has(z) ? 0 : 3);
            });
        pi = sub_solve(jpc, bi, ai, fz);
        std::reverse(pi.begin(), pi.end());
        piece_path[i] = pi;
        record("piece-block", pc.vertices, markers_in(pc.comp), child, 4);
        continue;
      }
      const Split* best = nullptr;
      for (int pass = 0; pass < 2 && best == nullptr; ++pass)
        for (const auto& sp : splits) {
          if (pass == 0 && !(sp.s <= kz && kz <= sp.t)) continue;
          if (best == nullptr || sp.inner.size() < best->inner.size()) best = &sp;
        }
      const Vertex z1 = back[best->s], z2 = back[best->t];
      VertexSet m1v, m2v = best->inner;
      m2v.insert({z1, z2});
      for (Vertex c : jp.vertices())
        if (!best->inner.count(c)) m1v.insert(c);
      EdgeSet m2e = induced_edges(jp, m2v);
      m2e.erase(Edge(z1, z2));
      const CircuitGraph m1 = close_piece("piece-block", jp.restricted(m1v, induced_edges(jp, m1v)), cycle_arc(jpc, z2, z1));
      const CircuitGraph m2 = close_piece("piece-block", jp.restricted(m2v, m2e), cycle_arc(jpc, z1, z2));
      const auto r1 = sub_solve(m1, bi, ai, Edge(z1, z2));
      const Edge fp = pick_edge(
          arc_edges(cycle_arc(m2, z1, z2)),
          [&](Edge c) {
            return tau(m2, at(z1), along(c)) <= Third::of(1) || tau(m2, along(c), at(z2)) <= Third::of(1);
          },
          [&](Edge c) { return tau(m2, at(z1), along(c)) + tau(m2, along(c), at(z2)); });
      const auto r2 = sub_solve(m2, z1, z2, fp);
      pi = splice(r1, z1, z2, r2);
    }
    std::reverse(pi.begin(), pi.end());
    piece_path[i] = pi;
    record("piece-block", pc.vertices, markers_in(pc.comp), child, 4);
  }

  // links along eCv.
  for (std::size_t i = 0; i + 1 < m; ++i) {
    const std::size_t from = classes[i].b, to = classes[i + 1].a;
    std::vector<Vertex> arc(ecv.begin() + static_cast<std::ptrdiff_t>(from),
                            ecv.begin() + static_cast<std::ptrdiff_t>(to + 1));
    if (arc.size() <= 2) {
      TUTTEPATH_CHECK(lv[i].size() == arc.size(), "short link carries a bridge");
      link_path[i] = arc;
      record("link", lv[i], 0, -1, 1);
      continue;
    }
    const CircuitGraph lc = close_piece("link", G.restricted(lv[i], le[i]), arc);
    const Edge ei = pick_edge(
        arc_edges(arc), [&](Edge c) { return tau(lc, at(arc.front()), along(c)) == Third::of(1); },
        [&](Edge c) { return tau(lc, at(arc.front()), along(c)) + tau(lc, along(c), at(arc.back())); });
    link_path[i] = sub_solve(lc, arc.front(), arc.back(), ei);
    record("link", lv[i], 0, child, 1);
  }

  // Markers on P_K without bridges toward eCv: route through the contracted side.
  for (const auto& mk : markers) {
    VertexSet vs = mk.inner;
    vs.insert({mk.s, mk.t});
    if (located_markers.count(mk.id)) continue;
    if (!pk_set.count(mk.id)) {
      record("pocket-off-path", vs, 1, -1, 3);
      continue;
    }
    std::vector<Vertex> arc(top.begin() + static_cast<std::ptrdiff_t>(mk.first),
                            top.begin() + static_cast<std::ptrdiff_t>(mk.last + 1));
    EdgeSet es = mk.edges;
    es.erase(Edge(mk.s, mk.t));
    const CircuitGraph pc = close_piece("pocket", hemb.restricted(vs, es), arc);
    const Edge ep = pick_edge(
        arc_edges(arc),
        [&](Edge c) {
          return tau(pc, at(mk.s), along(c)) + tau(pc, along(c), at(mk.t)) <= Third::of(1);
        },
        [&](Edge c) { return tau(pc, at(mk.s), along(c)) + tau(pc, along(c), at(mk.t)); });
    replace[mk.id] = sub_solve(pc, mk.s, mk.t, ep);
    record("pocket", vs, 1, child, 3);
    ctx.note(id, "pocket marker " + vstr(mk.id) + " routed through its contracted side");
  }

  // (f) assembly.
  std::vector<Vertex> path = pk;
  for (const auto& [t, seg] : replace) path = replace_vertex(path, t, seg);
  for (Vertex x : path) TUTTEPATH_CHECK(!marker_of.count(x), "marker left on the assembled path");
  auto append = [&](const std::vector<Vertex>& seg) {
    TUTTEPATH_CHECK(!seg.empty() && seg.front() == path.back(), "pieces do not chain");
    path.insert(path.end(), seg.begin() + 1, seg.end());
  };
  if (m == 1) {
    ctx.note(id, "single piece: J_1 handled as J_m");
    std::vector<Vertex> head{v1};
    head.insert(head.end(), piece_path[0].begin(), piece_path[0].end());
    append(head);
  } else {
    append(piece_path[0]);
    for (std::size_t i = 0; i + 1 < m; ++i) {
      append(link_path[i]);
      append(piece_path[i + 1]);
    }
  }
  TUTTEPATH_CHECK(path.back() == v, "assembled path does not end at v");
  const auto balance = ctx.at(id).piece_balance();
  if (balance != static_cast<std::int64_t>(g.order()))
    ctx.fail("piece ledger covers " + std::to_string(balance) + " of " + std::to_string(g.order()) +
             " vertices");
  return path;
}

}  // namespace tuttepath::detail
