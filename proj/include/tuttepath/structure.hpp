#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <vector>

#include "tuttepath/embedding.hpp"
#include "tuttepath/errors.hpp"

namespace tuttepath {

/// A subgraph given by explicit vertex and edge sets.
struct Subgraph {
  VertexSet vertices;
  EdgeSet edges;

  bool contains(Vertex v) const { return vertices.count(v) != 0; }
  bool contains(Edge e) const { return edges.count(e) != 0; }
  std::size_t order() const { return vertices.size(); }
};

inline Subgraph path_subgraph(const std::vector<Vertex>& path) {
  Subgraph s;
  for (std::size_t i = 0; i < path.size(); ++i) {
    s.vertices.insert(path[i]);
    if (i + 1 < path.size()) s.edges.emplace(path[i], path[i + 1]);
  }
  return s;
}

inline Subgraph whole_graph(const RotationEmbedding& g) {
  Subgraph s;
  for (Vertex v : g.vertices()) s.vertices.insert(v);
  for (const Edge& e : g.edges()) s.edges.insert(e);
  return s;
}

/// Connected components of g - removed, each sorted; listed by smallest vertex.
inline std::vector<VertexSet> components_without(const RotationEmbedding& g,
                                                 const VertexSet& removed) {
  std::vector<VertexSet> out;
  VertexSet seen = removed;
  for (Vertex v : g.vertices()) {
    if (seen.count(v)) continue;
    VertexSet comp{v};
    seen.insert(v);
    std::vector<Vertex> stack{v};
    while (!stack.empty()) {
      Vertex x = stack.back();
      stack.pop_back();
      for (Vertex y : g.neighbors(x))
        if (seen.insert(y).second) {
          comp.insert(y);
          stack.push_back(y);
        }
    }
    out.push_back(std::move(comp));
  }
  return out;
}

inline bool is_connected(const RotationEmbedding& g) {
  return g.vertex_count() == 0 || components_without(g, {}).size() == 1;
}

/// A maximal 2-connected subgraph, or a K2 bridge block.
struct Block {
  VertexSet vertices;
  EdgeSet edges;
};

struct BlockDecomposition {
  std::vector<Block> blocks;
  VertexSet cut_vertices;
};

/// Block / cut-vertex decomposition (Hopcroft-Tarjan with an edge stack).
/// Blocks are ordered by their smallest edge.
inline BlockDecomposition blocks(const RotationEmbedding& g) {
  BlockDecomposition out;
  std::map<Vertex, int> disc, low;
  std::vector<Edge> stack;
  int timer = 0;

  std::function<void(Vertex, Vertex)> dfs = [&](Vertex v, Vertex parent) {
    disc[v] = low[v] = ++timer;
    int children = 0;
    for (Vertex w : g.neighbors(v)) {
      if (w == parent) continue;
      if (!disc.count(w)) {
        ++children;
        stack.emplace_back(v, w);
        dfs(w, v);
        low[v] = std::min(low[v], low[w]);
        if (low[w] >= disc[v]) {
          if (parent >= 0 || children > 1) out.cut_vertices.insert(v);
          Block b;
          const Edge stop(v, w);
          while (true) {
            Edge e = stack.back();
            stack.pop_back();
            b.edges.insert(e);
            b.vertices.insert(e.a);
            b.vertices.insert(e.b);
            if (e == stop) break;
          }
          out.blocks.push_back(std::move(b));
        }
      } else if (disc[w] < disc[v]) {
        stack.emplace_back(v, w);
        low[v] = std::min(low[v], disc[w]);
      }
    }
  };
  for (Vertex v : g.vertices())
    if (!disc.count(v)) dfs(v, -1);
  // Cut-vertex flag for roots is decided by child count; fix it from blocks.
  std::map<Vertex, int> block_count;
  for (const auto& b : out.blocks)
    for (Vertex v : b.vertices) ++block_count[v];
  out.cut_vertices.clear();
  for (const auto& [v, c] : block_count)
    if (c > 1) out.cut_vertices.insert(v);
  std::sort(out.blocks.begin(), out.blocks.end(),
            [](const Block& a, const Block& b) { return *a.edges.begin() < *b.edges.begin(); });
  return out;
}

inline bool is_biconnected(const RotationEmbedding& g) {
  if (g.vertex_count() < 3) return false;
  if (!is_connected(g)) return false;
  auto d = blocks(g);
  return d.blocks.size() == 1;
}

/// A 2-cut {s,t} together with the components of G - {s,t}.
struct TwoCut {
  Vertex s = 0;
  Vertex t = 0;
  std::vector<VertexSet> components;
  bool adjacent = false;  // st is an edge of G
};

/// A k-separation (G1, G2) spelled out as vertex and edge sets.
struct Separation {
  VertexSet cut;
  VertexSet side1, side2;
  EdgeSet side1_edges, side2_edges;
  int order() const { return static_cast<int>(cut.size()); }
};

/// All pairs {s,t} with G - {s,t} disconnected, lexicographic by (s,t).
/// Brute force over all pairs; intended for desk-scale graphs.
inline std::vector<TwoCut> enumerate_2_separations(const RotationEmbedding& g) {
  std::vector<TwoCut> out;
  if (g.vertex_count() < 4) return out;
  const auto vs = g.vertices();
  for (std::size_t i = 0; i < vs.size(); ++i)
    for (std::size_t j = i + 1; j < vs.size(); ++j) {
      auto comps = components_without(g, {vs[i], vs[j]});
      if (comps.size() < 2) continue;
      out.push_back({vs[i], vs[j], std::move(comps), g.has_edge(vs[i], vs[j])});
    }
  return out;
}

/// Builds the separation whose second side is the union of the listed
/// components of G - cut. Edges inside the cut go to side 1 unless
/// cut_edge_to_side2.
inline Separation make_separation(const RotationEmbedding& g, const VertexSet& cut,
                                  const VertexSet& side2_interior, bool cut_edge_to_side2 = false) {
  Separation s;
  s.cut = cut;
  for (Vertex v : g.vertices()) {
    if (cut.count(v)) {
      s.side1.insert(v);
      s.side2.insert(v);
    } else if (side2_interior.count(v)) {
      s.side2.insert(v);
    } else {
      s.side1.insert(v);
    }
  }
  for (const Edge& e : g.edges()) {
    const bool in_cut = cut.count(e.a) && cut.count(e.b);
    if (in_cut) {
      (cut_edge_to_side2 ? s.side2_edges : s.side1_edges).insert(e);
    } else if (side2_interior.count(e.a) || side2_interior.count(e.b)) {
      s.side2_edges.insert(e);
    } else {
      s.side1_edges.insert(e);
    }
  }
  return s;
}

/// An H-bridge: a chord of H, or a component of G - V(H) with its attaching edges.
struct Bridge {
  VertexSet vertices;
  EdgeSet edges;
  std::vector<Vertex> attachments;  // sorted

  std::size_t size() const { return vertices.size(); }
  bool contains_edge_of(const EdgeSet& f) const {
    for (const Edge& e : edges)
      if (f.count(e)) return true;
    return false;
  }
};

/// All H-bridges of G, ordered by smallest vertex then smallest edge.
inline std::vector<Bridge> bridges_of(const RotationEmbedding& g, const Subgraph& h) {
  for (Vertex v : h.vertices)
    if (!g.has_vertex(v)) throw InputError("subgraph vertex not in graph: " + std::to_string(v));
  for (const Edge& e : h.edges)
    if (!g.has_edge(e) || !h.vertices.count(e.a) || !h.vertices.count(e.b))
      throw InputError("subgraph edge not in graph");

  std::vector<Bridge> out;
  for (const Edge& e : g.edges())
    if (h.vertices.count(e.a) && h.vertices.count(e.b) && !h.edges.count(e)) {
      Bridge b;
      b.vertices = {e.a, e.b};
      b.edges = {e};
      b.attachments = {e.a, e.b};
      out.push_back(std::move(b));
    }
  for (const VertexSet& comp : components_without(g, h.vertices)) {
    Bridge b;
    b.vertices = comp;
    VertexSet att;
    for (Vertex v : comp)
      for (Vertex w : g.neighbors(v)) {
        b.edges.emplace(v, w);
        if (h.vertices.count(w)) {
          att.insert(w);
          b.vertices.insert(w);
        }
      }
    b.attachments.assign(att.begin(), att.end());
    out.push_back(std::move(b));
  }
  std::sort(out.begin(), out.end(), [](const Bridge& a, const Bridge& b) {
    if (*a.vertices.begin() != *b.vertices.begin()) return *a.vertices.begin() < *b.vertices.begin();
    return a.edges < b.edges;
  });
  return out;
}

/// Number of H-bridges with at least three vertices.
inline std::size_t beta(const RotationEmbedding& g, const Subgraph& h) {
  std::size_t n = 0;
  for (const Bridge& b : bridges_of(g, h))
    if (b.size() >= 3) ++n;
  return n;
}

inline bool is_tutte_subgraph(const RotationEmbedding& g, const Subgraph& h) {
  for (const Bridge& b : bridges_of(g, h))
    if (b.attachments.size() > 3) return false;
  return true;
}

/// Tutte, and every H-bridge containing an edge of F has at most two attachments.
inline bool is_f_tutte(const RotationEmbedding& g, const Subgraph& h, const EdgeSet& f) {
  for (const Bridge& b : bridges_of(g, h)) {
    if (b.attachments.size() > 3) return false;
    if (b.attachments.size() > 2 && b.contains_edge_of(f)) return false;
  }
  return true;
}

}  // namespace tuttepath
