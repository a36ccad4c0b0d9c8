#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <vector>

#include "tuttepath/embedding.hpp"
#include "tuttepath/errors.hpp"
#include "tuttepath/oracle.hpp"

namespace tuttepath::labkit {

struct OracleCaps {
  std::size_t circumference = 16;
  std::size_t tutte = kTutteOracleCap;
};

struct CycleResult {
  std::vector<Vertex> cycle;  // empty when the graph is a forest
  std::size_t explored = 0;   // DFS nodes visited
};

/// Longest cycle by DFS from each start vertex s over vertices > s, pruned
/// when the path plus every vertex still reachable cannot beat the best.
inline CycleResult brute_longest_cycle(const RotationEmbedding& g, std::size_t cap = OracleCaps{}.circumference) {
  const auto vs = g.vertices();
  if (vs.size() > cap)
    throw ResourceError("exhaustive cycle search is capped at " + std::to_string(cap) + " vertices");
  CycleResult res;
  std::vector<Vertex> path;
  VertexSet on;
  for (Vertex s : vs) {
    path = {s};
    on = {s};
    auto reachable = [&](Vertex from) {
      std::size_t count = 0;
      VertexSet seen{from};
      std::vector<Vertex> stack{from};
      while (!stack.empty()) {
        const Vertex x = stack.back();
        stack.pop_back();
        for (Vertex y : g.neighbors(x))
          if (y > s && !on.count(y) && seen.insert(y).second) {
            ++count;
            stack.push_back(y);
          }
      }
      return count;
    };
    auto dfs = [&](auto&& self, Vertex x) -> void {
      ++res.explored;
      if (res.cycle.size() == vs.size()) return;
      if (path.size() + reachable(x) <= res.cycle.size()) return;
      for (Vertex y : g.neighbors(x)) {
        if (y == s && path.size() >= 3 && path.size() > res.cycle.size()) res.cycle = path;
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
  return res;
}

inline std::size_t brute_circumference(const RotationEmbedding& g, std::size_t cap = OracleCaps{}.circumference) {
  return brute_longest_cycle(g, cap).cycle.size();
}

/// Circumference by trying every vertex subset in every cyclic order. Only
/// meant as a cross-check for graphs with at most 8 vertices.
inline std::size_t permutation_circumference(const RotationEmbedding& g) {
  const auto vs = g.vertices();
  if (vs.size() > 8) throw ResourceError("permutation oracle is capped at 8 vertices");
  const std::size_t n = vs.size();
  std::size_t best = 0;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    std::vector<Vertex> sub;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (1u << i)) sub.push_back(vs[i]);
    if (sub.size() < 3 || sub.size() <= best) continue;
    // Fix the first vertex; permute the rest.
    do {
      bool ok = true;
      for (std::size_t i = 0; i < sub.size() && ok; ++i) ok = g.has_edge(sub[i], sub[(i + 1) % sub.size()]);
      if (ok) {
        best = sub.size();
        break;
      }
    } while (std::next_permutation(sub.begin() + 1, sub.end()));
  }
  return best;
}

/// Drops the stacked vertices (ids >= base_order) from a cycle of a
/// stacked-tightness graph. Returns the resulting cycle of the base graph, or
/// nullopt when the reduced sequence is not a cycle there.
inline std::optional<std::vector<Vertex>> contract_stacked(const RotationEmbedding& base, Vertex base_order,
                                                           const std::vector<Vertex>& cycle) {
  std::vector<Vertex> out;
  for (Vertex x : cycle)
    if (x < base_order) out.push_back(x);
  if (out.size() < 3) return std::nullopt;
  VertexSet uniq(out.begin(), out.end());
  if (uniq.size() != out.size()) return std::nullopt;
  for (std::size_t i = 0; i < out.size(); ++i)
    if (!base.has_edge(out[i], out[(i + 1) % out.size()])) return std::nullopt;
  return out;
}

}  // namespace tuttepath::labkit
