#pragma once

#include <optional>
#include <vector>

#include "tuttepath/detail/support.hpp"

namespace tuttepath {

/// Largest graph the exhaustive path search accepts.
inline constexpr std::size_t kTutteOracleCap = 11;

struct OraclePath {
  std::vector<Vertex> path;
  std::int64_t beta = 0;
  std::size_t explored = 0;  // u-v paths through e inspected
};

/// Minimum-beta C-Tutte u-v path through e, by enumerating every simple u-v
/// path. Returns nullopt when no such path exists.
inline std::optional<OraclePath> brute_tutte_path(const CircuitGraph& cg, Vertex u, Vertex v, Edge e) {
  const auto& g = cg.embedding();
  if (g.vertex_count() > kTutteOracleCap)
    throw ResourceError("exhaustive path search is capped at " + std::to_string(kTutteOracleCap) + " vertices");
  std::optional<OraclePath> best;
  std::size_t explored = 0;
  std::vector<Vertex> path{u};
  VertexSet on{u};
  auto dfs = [&](auto&& self, Vertex x) -> void {
    if (x == v) {
      if (!detail::path_uses(path, e)) return;
      ++explored;
      const auto a = detail::audit_path(cg, path);
      if (a.c_tutte && (!best || a.beta < best->beta)) best = OraclePath{path, a.beta, 0};
      return;
    }
    for (Vertex y : g.neighbors(x)) {
      if (on.count(y)) continue;
      on.insert(y);
      path.push_back(y);
      self(self, y);
      path.pop_back();
      on.erase(y);
    }
  };
  dfs(dfs, u);
  if (best) best->explored = explored;
  return best;
}

}  // namespace tuttepath
