#pragma once
// Test-only oracles and corpus helpers. Nothing here calls the solver's own
// goodness, tau or bridge code, so agreement with the library is meaningful.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <filesystem>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "tuttepath/circuit.hpp"
#include "tuttepath/labkit/generators.hpp"
#include "tuttepath/labkit/io.hpp"

namespace testkit {

using tuttepath::CircuitGraph;
using tuttepath::Edge;
using tuttepath::RotationEmbedding;
using tuttepath::Vertex;

/// One 2-separation (G1, G2) given by the G2 side.
struct Separation2 {
  Vertex s, t;
  std::uint64_t g2_edges;   // bit i = edge i of the edge list
  std::uint64_t g2_verts;   // bit i = vertex index i
};

/// All 2-separations by literal enumeration of edge bipartitions. A side may
/// carry s and t as isolated vertices. Only for small graphs.
class NaiveSeparations {
 public:
  explicit NaiveSeparations(const RotationEmbedding& g) : verts_(g.vertices()), edges_(g.edges()) {
    for (std::size_t i = 0; i < verts_.size(); ++i) index_[verts_[i]] = static_cast<int>(i);
    const std::size_t m = edges_.size();
    if (m > 22 || verts_.size() > 60) throw std::runtime_error("graph too large for edge bipartition enumeration");
    const std::uint64_t all_v = (std::uint64_t{1} << verts_.size()) - 1;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
      std::uint64_t v1 = 0, v2 = 0;
      for (std::size_t i = 0; i < m; ++i) {
        const std::uint64_t ends = bit(edges_[i].a) | bit(edges_[i].b);
        ((mask >> i) & 1 ? v2 : v1) |= ends;
      }
      const std::uint64_t common = v1 & v2;
      if (std::popcount(common) > 2) continue;
      for (std::size_t a = 0; a < verts_.size(); ++a)
        for (std::size_t b = a + 1; b < verts_.size(); ++b) {
          const std::uint64_t st = bit(verts_[a]) | bit(verts_[b]);
          if ((common & ~st) != 0) continue;
          const std::uint64_t w1 = v1 | st, w2 = v2 | st;
          if ((w1 & w2) != st || (w1 | w2) != all_v) continue;
          // G_i must not be contained in G_{3-i}.
          if (mask == 0 && w2 == st) continue;
          if (mask == (std::uint64_t{1} << m) - 1 && w1 == st) continue;
          seps_.push_back({verts_[a], verts_[b], mask, w2});
        }
    }
  }

  std::uint64_t bit(Vertex v) const { return std::uint64_t{1} << index_.at(v); }
  int edge_index(Edge e) const {
    for (std::size_t i = 0; i < edges_.size(); ++i)
      if (edges_[i] == e) return static_cast<int>(i);
    return -1;
  }
  const std::vector<Separation2>& all() const { return seps_; }

 private:
  std::vector<Vertex> verts_;
  std::vector<Edge> edges_;
  std::map<Vertex, int> index_;
  std::vector<Separation2> seps_;
};

/// An arc end: a vertex of C, or an edge of C given by its clockwise tail.
struct NaiveEnd {
  bool edge = false;
  Vertex x = 0;   // the vertex, or the clockwise tail of the edge
  Vertex y = 0;   // clockwise head when edge
};

inline NaiveEnd vertex_end(Vertex v) { return {false, v, v}; }

inline NaiveEnd edge_end(const CircuitGraph& cg, Edge e) {
  const auto& c = cg.outer_cycle();
  for (std::size_t i = 0; i < c.size(); ++i) {
    const Vertex a = c[i], b = c[(i + 1) % c.size()];
    if (Edge(a, b) == e) return {true, a, b};
  }
  throw std::runtime_error("edge not on the outer cycle");
}

/// Vertices of xCy in clockwise order; an edge end is excluded from the arc's
/// edges, so the arc starts at its head and ends at its tail.
inline std::vector<Vertex> naive_arc(const CircuitGraph& cg, NaiveEnd x, NaiveEnd y) {
  const auto& c = cg.outer_cycle();
  const Vertex first = x.edge ? x.y : x.x;
  const Vertex last = y.x;
  std::size_t i = std::find(c.begin(), c.end(), first) - c.begin();
  std::vector<Vertex> out;
  while (true) {
    out.push_back(c[i]);
    if (c[i] == last) break;
    i = (i + 1) % c.size();
  }
  return out;
}

/// Literal check of the goodness definition against every 2-separation.
inline bool naive_good(const CircuitGraph& cg, const NaiveSeparations& seps, NaiveEnd x, NaiveEnd y) {
  const auto arc = naive_arc(cg, x, y);
  std::map<Vertex, std::size_t> pos;
  for (std::size_t i = 0; i < arc.size(); ++i) pos[arc[i]] = i;
  for (const auto& sp : seps.all()) {
    for (int flip = 0; flip < 2; ++flip) {
      const Vertex s = flip ? sp.t : sp.s, t = flip ? sp.s : sp.t;
      if (!pos.count(s) || !pos.count(t) || pos[s] >= pos[t]) continue;
      bool inside = true;
      for (std::size_t i = pos[s]; i < pos[t] && inside; ++i) {
        const int ei = seps.edge_index(Edge(arc[i], arc[i + 1]));
        inside = ((sp.g2_edges >> ei) & 1) && (sp.g2_verts & seps.bit(arc[i + 1]));
      }
      if (inside && std::popcount(sp.g2_verts) >= 3) return false;
    }
  }
  return true;
}

/// Tau in thirds from the displayed case table, using the naive goodness.
inline int naive_tau(const CircuitGraph& cg, const NaiveSeparations& seps, NaiveEnd x, NaiveEnd y) {
  if (!naive_good(cg, seps, x, y)) return 2;
  if (x.edge != y.edge) {
    const NaiveEnd e = x.edge ? x : y;
    const Vertex w = x.edge ? y.x : x.x;
    if (e.x == w || e.y == w) return 2;
    if (naive_arc(cg, x, y).size() == 2) return 1;
  }
  return 0;
}

struct QueryTriple {
  Vertex u, v;
  Edge e;
};

/// Every (u, v, e) with u != v on C and e on the clockwise arc uCv.
inline std::vector<QueryTriple> all_queries(const CircuitGraph& cg) {
  std::vector<QueryTriple> out;
  const auto& c = cg.outer_cycle();
  const std::size_t k = c.size();
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t d = 1; d < k; ++d) {
      const std::size_t j = (i + d) % k;
      for (std::size_t s = 0; s < d; ++s)
        out.push_back({c[i], c[j], Edge(c[(i + s) % k], c[(i + s + 1) % k])});
    }
  return out;
}

/// A deterministic sample of at most `limit` queries.
inline std::vector<QueryTriple> sampled_queries(const CircuitGraph& cg, std::size_t limit, std::uint32_t seed) {
  auto all = all_queries(cg);
  if (all.size() <= limit) return all;
  std::mt19937 rng(seed);
  std::shuffle(all.begin(), all.end(), rng);
  all.resize(limit);
  return all;
}

/// C5 drawn on a circle, vertices 0..4 clockwise, plus the chord 1-3.
inline RotationEmbedding c5_with_chord() {
  std::vector<tuttepath::labkit::Point> pts;
  std::vector<std::pair<Vertex, Vertex>> es;
  for (int i = 0; i < 5; ++i) {
    pts.push_back(tuttepath::labkit::on_circle(10, 90 - 72.0 * i));
    es.emplace_back(i, (i + 1) % 5);
  }
  es.emplace_back(1, 3);
  return tuttepath::labkit::from_drawing(pts, es);
}

/// An arc end for the frozen table: a vertex, or an outer edge.
struct TableEnd {
  bool edge;
  Edge e;  // e.a is the vertex when !edge
};

struct DerivedArc {
  const char* graph;
  TableEnd from, to;
  int expected_thirds;  // produced by naive_tau and frozen
};

inline std::map<std::string, RotationEmbedding> derived_arc_graphs() {
  namespace lk = tuttepath::labkit;
  return {{"c5chord", c5_with_chord()},
          {"glued", lk::glued_squares()},
          {"wheel5", lk::wheel(5)},
          {"ladder3", lk::ladder(3)},
          {"rc8s4", lk::random_circuit(8, 4).embedding()}};
}

inline std::vector<DerivedArc> derived_arcs() {
  auto V = [](Vertex x) { return TableEnd{false, Edge(x, x)}; };
  auto E = [](Vertex a, Vertex b) { return TableEnd{true, Edge(a, b)}; };
  return {
      {"c5chord", V(0), V(3), 2},    {"c5chord", V(0), E(1, 2), 1}, {"c5chord", E(0, 4), V(2), 0},
      {"c5chord", V(0), E(3, 4), 2}, {"glued", V(0), V(5), 2},      {"glued", V(0), E(2, 5), 0},
      {"glued", E(0, 3), V(1), 1},   {"glued", E(0, 3), V(5), 2},   {"wheel5", V(1), V(5), 2},
      {"wheel5", V(1), E(3, 4), 0},  {"wheel5", V(1), E(2, 3), 1},  {"wheel5", E(1, 5), V(3), 0},
      {"ladder3", V(0), V(7), 2},    {"ladder3", V(0), E(1, 2), 1}, {"ladder3", E(0, 4), V(2), 0},
      {"ladder3", V(0), E(6, 7), 2}, {"rc8s4", V(5), V(4), 2},      {"rc8s4", V(5), E(2, 7), 1},
      {"rc8s4", E(4, 5), V(2), 0},   {"rc8s4", E(5, 7), V(4), 2},
  };
}

inline tuttepath::ArcEndpoint library_end(const TableEnd& t) {
  return t.edge ? tuttepath::ArcEndpoint::along(t.e) : tuttepath::ArcEndpoint::at(t.e.a);
}

inline NaiveEnd naive_end(const CircuitGraph& cg, const TableEnd& t) {
  return t.edge ? edge_end(cg, t.e) : vertex_end(t.e.a);
}

struct CorpusItem {
  std::string name;
  tuttepath::labkit::InstanceFile file;
};

inline std::vector<CorpusItem> load_corpus(const std::string& dir = std::string(TUTTEPATH_CORPUS_DIR) + "/instances") {
  std::vector<std::filesystem::path> paths;
  for (const auto& ent : std::filesystem::directory_iterator(dir))
    if (ent.path().extension() == ".json") paths.push_back(ent.path());
  std::sort(paths.begin(), paths.end());
  std::vector<CorpusItem> out;
  for (const auto& p : paths)
    out.push_back({p.stem().string(), tuttepath::labkit::parse_instance(tuttepath::labkit::read_json_file(p.string()))});
  return out;
}

}  // namespace testkit
