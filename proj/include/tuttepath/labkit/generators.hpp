#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "tuttepath/circuit.hpp"
#include "tuttepath/embedding.hpp"
#include "tuttepath/structure.hpp"

namespace tuttepath::labkit {

struct Point {
  double x = 0, y = 0;
};

/// Straight-line drawing to rotation system. Neighbours are sorted clockwise
/// by angle; the clockwise-traced face (negative area) becomes the outer face.
inline RotationEmbedding from_drawing(const std::vector<Point>& pts, const std::vector<std::pair<Vertex, Vertex>>& edges) {
  std::map<Vertex, std::vector<Vertex>> nb;
  for (Vertex v = 0; v < static_cast<Vertex>(pts.size()); ++v) nb[v];
  for (auto [a, b] : edges) {
    nb[a].push_back(b);
    nb[b].push_back(a);
  }
  RotationEmbedding emb;
  for (auto& [v, r] : nb) {
    const Point p = pts[static_cast<std::size_t>(v)];
    std::sort(r.begin(), r.end(), [&](Vertex a, Vertex b) {
      const Point pa = pts[static_cast<std::size_t>(a)], pb = pts[static_cast<std::size_t>(b)];
      return std::atan2(pa.y - p.y, pa.x - p.x) > std::atan2(pb.y - p.y, pb.x - p.x);
    });
    emb.set_rotation(v, r);
  }
  for (const auto& f : emb.faces()) {
    double area = 0;
    for (const Dart& d : f) {
      const Point a = pts[static_cast<std::size_t>(d.tail)], b = pts[static_cast<std::size_t>(d.head)];
      area += a.x * b.y - b.x * a.y;
    }
    if (area < 0) {
      emb.set_outer_dart(f.front());
      break;
    }
  }
  emb.validate();
  return emb;
}

inline Point on_circle(double radius, double degrees) {
  const double t = degrees * std::acos(-1.0) / 180.0;
  return {radius * std::cos(t), radius * std::sin(t)};
}

/// Adds vertex x inside the face through d, joined to every vertex of that
/// face. If d is the outer dart, the outer face becomes the triangle through d.
inline void stack_in_face(RotationEmbedding& emb, Dart d, Vertex x) {
  const auto face = emb.face_darts(d);
  std::vector<Vertex> around;
  for (const Dart& f : face) around.push_back(f.tail);
  for (const Dart& f : face) emb.insert_after(f.head, f.tail, x);
  emb.set_rotation(x, std::vector<Vertex>(around.rbegin(), around.rend()));
}

inline RotationEmbedding cycle_graph(int n) {
  std::vector<Point> pts;
  std::vector<std::pair<Vertex, Vertex>> es;
  for (int i = 0; i < n; ++i) {
    pts.push_back(on_circle(10, 90 - 360.0 * i / n));
    es.emplace_back(i, (i + 1) % n);
  }
  return from_drawing(pts, es);
}

inline RotationEmbedding triangle() { return cycle_graph(3); }

/// Hub 0 inside a rim 1..n.
inline RotationEmbedding wheel(int n) {
  std::vector<Point> pts{{0, 0}};
  std::vector<std::pair<Vertex, Vertex>> es;
  for (int i = 0; i < n; ++i) {
    pts.push_back(on_circle(10, 90 - 360.0 * i / n));
    es.emplace_back(0, i + 1);
    es.emplace_back(i + 1, (i + 1) % n + 1);
  }
  return from_drawing(pts, es);
}

inline RotationEmbedding k4() { return wheel(3); }

inline RotationEmbedding octahedron() {
  std::vector<Point> pts{on_circle(10, 90), on_circle(10, 210), on_circle(10, 330),
                         on_circle(3, 270), on_circle(3, 30), on_circle(3, 150)};
  std::vector<std::pair<Vertex, Vertex>> es{{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 3},
                                            {0, 4}, {0, 5}, {1, 3}, {1, 5}, {2, 3}, {2, 4}};
  return from_drawing(pts, es);
}

/// Triangle, hexagon, triangle.
inline RotationEmbedding icosahedron() {
  std::vector<Point> pts;
  for (int i = 0; i < 3; ++i) pts.push_back(on_circle(12, 90 + 120 * i));  // 0..2
  for (int j = 0; j < 6; ++j) pts.push_back(on_circle(5, 30 + 60 * j));    // 3..8
  for (int i = 0; i < 3; ++i) pts.push_back(on_circle(2, 30 + 120 * i));   // 9..11
  auto hex = [](int deg) { return 3 + ((deg - 30 + 360) % 360) / 60; };
  std::vector<std::pair<Vertex, Vertex>> es{{0, 1}, {1, 2}, {2, 0}, {9, 10}, {10, 11}, {11, 9}};
  for (int j = 0; j < 6; ++j) es.emplace_back(3 + j, 3 + (j + 1) % 6);
  for (int i = 0; i < 3; ++i) {
    const int a = 90 + 120 * i;
    for (int off : {-60, 0, 60}) es.emplace_back(i, hex(a + off));
    const int b = 30 + 120 * i;
    for (int off : {-60, 0, 60}) es.emplace_back(9 + i, hex(b + off));
  }
  return from_drawing(pts, es);
}

/// Wheel on n rim vertices plus a second hub in the outer face.
inline RotationEmbedding double_wheel(int n) {
  RotationEmbedding g = wheel(n);
  const Dart d = *g.outer_dart();
  stack_in_face(g, d, n + 1);
  g.set_outer_dart(d);
  return g;
}

/// k unit squares in a row: top row 0..k, bottom row k+1..2k+1.
inline RotationEmbedding ladder(int k) {
  std::vector<Point> pts;
  std::vector<std::pair<Vertex, Vertex>> es;
  for (int i = 0; i <= k; ++i) pts.push_back({10.0 * i, 10});
  for (int i = 0; i <= k; ++i) pts.push_back({10.0 * i, 0});
  for (int i = 0; i <= k; ++i) {
    es.emplace_back(i, k + 1 + i);
    if (i < k) {
      es.emplace_back(i, i + 1);
      es.emplace_back(k + 1 + i, k + 2 + i);
    }
  }
  return from_drawing(pts, es);
}

/// Two squares sharing the edge {1, 4}.
inline RotationEmbedding glued_squares() { return ladder(2); }

/// Two wheels W_a and W_b sharing one rim edge.
inline RotationEmbedding glued_wheels(int a, int b) {
  std::vector<Point> pts{{-3, 0}, {3, 0}};  // hubs
  std::vector<std::pair<Vertex, Vertex>> es;
  const Vertex top = 2, bottom = 3;
  pts.push_back({0, 6});
  pts.push_back({0, -6});
  es.emplace_back(top, bottom);
  auto side = [&](Vertex hub, int rim, double dir) {
    std::vector<Vertex> chain{top};
    for (int i = 1; i + 1 < rim; ++i) {
      const double deg = 90 + dir * 180.0 * i / (rim - 1);
      pts.push_back(on_circle(6, deg));
      chain.push_back(static_cast<Vertex>(pts.size() - 1));
    }
    chain.push_back(bottom);
    for (std::size_t i = 0; i + 1 < chain.size(); ++i) es.emplace_back(chain[i], chain[i + 1]);
    for (Vertex c : chain) es.emplace_back(hub, c);
  };
  side(0, a, 1);
  side(1, b, -1);
  return from_drawing(pts, es);
}

/// Stacks a vertex into every face; the outer face stays a triangle through
/// the previous outer dart.
inline RotationEmbedding stack_all_faces(RotationEmbedding g) {
  const Dart outer = *g.outer_dart();
  Vertex next = g.max_vertex() + 1;
  for (const auto& f : g.faces()) stack_in_face(g, f.front(), next++);
  g.set_outer_dart(outer);
  g.validate();
  return g;
}

/// Iterated triangulation: Tr(0) = K3, Tr(k+1) stacks into every face of Tr(k).
inline RotationEmbedding iterated_triangulation(int k) {
  RotationEmbedding g = triangle();
  for (int i = 0; i < k; ++i) g = stack_all_faces(g);
  return g;
}

/// A 4-connected triangulation on k vertices with a degree-3 vertex stacked
/// into each of its 2k-4 faces: n = 3k - 4.
inline RotationEmbedding stacked_tightness(const RotationEmbedding& base) { return stack_all_faces(base); }

inline RotationEmbedding named(const std::string& name) {
  if (name == "triangle") return triangle();
  if (name == "c4") return cycle_graph(4);
  if (name == "c5") return cycle_graph(5);
  if (name == "k4") return k4();
  if (name == "octahedron") return octahedron();
  if (name == "icosahedron") return icosahedron();
  if (name == "glued_squares") return glued_squares();
  if (name == "stacked_octahedron") return stacked_tightness(octahedron());
  if (name.rfind("wheel", 0) == 0 && name.size() > 5) return wheel(std::stoi(name.substr(5)));
  if (name.rfind("double_wheel", 0) == 0 && name.size() > 12) return double_wheel(std::stoi(name.substr(12)));
  throw InputError("unknown named graph: " + name);
}

inline std::vector<std::string> named_catalog() {
  return {"triangle", "c4",     "c5",           "k4",         "wheel4",        "wheel5",
          "wheel6",   "octahedron", "icosahedron", "double_wheel4", "double_wheel5", "glued_squares",
          "stacked_octahedron"};
}

/// Replaces edge {a, b} of a triangulation by the other diagonal of the
/// quadrilateral it leaves. Returns false, leaving g unchanged, when that
/// diagonal already exists or the edge is on the outer face.
inline bool flip_edge(RotationEmbedding& g, Vertex a, Vertex b) {
  for (const Dart& d : g.outer_face_darts())
    if (Edge(d.tail, d.head) == Edge(a, b)) return false;
  RotationEmbedding h = g;
  const Vertex keep_outer_tail = g.outer_dart()->tail, keep_outer_head = g.outer_dart()->head;
  h.remove_edge(a, b);
  const auto face = h.face_darts({a, g.succ(a, b)});
  if (face.size() != 4) return false;
  std::vector<Dart> ins;
  for (const Dart& d : face)
    if (d.head != a && d.head != b) ins.push_back(d);
  if (ins.size() != 2 || h.has_edge(ins[0].head, ins[1].head)) return false;
  h.insert_after(ins[0].head, ins[0].tail, ins[1].head);
  h.insert_after(ins[1].head, ins[1].tail, ins[0].head);
  h.set_outer_dart({keep_outer_tail, keep_outer_head});
  h.validate();
  g = std::move(h);
  return true;
}

/// Random essentially 4-connected triangulation: a double wheel on k vertices
/// scrambled by flips that keep it 4-connected, then a degree-3 vertex stacked
/// into each face with probability stack. With thin > 0, edges are then
/// dropped (each tried with probability thin) while the result stays
/// 3-connected and essentially 4-connected.
inline RotationEmbedding random_essential(int k, std::uint32_t seed, double stack = 0.5, double thin = 0.0,
                                          const std::function<bool(const RotationEmbedding&)>& keeps = {}) {
  std::mt19937 rng(seed);
  RotationEmbedding g = double_wheel(k - 2);
  for (int round = 0; round < 3 * k; ++round) {
    const auto es = g.edges();
    const Edge e = es[std::uniform_int_distribution<std::size_t>(0, es.size() - 1)(rng)];
    RotationEmbedding h = g;
    if (!flip_edge(h, e.a, e.b)) continue;
    bool four = true;
    for (Vertex v : h.vertices()) four = four && h.degree(v) >= 4;
    // A triangulation is 4-connected iff it has no separating triangle.
    for (const Edge& x : h.edges()) {
      if (!four) break;
      std::size_t common = 0;
      for (Vertex c : h.neighbors(x.a))
        if (h.has_edge(c, x.b)) ++common;
      four = common == 2;
    }
    if (four) g = std::move(h);
  }
  std::bernoulli_distribution coin(stack);
  const Dart outer = *g.outer_dart();
  Vertex next = g.max_vertex() + 1;
  for (const auto& f : g.faces())
    if (coin(rng)) stack_in_face(g, f.front(), next++);
  g.set_outer_dart(outer);
  g.validate();
  if (thin > 0 && keeps) {
    std::bernoulli_distribution drop(thin);
    auto es = g.edges();
    std::shuffle(es.begin(), es.end(), rng);
    for (const Edge& e : es) {
      if (!drop(rng)) continue;
      RotationEmbedding h = g;
      std::optional<Dart> anchor;
      for (const Dart& d : g.outer_face_darts())
        if (Edge(d.tail, d.head) != e) anchor = d;
      h.remove_edge(e.a, e.b);
      h.set_outer_dart(*anchor);
      if (keeps(h)) g = std::move(h);
    }
  }
  return g;
}

/// Random circuit graph: a random stacked triangulation on n vertices with a
/// random outer face, thinned by deleting edges (each tried with probability
/// 1 - keep) whenever the result is still a circuit graph.
inline CircuitGraph random_circuit(int n, std::uint32_t seed, double keep = 0.6) {
  std::mt19937 rng(seed);
  RotationEmbedding g = triangle();
  while (static_cast<int>(g.vertex_count()) < n) {
    const auto fs = g.faces();
    std::uniform_int_distribution<std::size_t> pick(0, fs.size() - 1);
    stack_in_face(g, fs[pick(rng)].front(), g.max_vertex() + 1);
  }
  {
    const auto fs = g.faces();
    std::uniform_int_distribution<std::size_t> pick(0, fs.size() - 1);
    g.set_outer_dart(fs[pick(rng)].front());
  }
  std::bernoulli_distribution drop(1.0 - keep);
  auto es = g.edges();
  std::shuffle(es.begin(), es.end(), rng);
  for (const Edge& e : es) {
    if (!drop(rng)) continue;
    RotationEmbedding h = g;
    std::optional<Dart> anchor;
    for (const Dart& d : g.outer_face_darts())
      if (Edge(d.tail, d.head) != e) {
        anchor = d;
        break;
      }
    h.remove_edge(e.a, e.b);
    h.set_outer_dart(*anchor);
    if (diagnose_circuit(h, h.outer_walk()).first == CircuitClause::ok) g = std::move(h);
  }
  return CircuitGraph::from_embedding(g);
}

}  // namespace tuttepath::labkit
