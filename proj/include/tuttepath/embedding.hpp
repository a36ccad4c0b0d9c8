#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "tuttepath/errors.hpp"

namespace tuttepath {

using Vertex = int;

/// Undirected edge, stored with a < b.
struct Edge {
  Vertex a = 0;
  Vertex b = 0;

  Edge() = default;
  Edge(Vertex x, Vertex y) : a(std::min(x, y)), b(std::max(x, y)) {}

  bool has(Vertex v) const { return a == v || b == v; }
  Vertex other(Vertex v) const { return v == a ? b : a; }
  auto operator<=>(const Edge&) const = default;
};

/// Directed half-edge tail -> head.
struct Dart {
  Vertex tail = 0;
  Vertex head = 0;
  auto operator<=>(const Dart&) const = default;
  Dart twin() const { return {head, tail}; }
};

using VertexSet = std::set<Vertex>;
using EdgeSet = std::set<Edge>;

/// A plane graph given as a rotation system.
///
/// Each vertex stores its neighbours in clockwise order. Faces are traced
/// with next(u->v) = (v -> succ_v(u)); under this rule the outer face is
/// walked clockwise and inner faces counterclockwise. The outer face is
/// identified by one of its darts.
///
/// Vertex ids are arbitrary non-negative integers; subgraphs keep the ids of
/// the graph they were cut from.
class RotationEmbedding {
 public:
  RotationEmbedding() = default;

  // -- construction -------------------------------------------------------

  void add_vertex(Vertex v) {
    if (v < 0) throw StructuralError("negative vertex id " + std::to_string(v));
    rot_.try_emplace(v);
  }

  /// Replaces the whole rotation of v. Twin consistency is checked by validate().
  void set_rotation(Vertex v, std::vector<Vertex> clockwise) {
    add_vertex(v);
    rot_[v] = std::move(clockwise);
  }

  void set_outer_dart(Dart d) { outer_ = d; }

  // -- queries ------------------------------------------------------------

  bool has_vertex(Vertex v) const { return rot_.count(v) != 0; }
  std::size_t vertex_count() const { return rot_.size(); }
  std::size_t edge_count() const {
    std::size_t s = 0;
    for (const auto& [v, r] : rot_) s += r.size();
    return s / 2;
  }

  std::vector<Vertex> vertices() const {
    std::vector<Vertex> out;
    out.reserve(rot_.size());
    for (const auto& [v, r] : rot_) out.push_back(v);
    return out;
  }

  Vertex max_vertex() const { return rot_.empty() ? -1 : rot_.rbegin()->first; }

  const std::vector<Vertex>& rotation(Vertex v) const {
    auto it = rot_.find(v);
    if (it == rot_.end()) throw StructuralError("unknown vertex " + std::to_string(v));
    return it->second;
  }
  const std::vector<Vertex>& neighbors(Vertex v) const { return rotation(v); }
  std::size_t degree(Vertex v) const { return rotation(v).size(); }

  bool has_edge(Vertex a, Vertex b) const {
    auto it = rot_.find(a);
    if (it == rot_.end()) return false;
    return std::find(it->second.begin(), it->second.end(), b) != it->second.end();
  }
  bool has_edge(Edge e) const { return has_edge(e.a, e.b); }

  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    for (const auto& [v, r] : rot_)
      for (Vertex w : r)
        if (v < w) out.emplace_back(v, w);
    std::sort(out.begin(), out.end());
    return out;
  }

  std::optional<Dart> outer_dart() const { return outer_; }

  /// Clockwise successor of w in the rotation at v.
  Vertex succ(Vertex v, Vertex w) const {
    const auto& r = rotation(v);
    auto i = index_of(r, w, v);
    return r[(i + 1) % r.size()];
  }
  /// Clockwise predecessor of w in the rotation at v.
  Vertex pred(Vertex v, Vertex w) const {
    const auto& r = rotation(v);
    auto i = index_of(r, w, v);
    return r[(i + r.size() - 1) % r.size()];
  }

  Dart next_dart(Dart d) const { return {d.head, succ(d.head, d.tail)}; }

  /// Dart cycle of the face to which d belongs.
  std::vector<Dart> face_darts(Dart d) const {
    if (!has_edge(d.tail, d.head))
      throw StructuralError("dart " + std::to_string(d.tail) + "->" + std::to_string(d.head) +
                            " is not in the embedding");
    std::vector<Dart> out;
    Dart cur = d;
    const std::size_t limit = 2 * edge_count() + 1;
    do {
      out.push_back(cur);
      if (out.size() > limit) throw StructuralError("face tracing does not close");
      cur = next_dart(cur);
    } while (cur != d);
    return out;
  }

  /// Vertex sequence of the face walk starting at d.tail.
  std::vector<Vertex> face_walk(Dart d) const {
    std::vector<Vertex> out;
    for (const Dart& x : face_darts(d)) out.push_back(x.tail);
    return out;
  }

  /// Outer face walk, clockwise.
  std::vector<Vertex> outer_walk() const {
    if (!outer_) throw StructuralError("no outer face designated");
    return face_walk(*outer_);
  }
  std::vector<Dart> outer_face_darts() const {
    if (!outer_) throw StructuralError("no outer face designated");
    return face_darts(*outer_);
  }

  /// Every face as a dart cycle; faces are listed by smallest starting dart.
  std::vector<std::vector<Dart>> faces() const {
    std::set<Dart> seen;
    std::vector<std::vector<Dart>> out;
    for (const auto& [v, r] : rot_)
      for (Vertex w : r) {
        Dart d{v, w};
        if (seen.count(d)) continue;
        auto f = face_darts(d);
        for (const Dart& x : f)
          if (!seen.insert(x).second) throw StructuralError("dart on two faces");
        out.push_back(std::move(f));
      }
    return out;
  }

  std::size_t component_count() const {
    std::set<Vertex> seen;
    std::size_t comps = 0;
    for (const auto& [v, r] : rot_) {
      if (seen.count(v)) continue;
      ++comps;
      std::vector<Vertex> stack{v};
      seen.insert(v);
      while (!stack.empty()) {
        Vertex x = stack.back();
        stack.pop_back();
        for (Vertex y : rot_.at(x))
          if (seen.insert(y).second) stack.push_back(y);
      }
    }
    return comps;
  }

  /// Checks twin pairing, simplicity and Euler's formula. Throws StructuralError.
  void validate() const {
    for (const auto& [v, r] : rot_) {
      std::set<Vertex> uniq(r.begin(), r.end());
      if (uniq.size() != r.size())
        throw StructuralError("parallel edge at vertex " + std::to_string(v));
      for (Vertex w : r) {
        if (w == v) throw StructuralError("loop at vertex " + std::to_string(v));
        auto it = rot_.find(w);
        if (it == rot_.end())
          throw StructuralError("vertex " + std::to_string(v) + " lists unknown neighbour " +
                                std::to_string(w));
        if (std::count(it->second.begin(), it->second.end(), v) != 1)
          throw StructuralError("dart " + std::to_string(v) + "->" + std::to_string(w) +
                                " has no twin");
      }
    }
    const auto f = faces();
    // Isolated vertices contribute one component and no face of their own.
    long isolated = 0;
    for (const auto& [v, r] : rot_)
      if (r.empty()) ++isolated;
    const long comps = static_cast<long>(component_count());
    const long lhs = static_cast<long>(vertex_count()) - static_cast<long>(edge_count()) +
                     static_cast<long>(f.size()) + isolated;
    if (lhs != 2 * comps)
      throw StructuralError("rotation system is not planar (Euler: v-e+f=" +
                            std::to_string(lhs - isolated) + ", components=" +
                            std::to_string(comps) + ")");
    if (outer_ && !has_edge(outer_->tail, outer_->head))
      throw StructuralError("outer dart is not an edge");
  }

  // -- surgery --------------------------------------------------------------

  /// Inserts w into rot(v) directly after `after`.
  void insert_after(Vertex v, Vertex after, Vertex w) {
    auto& r = rot_.at(v);
    auto i = index_of(r, after, v);
    r.insert(r.begin() + static_cast<std::ptrdiff_t>(i + 1), w);
  }
  /// Inserts w into rot(v) directly before `before`.
  void insert_before(Vertex v, Vertex before, Vertex w) {
    auto& r = rot_.at(v);
    auto i = index_of(r, before, v);
    r.insert(r.begin() + static_cast<std::ptrdiff_t>(i), w);
  }

  void remove_edge(Vertex a, Vertex b) {
    auto erase = [&](Vertex x, Vertex y) {
      auto& r = rot_.at(x);
      auto it = std::find(r.begin(), r.end(), y);
      if (it == r.end()) throw StructuralError("no edge to remove");
      r.erase(it);
    };
    erase(a, b);
    erase(b, a);
    if (outer_ && Edge(outer_->tail, outer_->head) == Edge(a, b)) outer_.reset();
  }

  void remove_vertex(Vertex v) {
    const auto nb = rotation(v);
    for (Vertex w : nb) remove_edge(v, w);
    rot_.erase(v);
  }

  /// Keeps the listed vertices and edges, preserving cyclic order. The outer
  /// dart is dropped; callers re-designate it.
  RotationEmbedding restricted(const VertexSet& keep_vertices, const EdgeSet& keep_edges) const {
    RotationEmbedding out;
    for (Vertex v : keep_vertices) {
      std::vector<Vertex> r;
      for (Vertex w : rotation(v))
        if (keep_vertices.count(w) && keep_edges.count(Edge(v, w))) r.push_back(w);
      out.rot_[v] = std::move(r);
    }
    return out;
  }

  /// Mirror image: every rotation reversed. The outer dart is reversed too so
  /// that the outer face stays outer (and is walked clockwise again).
  RotationEmbedding mirrored() const {
    RotationEmbedding out;
    for (const auto& [v, r] : rot_) out.rot_[v] = std::vector<Vertex>(r.rbegin(), r.rend());
    if (outer_) out.outer_ = outer_->twin();
    return out;
  }

  /// Inserts a path s, mid..., t through the outer face so that the new outer
  /// walk reads ... p -> s -> mid... -> t -> q ... . Darts p->s and t->q must
  /// lie on the current outer face. Mid vertices must be fresh.
  void insert_outer_path(Vertex p, Vertex s, const std::vector<Vertex>& mid, Vertex t, Vertex q) {
    const Vertex first = mid.empty() ? t : mid.front();
    const Vertex last = mid.empty() ? s : mid.back();
    if (mid.empty() && has_edge(s, t)) throw StructuralError("edge already present");
    insert_after(s, p, first);
    insert_before(t, q, last);
    for (std::size_t i = 0; i < mid.size(); ++i) {
      Vertex prev = i == 0 ? s : mid[i - 1];
      Vertex next = i + 1 == mid.size() ? t : mid[i + 1];
      if (has_vertex(mid[i])) throw StructuralError("path vertex is not fresh");
      rot_[mid[i]] = {prev, next};
    }
    outer_ = Dart{s, first};
  }

  bool operator==(const RotationEmbedding& o) const { return rot_ == o.rot_; }

 private:
  static std::size_t index_of(const std::vector<Vertex>& r, Vertex w, Vertex v) {
    auto it = std::find(r.begin(), r.end(), w);
    if (it == r.end())
      throw StructuralError("vertex " + std::to_string(w) + " is not a neighbour of " +
                            std::to_string(v));
    return static_cast<std::size_t>(it - r.begin());
  }

  std::map<Vertex, std::vector<Vertex>> rot_;
  std::optional<Dart> outer_;
};

/// Result of trace_faces: every face plus the outer boundary walk.
struct FaceTrace {
  std::vector<std::vector<Dart>> faces;
  std::size_t outer_index = 0;
  std::vector<Vertex> outer_walk;
};

/// Traces all faces of a well-formed embedding and verifies Euler's formula.
inline FaceTrace trace_faces(const RotationEmbedding& emb) {
  emb.validate();
  FaceTrace out;
  out.faces = emb.faces();
  if (auto od = emb.outer_dart()) {
    for (std::size_t i = 0; i < out.faces.size(); ++i)
      if (std::find(out.faces[i].begin(), out.faces[i].end(), *od) != out.faces[i].end())
        out.outer_index = i;
    out.outer_walk = emb.outer_walk();
  }
  return out;
}

}  // namespace tuttepath
