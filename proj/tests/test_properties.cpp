#include <catch_amalgamated.hpp>

#include "support.hpp"
#include "tuttepath/labkit/generators.hpp"
#include "tuttepath/tutte_path.hpp"

using namespace tuttepath;

namespace {

/// Instances whose traces the properties are checked on: every corpus graph
/// that is a circuit graph, plus random circuit graphs.
std::vector<std::pair<std::string, CircuitGraph>> instances() {
  std::vector<std::pair<std::string, CircuitGraph>> out;
  for (const auto& item : testkit::load_corpus()) {
    if (item.file.embedding.vertex_count() > 24) continue;
    out.emplace_back(item.name, CircuitGraph::from_embedding(item.file.embedding));
  }
  for (std::uint32_t s = 0; s < 30; ++s)
    out.emplace_back("random_circuit s" + std::to_string(s),
                     labkit::random_circuit(8 + static_cast<int>(s % 14), 1000 + s, s % 2 ? 1.0 : 0.6));
  return out;
}

struct TraceStats {
  std::size_t entries = 0, decompositions = 0;
};

void check_trace(const TuttePathCertificate& c, TraceStats& stats) {
  for (const auto& en : c.trace) {
    ++stats.entries;
    INFO("entry " << en.id << " rule " << en.rule << " order " << en.order);
    if (en.parent >= 0) {
      REQUIRE(en.parent < en.id);
      CHECK(en.order < c.trace[static_cast<std::size_t>(en.parent)].order);
    }
    CHECK(within(en.beta, en.bound));
    if (en.rule == "decompose-bad-arc" || en.rule == "decompose-good-arc") {
      ++stats.decompositions;
      CHECK(en.piece_balance() == static_cast<std::int64_t>(en.order));
    }
    for (const auto& n : en.notes) CHECK(n.find("single piece") == std::string::npos);
  }
}

}  // namespace

TEST_CASE("solver traces: strictly shrinking recursion and balanced piece ledgers", "[property][ledger]") {
  TraceStats stats;
  for (const auto& [name, cg] : instances()) {
    for (const auto& q : testkit::sampled_queries(cg, 16, 11)) {
      INFO(name << " u=" << q.u << " v=" << q.v << " e=" << q.e.a << "-" << q.e.b);
      const auto c = tutte_path(cg, q.u, q.v, q.e);
      check_trace(c, stats);
    }
  }
  CHECK(stats.decompositions > 50);
}

TEST_CASE("certificate bridges partition the edges off the path", "[property]") {
  for (const auto& [name, cg] : instances()) {
    const auto& g = cg.embedding();
    for (const auto& q : testkit::sampled_queries(cg, 4, 5)) {
      const auto c = tutte_path(cg, q.u, q.v, q.e);
      INFO(name);
      EdgeSet path_edges;
      for (std::size_t i = 0; i + 1 < c.path.size(); ++i) path_edges.insert(Edge(c.path[i], c.path[i + 1]));
      const VertexSet on(c.path.begin(), c.path.end());
      std::map<Edge, int> owner;
      std::int64_t big = 0;
      for (const auto& b : c.bridges) {
        for (const Edge& e : b.edges) ++owner[e];
        big += b.size() >= 3;
        // Attachments are exactly the path vertices the bridge touches.
        VertexSet att;
        for (const Edge& e : b.edges) {
          if (on.count(e.a)) att.insert(e.a);
          if (on.count(e.b)) att.insert(e.b);
        }
        CHECK(std::vector<Vertex>(att.begin(), att.end()) == b.attachments);
      }
      for (const Edge& e : g.edges()) CHECK(owner[e] == (path_edges.count(e) ? 0 : 1));
      CHECK(big == c.beta);
    }
  }
}
