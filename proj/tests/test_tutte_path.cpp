#include <catch_amalgamated.hpp>

#include <cstdlib>
#include <fstream>

#include "support.hpp"
#include "tuttepath/labkit/generators.hpp"
#include "tuttepath/labkit/verify.hpp"
#include "tuttepath/oracle.hpp"
#include "tuttepath/tutte_path.hpp"

using namespace tuttepath;

namespace {

CircuitGraph circuit(const RotationEmbedding& g) { return CircuitGraph::from_embedding(g); }

bool has_note(const TuttePathCertificate& c, const std::string& key) {
  for (const auto& en : c.trace)
    for (const auto& n : en.notes)
      if (n.find(key) != std::string::npos) return true;
  return false;
}

void require_sound(const CircuitGraph& cg, const TuttePathCertificate& c) {
  const auto v = labkit::verify_certificate(cg, c);
  for (const auto& ch : v.checks) {
    INFO(ch.clause << ": " << ch.detail);
    CHECK(ch.ok);
  }
}

}  // namespace

TEST_CASE("base cases", "[tutte]") {
  const auto tri = circuit(labkit::triangle());  // outer 0 1 2
  SECTION("e = uv gives the single edge") {
    const auto c = tutte_path(tri, 0, 1, Edge(0, 1));
    CHECK(c.path == std::vector<Vertex>{0, 1});
    CHECK(c.beta == 1);
    CHECK(c.bound == Third::whole(1));
    CHECK(c.trace.front().rule == "base");
  }
  SECTION("three vertices, e not at u") {
    const auto c = tutte_path(tri, 0, 2, Edge(1, 2));
    CHECK(c.path == std::vector<Vertex>{0, 1, 2});
    CHECK(c.beta == 0);
    CHECK(c.bound == Third::of(0));
  }
}

TEST_CASE("malformed queries are input errors", "[tutte]") {
  const auto cg = circuit(labkit::wheel(5));  // outer 1..5, hub 0
  CHECK_THROWS_AS(tutte_path(cg, 1, 1, Edge(1, 2)), InputError);
  CHECK_THROWS_AS(tutte_path(cg, 0, 3, Edge(1, 2)), InputError);
  CHECK_THROWS_AS(tutte_path(cg, 1, 3, Edge(3, 4)), InputError);
  CHECK_THROWS_AS(tutte_path(cg, 1, 3, Edge(0, 1)), InputError);
}

TEST_CASE("every query on small reference graphs is certified", "[tutte]") {
  std::vector<std::pair<std::string, RotationEmbedding>> graphs{
      {"triangle", labkit::triangle()},         {"c5", labkit::cycle_graph(5)},
      {"k4", labkit::k4()},                     {"wheel5", labkit::wheel(5)},
      {"octahedron", labkit::octahedron()},     {"glued_squares", labkit::glued_squares()},
      {"ladder4", labkit::ladder(4)},           {"double_wheel5", labkit::double_wheel(5)},
      {"glued_wheels", labkit::glued_wheels(4, 5)}};
  for (const auto& [name, g] : graphs) {
    const auto cg = circuit(g);
    for (const auto& q : testkit::all_queries(cg)) {
      INFO(name << " u=" << q.u << " v=" << q.v << " e=" << q.e.a << "-" << q.e.b);
      const auto c = tutte_path(cg, q.u, q.v, q.e);
      require_sound(cg, c);
    }
  }
}

TEST_CASE("solver stays between the exhaustive minimum and the bound", "[tutte][oracle]") {
  for (std::uint32_t seed = 0; seed < 24; ++seed) {
    const auto cg = labkit::random_circuit(5 + static_cast<int>(seed % 5), seed, seed % 2 ? 0.8 : 0.4);
    for (const auto& q : testkit::sampled_queries(cg, 12, seed)) {
      INFO("seed " << seed << " u=" << q.u << " v=" << q.v << " e=" << q.e.a << "-" << q.e.b);
      const auto c = tutte_path(cg, q.u, q.v, q.e);
      const auto best = brute_tutte_path(cg, q.u, q.v, q.e);
      REQUIRE(best);
      CHECK(best->beta <= c.beta);
      CHECK(within(c.beta, c.bound));
      CHECK(within(best->beta, c.bound));
    }
  }
}

TEST_CASE("W5 exhaustive minima match the golden file", "[tutte][oracle][golden]") {
  const auto cg = circuit(labkit::wheel(5));
  labkit::json rows = labkit::json::array();
  for (const auto& q : testkit::all_queries(cg)) {
    const auto best = brute_tutte_path(cg, q.u, q.v, q.e);
    REQUIRE(best);
    const auto c = tutte_path(cg, q.u, q.v, q.e);
    CHECK(best->beta <= c.beta);
    rows.push_back({{"u", q.u}, {"v", q.v}, {"e", labkit::edge_json(q.e)}, {"min_beta", best->beta}});
  }
  labkit::json doc{{"format", labkit::kFormatVersion}, {"kind", "tutte-oracle-table"}, {"graph", "wheel5"}, {"rows", rows}};
  const std::string path = std::string(TUTTEPATH_CORPUS_DIR) + "/golden/wheel5-oracle.json";
  if (std::getenv("TUTTEPATH_REGEN_GOLDEN")) labkit::write_json_file(path, doc);
  CHECK(labkit::read_json_file(path) == doc);
}

TEST_CASE("mirrored queries are certified too", "[tutte]") {
  for (std::uint32_t seed = 0; seed < 10; ++seed) {
    const auto cg = labkit::random_circuit(7 + static_cast<int>(seed), seed);
    const auto mg = mirror(cg);
    for (const auto& q : testkit::sampled_queries(cg, 6, seed)) {
      INFO("seed " << seed << " u=" << q.u << " v=" << q.v);
      const auto a = tutte_path(cg, q.u, q.v, q.e);
      const auto b = tutte_path(mg, q.v, q.u, q.e);
      require_sound(cg, a);
      require_sound(mg, b);
      CHECK(a.bound == b.bound);
    }
  }
}

TEST_CASE("exhaustive search for small recursive instances", "[tutte][oracle]") {
  SolveOptions opt;
  opt.oracle_below = 6;
  const auto cg = labkit::random_circuit(12, 3);
  for (const auto& q : testkit::sampled_queries(cg, 10, 1)) {
    const auto c = tutte_path(cg, q.u, q.v, q.e, opt);
    require_sound(cg, c);
    for (const auto& en : c.trace)
      if (en.rule == "oracle") CHECK(en.order <= 6);
  }
}

TEST_CASE("exhaustive path search respects its cap", "[tutte][oracle]") {
  const auto cg = circuit(labkit::icosahedron());
  CHECK_THROWS_AS(brute_tutte_path(cg, 0, 1, Edge(0, 2)), ResourceError);
}

TEST_CASE("regression: degenerate split where only a_ib_i separates", "[tutte][regression]") {
  const auto cg = labkit::random_circuit(18, 50, 0.6);
  const auto c = tutte_path(cg, 12, 2, Edge(0, 11));
  CHECK(has_note(c, "piece-block: a_ib_i is the only split"));
  require_sound(cg, c);
}

TEST_CASE("regression: rerouted path that is not Tutte in K", "[tutte][regression]") {
  struct Case {
    int n;
    std::uint32_t seed;
    Vertex u, v;
    Edge e;
  };
  for (const Case& k : {Case{22, 92, 1, 15, Edge(7, 15)}, Case{20, 128, 11, 0, Edge(3, 11)}}) {
    const auto cg = labkit::random_circuit(k.n, k.seed, 0.6);
    const auto c = tutte_path(cg, k.u, k.v, k.e);
    CHECK(has_note(c, "rerouted path is not D-Tutte"));
    require_sound(cg, c);
  }
}

TEST_CASE("random circuit graphs up to 20 vertices", "[tutte][fuzz]") {
  for (std::uint32_t seed = 0; seed < 60; ++seed) {
    const int n = 6 + static_cast<int>(seed % 15);
    const auto cg = labkit::random_circuit(n, seed, seed % 3 == 0 ? 1.0 : 0.6);
    for (const auto& q : testkit::sampled_queries(cg, 8, seed)) {
      INFO("seed " << seed << " n=" << n << " u=" << q.u << " v=" << q.v << " e=" << q.e.a << "-" << q.e.b);
      const auto c = tutte_path(cg, q.u, q.v, q.e);
      REQUIRE(labkit::verify_certificate(cg, c).ok());
    }
  }
}
