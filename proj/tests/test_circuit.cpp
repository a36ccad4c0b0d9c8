#include <catch_amalgamated.hpp>

#include "support.hpp"
#include "tuttepath/circuit.hpp"
#include "tuttepath/labkit/generators.hpp"
#include "tuttepath/labkit/verify.hpp"

using namespace tuttepath;
using testkit::edge_end;
using testkit::vertex_end;

namespace {

CircuitGraph circuit(const RotationEmbedding& g) { return CircuitGraph::from_embedding(g); }

int thirds(Third t) { return static_cast<int>(t.num); }

}  // namespace

TEST_CASE("validate_circuit reports the failing clause", "[circuit]") {
  SECTION("a triangle is a circuit graph") {
    const auto cg = circuit(labkit::triangle());
    CHECK(cg.outer_cycle().size() == 3);
  }
  SECTION("a path is not 2-connected") {
    RotationEmbedding g;
    g.set_rotation(0, {1});
    g.set_rotation(1, {0, 2});
    g.set_rotation(2, {1});
    CHECK(diagnose_circuit(g, {0, 1, 2}).first == CircuitClause::not_two_connected);
  }
  SECTION("the cycle must be the clockwise outer face") {
    const auto w = labkit::wheel(4);
    CHECK(diagnose_circuit(w, {1, 2, 3, 4}).first == CircuitClause::ok);
    CHECK(diagnose_circuit(w, {4, 3, 2, 1}).first == CircuitClause::outer_mismatch);
    CHECK(diagnose_circuit(w, {0, 1, 2}).first == CircuitClause::outer_mismatch);
  }
  SECTION("a 2-cut component off the outer cycle is rejected") {
    // C4 with an inner vertex 4 joined to the opposite corners 0 and 2.
    RotationEmbedding g = labkit::from_drawing({{0, 10}, {10, 0}, {0, -10}, {-10, 0}, {0, 0}},
                                               {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {4, 0}, {4, 2}});
    CHECK(diagnose_circuit(g, g.outer_walk()).first == CircuitClause::hidden_component);
    CHECK_THROWS_AS(CircuitGraph::from_embedding(g), CircuitError);
  }
}

TEST_CASE("mirror reverses the clockwise outer order", "[circuit]") {
  const auto cg = circuit(labkit::wheel(5));
  const auto m = mirror(cg);
  REQUIRE(m.outer_cycle().size() == 5);
  CHECK(m.outer_cycle().front() == cg.outer_cycle().front());
  for (std::size_t i = 0; i < 5; ++i) CHECK(m.next_on_cycle(cg.outer_cycle()[i]) == cg.prev_on_cycle(cg.outer_cycle()[i]));
}

TEST_CASE("subpath runs clockwise and excludes edge ends", "[circuit]") {
  const auto cg = circuit(labkit::cycle_graph(6));  // outer 0..5
  CHECK(subpath(cg, ArcEndpoint::at(4), ArcEndpoint::at(1)).vertices == std::vector<Vertex>{4, 5, 0, 1});
  CHECK(subpath(cg, ArcEndpoint::along(Edge(0, 1)), ArcEndpoint::at(3)).vertices == std::vector<Vertex>{1, 2, 3});
  CHECK(subpath(cg, ArcEndpoint::at(2), ArcEndpoint::along(Edge(4, 5))).vertices == std::vector<Vertex>{2, 3, 4});
  CHECK_THROWS_AS(subpath(cg, ArcEndpoint::at(2), ArcEndpoint::at(2)), InputError);
}

TEST_CASE("tau for the base-case queries", "[circuit][tau]") {
  const auto cg = circuit(labkit::triangle());  // outer 0 1 2
  SECTION("e = uv") {
    const Vertex u = 0, v = 1;
    const Edge e(0, 1);
    CHECK(thirds(tau(cg, ArcEndpoint::at(v), ArcEndpoint::at(u))) == 2);
    CHECK(thirds(tau(cg, ArcEndpoint::at(u), ArcEndpoint::along(e))) == 2);
    CHECK(thirds(tau(cg, ArcEndpoint::along(e), ArcEndpoint::at(v))) == 2);
  }
  SECTION("three vertices, u not incident with e") {
    const Vertex u = 0, v = 2;
    const Edge e(1, 2);
    CHECK(thirds(tau(cg, ArcEndpoint::at(v), ArcEndpoint::at(u))) == 0);
    CHECK(thirds(tau(cg, ArcEndpoint::at(u), ArcEndpoint::along(e))) == 1);
    CHECK(thirds(tau(cg, ArcEndpoint::along(e), ArcEndpoint::at(v))) == 2);
    CHECK(path_bound(cg, u, v, e) == Third::of(0));
  }
  SECTION("C4 with e the middle edge of uCv") {
    const auto c4 = circuit(labkit::cycle_graph(4));
    const Vertex u = 0, v = 3;
    const Edge e(1, 2);
    CHECK(thirds(tau(c4, ArcEndpoint::at(v), ArcEndpoint::at(u))) == 0);
    CHECK(thirds(tau(c4, ArcEndpoint::at(u), ArcEndpoint::along(e))) == 1);
    CHECK(thirds(tau(c4, ArcEndpoint::along(e), ArcEndpoint::at(v))) == 1);
  }
}

TEST_CASE("goodness examples", "[circuit][good]") {
  const auto tri = circuit(labkit::triangle());
  CHECK_FALSE(is_good(tri, ArcEndpoint::at(1), ArcEndpoint::at(0)));
  const auto c4 = circuit(labkit::cycle_graph(4));
  CHECK(is_good(c4, ArcEndpoint::at(3), ArcEndpoint::at(0)));
  const auto c5 = circuit(testkit::c5_with_chord());
  CHECK_FALSE(is_good(c5, ArcEndpoint::at(0), ArcEndpoint::at(3)));
  CHECK_FALSE(is_good(c5, ArcEndpoint::at(3), ArcEndpoint::at(1)));  // agrees with the naive definition
}

TEST_CASE("derived arcs agree with the literal goodness definition", "[circuit][tau]") {
  const auto graphs = testkit::derived_arc_graphs();
  std::map<std::string, testkit::NaiveSeparations> seps;
  for (const auto& [name, g] : graphs) seps.emplace(name, testkit::NaiveSeparations(g));
  const auto rows = testkit::derived_arcs();
  REQUIRE(rows.size() == 20);
  for (const auto& r : rows) {
    const auto cg = circuit(graphs.at(r.graph));
    const auto x = testkit::library_end(r.from), y = testkit::library_end(r.to);
    INFO(r.graph << " " << x.str() << " -> " << y.str());
    CHECK(testkit::naive_tau(cg, seps.at(r.graph), testkit::naive_end(cg, r.from), testkit::naive_end(cg, r.to)) ==
          r.expected_thirds);
    CHECK(thirds(tau(cg, x, y)) == r.expected_thirds);
    CHECK(thirds(labkit::verify_tau(cg, x, y)) == r.expected_thirds);
  }
}

TEST_CASE("goodness and tau agree with the naive definition on small circuit graphs", "[circuit][property]") {
  std::size_t arcs = 0;
  for (std::uint32_t seed = 0; seed < 40; ++seed) {
    const int n = 4 + static_cast<int>(seed % 7);  // 4..10 vertices
    const auto cg = labkit::random_circuit(n, seed, seed % 2 ? 0.35 : 0.15);
    const auto& g = cg.embedding();
    if (g.edge_count() > 18) continue;
    const testkit::NaiveSeparations seps(g);
    const auto& c = cg.outer_cycle();
    const std::size_t k = c.size();
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) {
        if (i == j) continue;
        std::vector<std::pair<ArcEndpoint, ArcEndpoint>> ends{{ArcEndpoint::at(c[i]), ArcEndpoint::at(c[j])}};
        const Edge out(c[j], c[(j + 1) % k]);
        if (c[(j + 1) % k] != c[i]) ends.push_back({ArcEndpoint::at(c[i]), ArcEndpoint::along(out)});
        const Edge in(c[(i + k - 1) % k], c[i]);
        if (c[(i + k - 1) % k] != c[j]) ends.push_back({ArcEndpoint::along(in), ArcEndpoint::at(c[j])});
        for (const auto& [x, y] : ends) {
          const auto nx = x.is_edge() ? edge_end(cg, x.e) : vertex_end(x.v);
          const auto ny = y.is_edge() ? edge_end(cg, y.e) : vertex_end(y.v);
          const bool good = is_good(cg, x, y);
          const Third t = tau(cg, x, y);
          INFO("seed " << seed << " arc " << x.str() << " -> " << y.str());
          CHECK(good == testkit::naive_good(cg, seps, nx, ny));
          CHECK(thirds(t) == testkit::naive_tau(cg, seps, nx, ny));
          CHECK((t.num >= 0 && t.num <= 2));
          if (!good) CHECK(t.num == 2);
          ++arcs;
        }
      }
  }
  CHECK(arcs > 500);
}

TEST_CASE("both ends being edges is rejected", "[circuit][tau]") {
  const auto cg = circuit(labkit::cycle_graph(5));
  CHECK_THROWS_AS(tau(cg, ArcEndpoint::along(Edge(0, 1)), ArcEndpoint::along(Edge(2, 3))), InputError);
}

TEST_CASE("add_virtual_edge closes one side of a 2-cut", "[circuit]") {
  SECTION("C4 split at opposite corners gives a triangle") {
    const auto c4 = circuit(labkit::cycle_graph(4));
    const auto side = add_virtual_edge(c4, 0, 2);
    CHECK(side.order() == 3);
    CHECK(side.embedding().edge_count() == 3);
    CHECK(side.embedding().has_edge(0, 2));
  }
  SECTION("an existing edge is reused, not duplicated") {
    const auto gs = circuit(labkit::glued_squares());  // outer 0 1 2 5 4 3, rungs 0-3 1-4 2-5
    const auto right = add_virtual_edge(gs, 1, 4);
    const auto left = add_virtual_edge(gs, 4, 1);
    CHECK(right.order() == 4);
    CHECK(left.order() == 4);
    CHECK(right.embedding().edge_count() == 4);
    CHECK(left.embedding().edge_count() == 4);
    CHECK(diagnose_circuit(right.embedding(), right.outer_cycle()).first == CircuitClause::ok);
    CHECK(diagnose_circuit(left.embedding(), left.outer_cycle()).first == CircuitClause::ok);
  }
  SECTION("an arc without inner vertex is rejected") {
    const auto c4 = circuit(labkit::cycle_graph(4));
    CHECK_THROWS_AS(add_virtual_edge(c4, 0, 1), InputError);
  }
}
