// Acceptance run: prints one PASS/FAIL line per criterion and exits nonzero
// if any criterion fails.

#include <atomic>
#include <chrono>
#include <functional>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include "support.hpp"
#include "tuttepath/circumference.hpp"
#include "tuttepath/labkit/generators.hpp"
#include "tuttepath/labkit/oracles.hpp"
#include "tuttepath/labkit/verify.hpp"
#include "tuttepath/oracle.hpp"
#include "tuttepath/tutte_path.hpp"

using namespace tuttepath;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
  std::vector<std::string> problems;
  void fail(const std::string& why) {
    ok = false;
    if (problems.size() < 5) problems.push_back(why);
  }
};

int report(int number, const std::string& title, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& ex) {
    o.fail(std::string("exception: ") + ex.what());
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::ostringstream line;
  line << (o.ok ? "PASS" : "FAIL") << " criterion " << number << ": " << title;
  if (!o.detail.empty()) line << " (" << o.detail << ")";
  line.precision(1);
  line << std::fixed << " [" << secs << " s]";
  std::cout << line.str() << std::endl;
  for (const auto& p : o.problems) std::cout << "    " << p << std::endl;
  return o.ok ? 0 : 1;
}

std::string qstr(const std::string& name, const testkit::QueryTriple& q) {
  return name + " u=" + std::to_string(q.u) + " v=" + std::to_string(q.v) + " e=" + std::to_string(q.e.a) + "-" +
         std::to_string(q.e.b);
}

/// The sweep set: corpus graphs plus the named catalogue, Tr(k) for k <= 2
/// and the glued families, each as a circuit graph.
std::vector<std::pair<std::string, CircuitGraph>> sweep_graphs() {
  std::vector<std::pair<std::string, CircuitGraph>> out;
  for (const auto& item : testkit::load_corpus()) out.emplace_back(item.name, CircuitGraph::from_embedding(item.file.embedding));
  for (const auto& name : labkit::named_catalog()) out.emplace_back("named " + name, CircuitGraph::from_embedding(labkit::named(name)));
  for (int k = 0; k <= 2; ++k)
    out.emplace_back("tr" + std::to_string(k), CircuitGraph::from_embedding(labkit::iterated_triangulation(k)));
  for (int a = 4; a <= 6; ++a) out.emplace_back("glued_wheels", CircuitGraph::from_embedding(labkit::glued_wheels(a, a + 1)));
  for (int k = 2; k <= 5; ++k) out.emplace_back("ladder" + std::to_string(k), CircuitGraph::from_embedding(labkit::ladder(k)));
  return out;
}

struct Job {
  std::size_t graph;
  testkit::QueryTriple q;
};

struct SweepResult {
  std::size_t queries = 0, exhaustive_graphs = 0, sampled_graphs = 0;
  std::vector<TuttePathCertificate> certificates;  // parallel to jobs
  std::vector<Job> jobs;
};

template <class F>
void parallel_for(std::size_t count, F f) {
  std::atomic<std::size_t> next{0};
  const unsigned workers = std::max(1u, std::thread::hardware_concurrency());
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) f(i);
    });
  for (auto& t : pool) t.join();
}

}  // namespace

int main() {
  int failures = 0;
  const auto graphs = sweep_graphs();

  // Criterion 1 also produces the certificates reused by criteria 4 and 6.
  SweepResult sweep;
  for (std::size_t gi = 0; gi < graphs.size(); ++gi) {
    const auto& cg = graphs[gi].second;
    const bool all = cg.order() <= 8;
    (all ? sweep.exhaustive_graphs : sweep.sampled_graphs)++;
    for (const auto& q : all ? testkit::all_queries(cg) : testkit::sampled_queries(cg, 40, 17 + static_cast<std::uint32_t>(gi)))
      sweep.jobs.push_back({gi, q});
  }

  failures += report(1, "soundness sweep: every certificate verifies and beta is within the recomputed bound", [&] {
    Outcome o;
    sweep.certificates.resize(sweep.jobs.size());
    std::mutex mu;
    parallel_for(sweep.jobs.size(), [&](std::size_t i) {
      const auto& [gi, q] = sweep.jobs[i];
      const auto& [name, cg] = graphs[gi];
      try {
        sweep.certificates[i] = tutte_path(cg, q.u, q.v, q.e);
        const auto v = labkit::verify_certificate(cg, sweep.certificates[i]);
        // Bound recomputed from the verifier's own tau, independent of the solver.
        const std::int64_t bound = static_cast<std::int64_t>(cg.order()) - 6 + labkit::verify_tau(cg, ArcEndpoint::at(q.v), ArcEndpoint::at(q.u)).num +
                                   labkit::verify_tau(cg, ArcEndpoint::at(q.u), ArcEndpoint::along(q.e)).num +
                                   labkit::verify_tau(cg, ArcEndpoint::along(q.e), ArcEndpoint::at(q.v)).num;
        const bool within = 3 * sweep.certificates[i].beta <= bound;
        if (!v.ok() || !within) {
          std::lock_guard lock(mu);
          std::string f;
          for (const auto& c : v.failed()) f += " " + c;
          o.fail(qstr(name, q) + ": failed" + f + (within ? "" : " bound"));
        }
      } catch (const std::exception& ex) {
        std::lock_guard lock(mu);
        o.fail(qstr(name, q) + ": " + ex.what());
      }
    });
    o.detail = std::to_string(sweep.jobs.size()) + " queries on " + std::to_string(graphs.size()) + " graphs, " +
               std::to_string(sweep.exhaustive_graphs) + " exhaustively";
    return o;
  });

  failures += report(2, "long-cycle bound on W5 and the stacked octahedron; circumference of the latter is 12", [] {
    Outcome o;
    const auto w5 = labkit::wheel(5);
    const auto r5 = long_cycle(w5);
    if (r5.length < 6 || !labkit::verify_report(w5, r5).ok()) o.fail("W5 cycle length " + std::to_string(r5.length));
    const auto s14 = labkit::stacked_tightness(labkit::octahedron());
    const auto r14 = long_cycle(s14);
    if (s14.vertex_count() != 14) o.fail("stacked octahedron has " + std::to_string(s14.vertex_count()) + " vertices");
    if (r14.length < 12 || !labkit::verify_report(s14, r14).ok()) o.fail("stacked octahedron cycle length " + std::to_string(r14.length));
    const auto circ = labkit::brute_circumference(s14);
    if (circ != 12) o.fail("brute-force circumference " + std::to_string(circ));
    o.detail = "W5 " + std::to_string(r5.length) + ", stacked octahedron " + std::to_string(r14.length) +
               ", exhaustive circumference " + std::to_string(circ);
    return o;
  });

  failures += report(3, "4-connected branch yields Hamilton cycles with beta = 0", [] {
    Outcome o;
    std::string d;
    for (const auto& [name, g] : {std::pair{std::string("octahedron"), labkit::octahedron()},
                                  std::pair{std::string("icosahedron"), labkit::icosahedron()}}) {
      const auto r = long_cycle(g);
      const bool beta0 = r.sub_certificates.size() == 1 && r.sub_certificates[0].certificate.beta == 0;
      if (r.branch != "4conn" || r.length != g.vertex_count() || !beta0 || !labkit::verify_report(g, r).ok())
        o.fail(name + ": branch " + r.branch + ", length " + std::to_string(r.length));
      d += (d.empty() ? "" : ", ") + name + " " + std::to_string(r.length);
    }
    o.detail = d;
    return o;
  });

  failures += report(4, "oracle minimum <= solver beta <= bound, and oracle minimum <= bound, for n <= 9", [&] {
    Outcome o;
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < sweep.jobs.size(); ++i)
      if (graphs[sweep.jobs[i].graph].second.order() <= 9) idx.push_back(i);
    std::mutex mu;
    std::atomic<std::size_t> strictly_better{0};
    parallel_for(idx.size(), [&](std::size_t k) {
      const std::size_t i = idx[k];
      const auto& [gi, q] = sweep.jobs[i];
      const auto& [name, cg] = graphs[gi];
      const auto& c = sweep.certificates[i];
      const auto best = brute_tutte_path(cg, q.u, q.v, q.e);
      std::lock_guard lock(mu);
      if (!best) {
        o.fail(qstr(name, q) + ": no Tutte path found exhaustively");
        return;
      }
      if (c.path.empty()) {
        o.fail(qstr(name, q) + ": no solver certificate");
        return;
      }
      if (best->beta > c.beta || !within(c.beta, c.bound) || !within(best->beta, c.bound))
        o.fail(qstr(name, q) + ": oracle " + std::to_string(best->beta) + ", solver " + std::to_string(c.beta) +
               ", bound " + c.bound.str());
      if (best->beta < c.beta) ++strictly_better;
    });
    o.detail = std::to_string(idx.size()) + " queries; oracle strictly better on " + std::to_string(strictly_better.load());
    return o;
  });

  failures += report(5, "tau truth table: base-case triples and 20 derived arcs against the literal definition", [] {
    Outcome o;
    const auto tri = CircuitGraph::from_embedding(labkit::triangle());
    auto triple = [&](Vertex u, Vertex v, Edge e) {
      return std::vector<std::int64_t>{tau(tri, ArcEndpoint::at(v), ArcEndpoint::at(u)).num,
                                       tau(tri, ArcEndpoint::at(u), ArcEndpoint::along(e)).num,
                                       tau(tri, ArcEndpoint::along(e), ArcEndpoint::at(v)).num};
    };
    if (triple(0, 1, Edge(0, 1)) != std::vector<std::int64_t>{2, 2, 2}) o.fail("e = uv triple");
    if (triple(0, 2, Edge(1, 2)) != std::vector<std::int64_t>{0, 1, 2}) o.fail("n = 3 triple");
    const auto graphs = testkit::derived_arc_graphs();
    std::size_t checked = 0;
    for (const auto& r : testkit::derived_arcs()) {
      const auto cg = CircuitGraph::from_embedding(graphs.at(r.graph));
      const testkit::NaiveSeparations seps(cg.embedding());
      const int naive = testkit::naive_tau(cg, seps, testkit::naive_end(cg, r.from), testkit::naive_end(cg, r.to));
      const auto lib = tau(cg, testkit::library_end(r.from), testkit::library_end(r.to)).num;
      if (naive != r.expected_thirds || lib != r.expected_thirds)
        o.fail(std::string(r.graph) + ": naive " + std::to_string(naive) + ", library " + std::to_string(lib) +
               ", frozen " + std::to_string(r.expected_thirds));
      ++checked;
    }
    o.detail = "2 triples, " + std::to_string(checked) + " arcs";
    return o;
  });

  failures += report(6, "Euler, bridge partition, piece ledger balance and shrinking recursion", [&] {
    Outcome o;
    std::size_t embeddings = 0, decompositions = 0, entries = 0;
    std::vector<RotationEmbedding> gens;
    for (const auto& [name, cg] : graphs) gens.push_back(cg.embedding());
    for (int k = 3; k <= 4; ++k) gens.push_back(labkit::iterated_triangulation(k));
    gens.push_back(labkit::stacked_tightness(labkit::icosahedron()));
    for (std::uint32_t s = 0; s < 20; ++s) {
      gens.push_back(labkit::random_circuit(6 + static_cast<int>(s), s).embedding());
      gens.push_back(labkit::random_essential(8 + static_cast<int>(s % 6), s));
    }
    for (const auto& g : gens) {
      ++embeddings;
      const long f = static_cast<long>(g.faces().size());
      if (static_cast<long>(g.vertex_count()) - static_cast<long>(g.edge_count()) + f != 2) o.fail("Euler fails");
    }
    for (std::size_t i = 0; i < sweep.jobs.size(); ++i) {
      const auto& c = sweep.certificates[i];
      if (c.path.empty()) continue;
      const auto& [name, cg] = graphs[sweep.jobs[i].graph];
      const auto& g = cg.embedding();
      EdgeSet path_edges;
      for (std::size_t k = 0; k + 1 < c.path.size(); ++k) path_edges.insert(Edge(c.path[k], c.path[k + 1]));
      std::map<Edge, int> owner;
      for (const auto& b : c.bridges)
        for (const Edge& e : b.edges) ++owner[e];
      for (const Edge& e : g.edges())
        if (owner[e] != (path_edges.count(e) ? 0 : 1)) {
          o.fail(qstr(name, sweep.jobs[i].q) + ": bridge partition");
          break;
        }
      for (const auto& en : c.trace) {
        ++entries;
        if (en.parent >= 0 && en.order >= c.trace[static_cast<std::size_t>(en.parent)].order)
          o.fail(qstr(name, sweep.jobs[i].q) + ": entry " + std::to_string(en.id) + " does not shrink");
        if (en.rule == "decompose-bad-arc" || en.rule == "decompose-good-arc") {
          ++decompositions;
          if (en.piece_balance() != static_cast<std::int64_t>(en.order))
            o.fail(qstr(name, sweep.jobs[i].q) + ": entry " + std::to_string(en.id) + " piece balance " +
                   std::to_string(en.piece_balance()) + " != " + std::to_string(en.order));
        }
      }
    }
    o.detail = std::to_string(embeddings) + " embeddings, " + std::to_string(entries) + " ledger entries, " +
               std::to_string(decompositions) + " decompositions";
    return o;
  });

  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
  return failures == 0 ? 0 : 1;
}
