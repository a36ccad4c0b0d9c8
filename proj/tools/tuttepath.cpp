#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "tuttepath/circumference.hpp"
#include "tuttepath/labkit/generators.hpp"
#include "tuttepath/labkit/graph6.hpp"
#include "tuttepath/labkit/io.hpp"
#include "tuttepath/labkit/oracles.hpp"
#include "tuttepath/labkit/verify.hpp"
#include "tuttepath/tutte_path.hpp"

namespace fs = std::filesystem;
using namespace tuttepath;
using labkit::json;

namespace {

enum Exit { kOk = 0, kVerifyFailed = 1, kInputError = 2, kResourceCap = 3 };

struct CommandConfig {
  std::string subcommand;
  std::vector<std::string> inputs;
  std::string output;  // empty: stdout
  labkit::OracleCaps caps;
  bool pretty = false;
  bool check_every_call = true;  // false: audit only the outermost result
  bool mirror = false;           // read the input embedding mirrored
  std::size_t oracle_below = 0;  // 0: never fall back to exhaustive search
  bool ledger = true;
  bool regen_golden = false;
  std::string golden_dir;
  // query
  std::optional<Vertex> u, v;
  std::vector<Vertex> e;
  // gen
  std::string family;
  int k = 0, n = 0;
  std::string base = "octahedron";
  std::uint32_t seed = 0;
  double keep = 0.6;
  std::string oracle_kind;
  std::string format = "json";
  unsigned jobs = 0;
};

SolveOptions solve_options(const CommandConfig& cfg) {
  SolveOptions o;
  o.oracle_below = cfg.oracle_below;
  o.check_every_call = cfg.check_every_call;
  return o;
}

std::size_t env_cap(const char* name, std::size_t fallback) {
  if (const char* s = std::getenv(name)) {
    try {
      return static_cast<std::size_t>(std::stoul(s));
    } catch (const std::exception&) {
      throw InputError(std::string(name) + " is not a number");
    }
  }
  return fallback;
}

void emit(const CommandConfig& cfg, const json& j) {
  if (cfg.output.empty())
    std::cout << j.dump(2) << "\n";
  else
    labkit::write_json_file(cfg.output, j);
}

RotationEmbedding load_embedding(const CommandConfig& cfg, const std::string& path) {
  RotationEmbedding g = labkit::parse_embedding(labkit::read_json_file(path));
  return cfg.mirror ? g.mirrored() : g;
}

labkit::InstanceFile load_instance(const CommandConfig& cfg, const std::string& path) {
  labkit::InstanceFile f = labkit::parse_instance(labkit::read_json_file(path));
  if (cfg.mirror) {
    f.embedding = f.embedding.mirrored();
    if (f.query) std::swap(f.query->u, f.query->v);
  }
  return f;
}

CircuitGraph as_circuit(const RotationEmbedding& g) {
  if (!g.outer_dart()) throw InputError("instance has no outer face");
  return CircuitGraph::from_embedding(g);
}

labkit::Query resolve_query(const CommandConfig& cfg, const labkit::InstanceFile& f) {
  if (cfg.u || cfg.v || !cfg.e.empty()) {
    if (!cfg.u || !cfg.v || cfg.e.size() != 2) throw InputError("--u, --v and --e a,b must be given together");
    return {*cfg.u, *cfg.v, Edge(cfg.e[0], cfg.e[1])};
  }
  if (!f.query) throw InputError("no query: pass --u --v --e or add a query block to the file");
  return *f.query;
}

std::string pad(const std::string& s, std::size_t w) { return s.size() >= w ? s : s + std::string(w - s.size(), ' '); }

void table(const std::vector<std::string>& head, const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> w(head.size());
  for (std::size_t i = 0; i < head.size(); ++i) w[i] = head[i].size();
  for (const auto& r : rows)
    for (std::size_t i = 0; i < r.size(); ++i) w[i] = std::max(w[i], r[i].size());
  auto line = [&](const std::vector<std::string>& r) {
    for (std::size_t i = 0; i < r.size(); ++i) std::cerr << pad(r[i], w[i] + 2);
    std::cerr << "\n";
  };
  line(head);
  for (const auto& r : rows) line(r);
}

// -- subcommands --------------------------------------------------------------

int cmd_validate(const CommandConfig& cfg) {
  const RotationEmbedding g = load_embedding(cfg, cfg.inputs.at(0));
  const FaceTrace ft = trace_faces(g);
  json j;
  j["format"] = labkit::kFormatVersion;
  j["kind"] = "validation";
  j["n"] = g.vertex_count();
  j["m"] = g.edge_count();
  j["faces"] = ft.faces.size();
  j["components"] = g.component_count();
  j["euler"] = static_cast<long>(g.vertex_count()) - static_cast<long>(g.edge_count()) +
                   static_cast<long>(ft.faces.size()) ==
               2 * static_cast<long>(g.component_count());
  if (g.outer_dart()) {
    const auto [clause, detail] = diagnose_circuit(g, g.outer_walk());
    j["circuit_graph"] = {{"ok", clause == CircuitClause::ok}, {"clause", to_string(clause)}, {"detail", detail}};
  } else {
    j["circuit_graph"] = {{"ok", false}, {"clause", "no outer face"}, {"detail", ""}};
  }
  j["three_connected"] = is_k_connected(g, 3);
  j["four_connected"] = is_4_connected(g);
  j["essentially_4_connected"] = is_essentially_4_connected(g);
  emit(cfg, j);
  if (cfg.pretty)
    table({"n", "m", "faces", "circuit", "3-conn", "4-conn", "ess-4-conn"},
          {{std::to_string(g.vertex_count()), std::to_string(g.edge_count()), std::to_string(ft.faces.size()),
            j["circuit_graph"]["ok"].get<bool>() ? "yes" : "no", j["three_connected"].get<bool>() ? "yes" : "no",
            j["four_connected"].get<bool>() ? "yes" : "no", j["essentially_4_connected"].get<bool>() ? "yes" : "no"}});
  return kOk;
}

int cmd_tutte_path(const CommandConfig& cfg) {
  const auto f = load_instance(cfg, cfg.inputs.at(0));
  const CircuitGraph cg = as_circuit(f.embedding);
  const auto q = resolve_query(cfg, f);
  const auto cert = tutte_path(cg, q.u, q.v, q.e, solve_options(cfg));
  emit(cfg, labkit::certificate_json(cert, cfg.ledger));
  if (cfg.pretty)
    table({"n", "u", "v", "e", "length", "beta", "bound", "calls"},
          {{std::to_string(cert.order), std::to_string(q.u), std::to_string(q.v),
            std::to_string(q.e.a) + "-" + std::to_string(q.e.b), std::to_string(cert.path.size()),
            std::to_string(cert.beta), cert.bound.str(), std::to_string(cert.trace.size())}});
  return kOk;
}

int cmd_cycle(const CommandConfig& cfg) {
  const RotationEmbedding g = load_embedding(cfg, cfg.inputs.at(0));
  const auto r = long_cycle(g, solve_options(cfg));
  emit(cfg, labkit::report_json(r, cfg.ledger));
  if (cfg.pretty)
    table({"n", "branch", "length", "bound", "claws"},
          {{std::to_string(r.order), r.branch, std::to_string(r.length), std::to_string(r.bound),
            std::to_string(r.bridge_audit.size())}});
  return kOk;
}

int cmd_gen(const CommandConfig& cfg) {
  labkit::InstanceFile f;
  f.family = cfg.family;
  const std::string& fam = cfg.family;
  if (fam == "iterated-triangulation") {
    if (cfg.k < 0 || cfg.k > 6) throw ResourceError("iterated triangulation depth is capped at 6");
    f.embedding = labkit::iterated_triangulation(cfg.k);
    f.parameters = {{"k", cfg.k}};
  } else if (fam == "stacked-tightness") {
    const RotationEmbedding base = labkit::named(cfg.base);
    if (!is_4_connected(base)) throw InputError("base graph must be 4-connected");
    for (const auto& face : base.faces())
      if (face.size() != 3) throw InputError("base graph must be a triangulation");
    f.embedding = labkit::stacked_tightness(base);
    f.parameters = {{"base", cfg.base}, {"base_order", base.vertex_count()}};
  } else if (fam == "random-circuit") {
    f.embedding = labkit::random_circuit(cfg.n, cfg.seed, cfg.keep).embedding();
    f.parameters = {{"n", cfg.n}, {"seed", cfg.seed}, {"keep", cfg.keep}};
  } else if (fam == "random-essential") {
    f.embedding = labkit::random_essential(cfg.k, cfg.seed, cfg.keep);
    f.parameters = {{"k", cfg.k}, {"seed", cfg.seed}, {"stack", cfg.keep}};
  } else if (fam == "wheel" || fam == "double-wheel") {
    f.embedding = fam == "wheel" ? labkit::wheel(cfg.n) : labkit::double_wheel(cfg.n);
    f.parameters = {{"n", cfg.n}};
  } else if (fam == "glued-wheels") {
    f.embedding = labkit::glued_wheels(cfg.n, cfg.k);
    f.parameters = {{"n", cfg.n}, {"k", cfg.k}};
  } else if (fam == "ladder") {
    f.embedding = labkit::ladder(cfg.k);
    f.parameters = {{"k", cfg.k}};
  } else {
    std::string name = fam;
    std::replace(name.begin(), name.end(), '-', '_');
    f.embedding = labkit::named(name);
  }
  if (cfg.u || cfg.v || !cfg.e.empty()) f.query = resolve_query(cfg, f);
  if (cfg.format == "graph6") {
    std::cout << labkit::emit_graph6(labkit::simple_graph_of(f.embedding)) << "\n";
    return kOk;
  }
  emit(cfg, labkit::instance_json(f));
  return kOk;
}

int cmd_oracle(const CommandConfig& cfg) {
  const auto f = load_instance(cfg, cfg.inputs.at(0));
  json j;
  j["format"] = labkit::kFormatVersion;
  if (cfg.oracle_kind == "circumference") {
    const auto res = labkit::brute_longest_cycle(f.embedding, cfg.caps.circumference);
    j["kind"] = "circumference-oracle";
    j["n"] = f.embedding.vertex_count();
    j["circumference"] = res.cycle.size();
    j["cycle"] = res.cycle;
    j["explored"] = res.explored;
  } else {
    const CircuitGraph cg = as_circuit(f.embedding);
    const auto q = resolve_query(cfg, f);
    check_query(cg, q.u, q.v, q.e);
    if (cg.order() > cfg.caps.tutte)
      throw ResourceError("exhaustive path search is capped at " + std::to_string(cfg.caps.tutte) + " vertices");
    const auto best = brute_tutte_path(cg, q.u, q.v, q.e);
    j["kind"] = "tutte-oracle";
    j["n"] = cg.order();
    j["query"] = {{"u", q.u}, {"v", q.v}, {"e", labkit::edge_json(q.e)}};
    j["found"] = best.has_value();
    j["beta"] = best ? json(best->beta) : json(nullptr);
    j["path"] = best ? json(best->path) : json(nullptr);
    j["explored"] = best ? best->explored : 0;
    j["bound_thirds"] = path_bound(cg, q.u, q.v, q.e).num;
    if (!best) {
      emit(cfg, j);
      return kVerifyFailed;
    }
  }
  emit(cfg, j);
  return kOk;
}

int cmd_verify(const CommandConfig& cfg) {
  const auto f = load_instance(cfg, cfg.inputs.at(0));
  const json cj = labkit::read_json_file(cfg.inputs.at(1));
  labkit::Verdict verdict;
  const std::string kind = cj.is_object() ? cj.value("kind", "") : "";
  if (kind == "tutte-path") {
    verdict = labkit::verify_certificate(as_circuit(f.embedding), labkit::parse_certificate(cj));
  } else if (kind == "long-cycle") {
    verdict = labkit::verify_report(f.embedding, labkit::parse_report(cj));
  } else {
    throw InputError("certificate kind must be tutte-path or long-cycle");
  }
  emit(cfg, labkit::verdict_json(verdict));
  for (const auto& c : verdict.checks)
    if (!c.ok) std::cerr << "failed: " << c.clause << (c.detail.empty() ? "" : " (" + c.detail + ")") << "\n";
  return verdict.ok() ? kOk : kVerifyFailed;
}

/// Golden payload: the deterministic part of a result.
json golden_of(const json& result) {
  json g = result;
  g.erase("runtime_ms");
  return g;
}

json bench_one(const CommandConfig& cfg, const fs::path& file) {
  json row;
  row["file"] = file.filename().string();
  const auto t0 = std::chrono::steady_clock::now();
  try {
    const auto f = load_instance(cfg, file.string());
    const auto& g = f.embedding;
    row["n"] = g.vertex_count();
    if (f.query) {
      const CircuitGraph cg = as_circuit(g);
      const auto cert = tutte_path(cg, f.query->u, f.query->v, f.query->e, solve_options(cfg));
      const auto verdict = labkit::verify_certificate(cg, cert);
      row["task"] = "tutte-path";
      row["bound"] = cert.bound.str();
      row["length"] = cert.path.size();
      row["beta"] = cert.beta;
      row["ok"] = verdict.ok();
      row["result"] = labkit::certificate_json(cert, false);
    } else {
      const auto r = long_cycle(g, solve_options(cfg));
      const auto verdict = labkit::verify_report(g, r);
      row["task"] = "cycle";
      row["bound"] = std::to_string(r.bound);
      row["length"] = r.length;
      std::int64_t beta = 0;
      for (const auto& s : r.sub_certificates) beta += s.certificate.beta;
      row["beta"] = beta;
      row["ok"] = verdict.ok();
      row["result"] = labkit::report_json(r, false);
    }
  } catch (const std::exception& ex) {
    row["ok"] = false;
    row["error"] = ex.what();
  }
  row["runtime_ms"] = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return row;
}

int cmd_bench(const CommandConfig& cfg) {
  std::vector<fs::path> files;
  for (const auto& ent : fs::directory_iterator(cfg.inputs.at(0)))
    if (ent.is_regular_file() && ent.path().extension() == ".json") files.push_back(ent.path());
  if (files.empty()) throw InputError("no .json instances in " + cfg.inputs.at(0));
  std::sort(files.begin(), files.end());

  std::vector<json> rows(files.size());
  std::atomic<std::size_t> next{0};
  const unsigned workers =
      std::max(1u, std::min<unsigned>(cfg.jobs ? cfg.jobs : std::thread::hardware_concurrency(),
                                      static_cast<unsigned>(files.size())));
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < files.size(); i = next++) rows[i] = bench_one(cfg, files[i]);
    });
  for (auto& t : pool) t.join();

  bool all_ok = true;
  for (auto& row : rows) {
    if (!cfg.golden_dir.empty() && row.contains("result")) {
      const fs::path gp = fs::path(cfg.golden_dir) / row["file"].get<std::string>();
      if (cfg.regen_golden) {
        labkit::write_json_file(gp.string(), golden_of(row["result"]));
        row["golden"] = "written";
      } else if (fs::exists(gp)) {
        const bool same = labkit::read_json_file(gp.string()) == golden_of(row["result"]);
        row["golden"] = same ? "match" : "differs";
        if (!same) row["ok"] = false;
      } else {
        row["golden"] = "missing";
      }
    }
    row.erase("result");
    all_ok = all_ok && row["ok"].get<bool>();
  }
  json out;
  out["format"] = labkit::kFormatVersion;
  out["kind"] = "bench";
  out["ok"] = all_ok;
  out["rows"] = rows;
  emit(cfg, out);
  if (cfg.pretty) {
    std::vector<std::vector<std::string>> t;
    for (const auto& r : rows) {
      std::ostringstream ms;
      ms << std::fixed << std::setprecision(1) << r["runtime_ms"].get<double>();
      t.push_back({r["file"].get<std::string>(), r.contains("n") ? std::to_string(r["n"].get<int>()) : "?",
                   r.value("task", "-"), r.value("bound", "-"),
                   r.contains("length") ? std::to_string(r["length"].get<int>()) : "-",
                   r.contains("beta") ? std::to_string(r["beta"].get<int>()) : "-", ms.str(),
                   r["ok"].get<bool>() ? "ok" : "FAIL"});
    }
    table({"file", "n", "task", "bound", "length", "beta", "ms", "status"}, t);
  }
  for (const auto& r : rows)
    if (r.contains("error")) std::cerr << r["file"].get<std::string>() << ": " << r["error"].get<std::string>() << "\n";
  return all_ok ? kOk : kVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CommandConfig cfg;
  CLI::App app{"Tutte paths and long cycles in plane graphs"};
  app.fallthrough();  // global flags may follow the subcommand
  app.require_subcommand(1);
  app.add_flag("--pretty", cfg.pretty, "Print a human-readable table on stderr");
  app.add_option("-o,--output", cfg.output, "Write JSON here instead of stdout");
  app.add_flag("--mirror", cfg.mirror, "Read the input embedding mirrored");
  app.add_option("--oracle-below", cfg.oracle_below,
                 "Solve recursive instances up to this order by exhaustive search (0 disables)");
  bool top_only = false;
  app.add_flag("--check-top-only", top_only, "Audit only the outermost result instead of every recursive call");
  bool no_ledger = false;
  app.add_flag("--no-ledger", no_ledger, "Omit the solver ledger from certificates");

  auto add_query = [&](CLI::App* sc) {
    sc->add_option("--u", cfg.u, "Path start on the outer cycle");
    sc->add_option("--v", cfg.v, "Path end on the outer cycle");
    sc->add_option("--e", cfg.e, "Outer edge the path must use, as a,b")->delimiter(',')->expected(2);
  };
  auto add_input = [&](CLI::App* sc, const char* what) {
    sc->add_option("file", cfg.inputs, what)->required()->check(CLI::ExistingFile);
  };

  auto* validate = app.add_subcommand("validate", "Diagnose an embedding");
  add_input(validate, "Rotation-JSON instance");
  auto* tutte = app.add_subcommand("tutte-path", "Compute a certified Tutte path");
  add_input(tutte, "Rotation-JSON instance");
  add_query(tutte);
  auto* cycle = app.add_subcommand("cycle", "Compute a long cycle");
  add_input(cycle, "Rotation-JSON instance");
  auto* gen = app.add_subcommand("gen", "Emit a generated instance");
  gen->add_option("family", cfg.family, "Family or named graph")->required();
  gen->add_option("--k", cfg.k, "Depth or size parameter");
  gen->add_option("--n", cfg.n, "Vertex count parameter");
  gen->add_option("--base", cfg.base, "Base triangulation for stacked-tightness");
  gen->add_option("--seed", cfg.seed, "Random seed");
  gen->add_option("--keep", cfg.keep, "Edge keep (random-circuit) or stacking (random-essential) probability");
  gen->add_option("--format", cfg.format, "json or graph6")->check(CLI::IsMember({"json", "graph6"}));
  add_query(gen);
  auto* oracle = app.add_subcommand("oracle", "Exhaustive reference answers");
  oracle->add_option("kind", cfg.oracle_kind, "circumference or tutte")
      ->required()
      ->check(CLI::IsMember({"circumference", "tutte"}));
  add_input(oracle, "Rotation-JSON instance");
  add_query(oracle);
  oracle->add_option("--cap", cfg.caps.circumference, "Vertex cap for the cycle search");
  oracle->add_option("--tutte-cap", cfg.caps.tutte, "Vertex cap for the path search");
  auto* verify = app.add_subcommand("verify", "Check a certificate or report from scratch");
  verify->add_option("files", cfg.inputs, "Instance and certificate")->required()->expected(2)->check(CLI::ExistingFile);
  auto* bench = app.add_subcommand("bench", "Solve and verify every instance in a directory");
  bench->add_option("dir", cfg.inputs, "Corpus directory")->required()->check(CLI::ExistingDirectory);
  bench->add_option("--golden", cfg.golden_dir, "Compare results with golden files in this directory");
  bench->add_flag("--regen-golden", cfg.regen_golden, "Rewrite the golden files instead of comparing");
  bench->add_option("--jobs", cfg.jobs, "Worker threads (default: hardware concurrency)");

  try {
    cfg.caps.circumference = env_cap("TUTTEPATH_CYCLE_CAP", cfg.caps.circumference);
    cfg.caps.tutte = env_cap("TUTTEPATH_TUTTE_CAP", cfg.caps.tutte);
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInputError;
  }
  cfg.check_every_call = !top_only;
  cfg.ledger = !no_ledger;

  try {
    if (*validate) return cmd_validate(cfg);
    if (*tutte) return cmd_tutte_path(cfg);
    if (*cycle) return cmd_cycle(cfg);
    if (*gen) return cmd_gen(cfg);
    if (*oracle) return cmd_oracle(cfg);
    if (*verify) return cmd_verify(cfg);
    if (*bench) return cmd_bench(cfg);
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const ResourceError& e) {
    std::cerr << "resource cap: " << e.what() << "\n";
    return kResourceCap;
  } catch (const StructuralError& e) {
    std::cerr << "structural error: " << e.what() << "\n";
    return kInputError;
  } catch (const CertifiedFailure& e) {
    std::cerr << "certification failed: " << e.what() << " (" << e.trace().size() << " ledger entries)\n";
    return kVerifyFailed;
  } catch (const InternalError& e) {
    std::cerr << "internal check failed: " << e.what() << "\n";
    return kVerifyFailed;
  }
  return kInputError;
}
