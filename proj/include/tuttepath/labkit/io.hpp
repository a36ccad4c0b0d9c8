#pragma once

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "tuttepath/circuit.hpp"
#include "tuttepath/circumference.hpp"
#include "tuttepath/embedding.hpp"
#include "tuttepath/tutte_path.hpp"

namespace tuttepath::labkit {

using json = nlohmann::ordered_json;

inline constexpr int kFormatVersion = 1;

struct Query {
  Vertex u = 0, v = 0;
  Edge e;
};

/// A rotation-JSON instance: embedding, optional query and free-form metadata.
struct InstanceFile {
  RotationEmbedding embedding;
  std::optional<Query> query;
  std::string family;
  json parameters = json::object();
};

// -- rotation-JSON ----------------------------------------------------------

inline json edge_json(const Edge& e) { return json::array({e.a, e.b}); }

inline json embedding_json(const RotationEmbedding& g) {
  json j;
  j["format"] = kFormatVersion;
  j["n"] = g.vertex_count();
  json es = json::array();
  for (const Edge& e : g.edges()) es.push_back(edge_json(e));
  j["edges"] = es;
  json rot = json::object();
  for (Vertex v : g.vertices()) rot[std::to_string(v)] = g.rotation(v);
  j["rotations"] = rot;
  if (g.outer_dart()) j["outer_face"] = g.outer_walk();
  return j;
}

inline json circuit_json(const CircuitGraph& cg) {
  json j = embedding_json(cg.embedding());
  j["outer_cycle"] = cg.outer_cycle();
  return j;
}

inline json instance_json(const InstanceFile& f) {
  json j = embedding_json(f.embedding);
  if (f.query) j["query"] = {{"u", f.query->u}, {"v", f.query->v}, {"e", edge_json(f.query->e)}};
  if (!f.family.empty()) j["metadata"] = {{"family", f.family}, {"parameters", f.parameters}};
  return j;
}

namespace detail {

inline void require(bool ok, const std::string& what) {
  if (!ok) throw InputError(what);
}

inline Edge parse_edge(const json& j) {
  require(j.is_array() && j.size() == 2 && j[0].is_number_integer() && j[1].is_number_integer(),
          "an edge must be a pair of integers");
  return Edge(j[0].get<Vertex>(), j[1].get<Vertex>());
}

inline void check_format(const json& j) {
  require(j.is_object(), "top level must be a JSON object");
  require(j.contains("format") && j["format"].is_number_integer(), "missing integer field 'format'");
  require(j["format"].get<int>() == kFormatVersion,
          "unsupported format " + std::to_string(j["format"].get<int>()));
}

}  // namespace detail

/// Parses and validates a rotation-JSON object. Edges listed under "edges"
/// must match the rotations exactly.
inline RotationEmbedding parse_embedding(const json& j) {
  using detail::require;
  detail::check_format(j);
  require(j.contains("rotations") && j["rotations"].is_object(), "missing object field 'rotations'");
  RotationEmbedding g;
  for (const auto& [key, nb] : j["rotations"].items()) {
    Vertex v = 0;
    try {
      std::size_t used = 0;
      v = std::stoi(key, &used);
      require(used == key.size(), "");
    } catch (const std::exception&) {
      throw InputError("rotation key '" + key + "' is not a vertex id");
    }
    require(nb.is_array(), "rotation of " + key + " must be an array");
    std::vector<Vertex> r;
    for (const auto& w : nb) {
      require(w.is_number_integer(), "rotation of " + key + " holds a non-integer");
      r.push_back(w.get<Vertex>());
    }
    try {
      g.set_rotation(v, r);
    } catch (const StructuralError& e) {
      throw InputError(e.what());
    }
  }
  if (j.contains("n")) {
    require(j["n"].is_number_integer(), "'n' must be an integer");
    require(j["n"].get<std::size_t>() == g.vertex_count(), "'n' does not match the rotations");
  }
  try {
    g.validate();
  } catch (const StructuralError& e) {
    throw InputError(std::string("invalid rotation system: ") + e.what());
  }
  if (j.contains("edges")) {
    require(j["edges"].is_array(), "'edges' must be an array");
    EdgeSet listed;
    for (const auto& e : j["edges"]) listed.insert(detail::parse_edge(e));
    const auto have = g.edges();
    require(listed == EdgeSet(have.begin(), have.end()), "'edges' does not match the rotations");
  }
  if (j.contains("outer_face")) {
    const auto walk = j["outer_face"].get<std::vector<Vertex>>();
    require(walk.size() >= 2, "'outer_face' needs at least two vertices");
    require(g.has_edge(walk[0], walk[1]), "'outer_face' starts with a non-edge");
    require(g.face_walk({walk[0], walk[1]}) == walk, "'outer_face' is not a face walk of the rotations");
    g.set_outer_dart({walk[0], walk[1]});
  }
  return g;
}

/// Parses a rotation-JSON object as a circuit graph. Uses "outer_cycle" when
/// present, else the outer face.
inline CircuitGraph parse_circuit(const json& j) {
  RotationEmbedding g = parse_embedding(j);
  if (j.contains("outer_cycle")) {
    const auto cyc = j["outer_cycle"].get<std::vector<Vertex>>();
    return validate_circuit(g, cyc);
  }
  if (!g.outer_dart()) throw InputError("no outer face given");
  return CircuitGraph::from_embedding(g);
}

inline InstanceFile parse_instance(const json& j) {
  InstanceFile f;
  f.embedding = parse_embedding(j);
  if (j.contains("query")) {
    const auto& q = j["query"];
    detail::require(q.is_object() && q.contains("u") && q.contains("v") && q.contains("e"),
                    "query needs u, v and e");
    f.query = Query{q["u"].get<Vertex>(), q["v"].get<Vertex>(), detail::parse_edge(q["e"])};
  }
  if (j.contains("metadata")) {
    const auto& m = j["metadata"];
    if (m.contains("family")) f.family = m["family"].get<std::string>();
    if (m.contains("parameters")) f.parameters = m["parameters"];
  }
  return f;
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError(path + ": " + e.what());
  }
}

inline void write_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path);
  out << j.dump(2) << "\n";
}

// -- certificates -------------------------------------------------------------

inline json bridge_json(const Bridge& b) {
  return {{"vertices", std::vector<Vertex>(b.vertices.begin(), b.vertices.end())},
          {"attachments", b.attachments}};
}

inline json piece_json(const PieceRecord& p) {
  json j{{"tag", p.tag}, {"size", p.size}, {"overlap", p.overlap}, {"entry", p.entry}};
  j["beta"] = p.beta ? json(*p.beta) : json(nullptr);
  j["budget_thirds"] = p.budget ? json(p.budget->num) : json(nullptr);
  return j;
}

inline json ledger_json(const LedgerEntry& en) {
  json j{{"id", en.id},        {"parent", en.parent}, {"rule", en.rule},     {"order", en.order},
         {"u", en.u},          {"v", en.v},           {"e", edge_json(en.e)}, {"mirrored", en.mirrored},
         {"path", en.path},    {"beta", en.beta},     {"bound_thirds", en.bound.num}};
  json ps = json::array();
  for (const auto& p : en.pieces) ps.push_back(piece_json(p));
  j["pieces"] = ps;
  j["notes"] = en.notes;
  return j;
}

inline json certificate_json(const TuttePathCertificate& c, bool with_ledger = true) {
  json j;
  j["format"] = kFormatVersion;
  j["kind"] = "tutte-path";
  j["n"] = c.order;
  j["query"] = {{"u", c.u}, {"v", c.v}, {"e", edge_json(c.e)}};
  j["path"] = c.path;
  json bs = json::array();
  for (const auto& b : c.bridges) bs.push_back(bridge_json(b));
  j["bridges"] = bs;
  j["beta"] = c.beta;
  j["bound_thirds"] = c.bound.num;
  j["bound"] = c.bound.str();
  j["tau_thirds"] = {{"vu", c.tau_vu.num}, {"ue", c.tau_ue.num}, {"ev", c.tau_ev.num}};
  if (with_ledger) {
    json l = json::array();
    for (const auto& en : c.trace) l.push_back(ledger_json(en));
    j["ledger"] = l;
  }
  return j;
}

/// Reads the claimed fields of a certificate. The ledger is not read back.
inline TuttePathCertificate parse_certificate(const json& j) {
  using detail::require;
  detail::check_format(j);
  require(j.value("kind", "") == "tutte-path", "not a tutte-path certificate");
  TuttePathCertificate c;
  require(j.contains("query") && j.contains("path") && j.contains("beta") && j.contains("bound_thirds"),
          "certificate needs query, path, beta and bound_thirds");
  c.order = j.value("n", std::size_t{0});
  c.u = j["query"]["u"].get<Vertex>();
  c.v = j["query"]["v"].get<Vertex>();
  c.e = detail::parse_edge(j["query"]["e"]);
  c.path = j["path"].get<std::vector<Vertex>>();
  c.beta = j["beta"].get<std::int64_t>();
  c.bound = Third{j["bound_thirds"].get<std::int64_t>()};
  if (j.contains("tau_thirds")) {
    c.tau_vu = Third{j["tau_thirds"].value("vu", std::int64_t{0})};
    c.tau_ue = Third{j["tau_thirds"].value("ue", std::int64_t{0})};
    c.tau_ev = Third{j["tau_thirds"].value("ev", std::int64_t{0})};
  }
  if (j.contains("bridges"))
    for (const auto& bj : j["bridges"]) {
      Bridge b;
      for (Vertex x : bj["vertices"].get<std::vector<Vertex>>()) b.vertices.insert(x);
      b.attachments = bj["attachments"].get<std::vector<Vertex>>();
      c.bridges.push_back(std::move(b));
    }
  return c;
}

inline json report_json(const LongCycleReport& r, bool with_ledger = false) {
  json j;
  j["format"] = kFormatVersion;
  j["kind"] = "long-cycle";
  j["n"] = r.order;
  j["cycle"] = r.cycle;
  j["length"] = r.length;
  j["bound"] = r.bound;
  j["within_theorem"] = r.within_theorem;
  j["branch"] = r.branch;
  j["removed"] = r.removed ? json(*r.removed) : json(nullptr);
  j["mirrored"] = r.mirrored;
  json subs = json::array();
  for (const auto& s : r.sub_certificates)
    subs.push_back({{"role", s.role}, {"graph", circuit_json(s.graph)},
                    {"certificate", certificate_json(s.certificate, with_ledger)}});
  j["sub_certificates"] = subs;
  json audit = json::array();
  for (const auto& b : r.bridge_audit)
    audit.push_back({{"attachments", b.attachments}, {"inner", b.inner}, {"size", b.size}, {"claw", b.claw}});
  j["bridge_audit"] = audit;
  j["notes"] = r.notes;
  return j;
}

inline LongCycleReport parse_report(const json& j) {
  using detail::require;
  detail::check_format(j);
  require(j.value("kind", "") == "long-cycle", "not a long-cycle report");
  require(j.contains("cycle") && j.contains("length") && j.contains("bound"), "report needs cycle, length and bound");
  LongCycleReport r;
  r.order = j.value("n", std::size_t{0});
  r.cycle = j["cycle"].get<std::vector<Vertex>>();
  r.length = j["length"].get<std::size_t>();
  r.bound = j["bound"].get<std::int64_t>();
  r.within_theorem = j.value("within_theorem", true);
  r.branch = j.value("branch", "");
  if (j.contains("removed") && !j["removed"].is_null()) r.removed = j["removed"].get<Vertex>();
  r.mirrored = j.value("mirrored", false);
  if (j.contains("sub_certificates"))
    for (const auto& s : j["sub_certificates"])
      r.sub_certificates.push_back(
          {s.value("role", ""), parse_circuit(s["graph"]), parse_certificate(s["certificate"])});
  if (j.contains("bridge_audit"))
    for (const auto& b : j["bridge_audit"])
      r.bridge_audit.push_back({b["attachments"].get<std::vector<Vertex>>(), b["inner"].get<std::vector<Vertex>>(),
                                b["size"].get<std::size_t>(), b["claw"].get<bool>()});
  return r;
}

}  // namespace tuttepath::labkit
