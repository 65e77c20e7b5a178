#include "sigquad/io.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include "sigquad/util.hpp"

namespace sigquad {

namespace {

nlohmann::json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(path.string() + ": " + e.what());
  }
  return j;
}

std::array<double, 2> parse_point2(const nlohmann::json& j) {
  if (!j.is_array() || j.size() != 2)
    throw std::invalid_argument("expected a [x, y] pair");
  return {j[0].get<double>(), j[1].get<double>()};
}

std::string hash_to_hex(std::uint64_t h) {
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

std::uint64_t hex_to_hash(const std::string& s) { return std::stoull(s, nullptr, 16); }

}  // namespace

SplineElement parse_element(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("sides") || !j["sides"].is_array())
    throw std::invalid_argument("element file: expected { \"sides\": [...] }");
  std::vector<SplineArcSide> sides;
  for (const auto& js : j["sides"]) {
    if (!js.contains("degree") || !js.contains("knots"))
      throw std::invalid_argument("element side: needs \"degree\" and \"knots\"");
    const int degree = js["degree"].get<int>();
    std::vector<std::array<double, 2>> knots;
    for (const auto& jk : js["knots"]) knots.push_back(parse_point2(jk));
    sides.push_back(build_spline_side(knots, degree));
  }
  return make_element(std::move(sides));
}

SplineElement load_element(const std::filesystem::path& path) {
  return parse_element(read_json_file(path));
}

IndicatorDomain parse_csg(const nlohmann::json& j) {
  if (!j.is_object()) throw std::invalid_argument("csg node: expected an object");
  if (j.contains("ball")) {
    const auto& jb = j["ball"];
    const auto& jc = jb.at("center");
    if (!jc.is_array() || jc.size() != 3)
      throw std::invalid_argument("ball: center must be [x, y, z]");
    return IndicatorDomain::ball({jc[0].get<double>(), jc[1].get<double>(), jc[2].get<double>()},
                                 jb.at("radius").get<double>());
  }
  if (j.contains("polyhedron")) {
    const auto& jp = j["polyhedron"];
    std::vector<std::array<double, 3>> vertices;
    for (const auto& jv : jp.at("vertices")) {
      if (!jv.is_array() || jv.size() != 3)
        throw std::invalid_argument("polyhedron: vertices must be [x, y, z]");
      vertices.push_back({jv[0].get<double>(), jv[1].get<double>(), jv[2].get<double>()});
    }
    std::vector<std::array<int, 3>> facets;
    for (const auto& jf : jp.at("facets")) {
      if (!jf.is_array() || jf.size() != 3)
        throw std::invalid_argument("polyhedron: facets must be vertex index triples");
      facets.push_back({jf[0].get<int>(), jf[1].get<int>(), jf[2].get<int>()});
    }
    return IndicatorDomain::polyhedron(std::move(vertices), std::move(facets));
  }
  if (j.contains("op")) {
    const std::string op = j.at("op").get<std::string>();
    std::vector<IndicatorDomain> children;
    for (const auto& jc : j.at("children")) children.push_back(parse_csg(jc));
    if (op == "union") return IndicatorDomain::make_union(std::move(children));
    if (op == "intersection") return IndicatorDomain::make_intersection(std::move(children));
    if (op == "difference") return IndicatorDomain::make_difference(std::move(children));
    throw std::invalid_argument("csg node: unknown op \"" + op + "\"");
  }
  throw std::invalid_argument("csg node: expected \"ball\", \"polyhedron\" or \"op\"");
}

IndicatorDomain load_csg(const std::filesystem::path& path) {
  return parse_csg(read_json_file(path));
}

nlohmann::json rule_to_json(const RuleFile& rf) {
  const SignedRule& r = rf.rule;
  const int d = r.dim();

  nlohmann::json jlo = nlohmann::json::array(), jhi = nlohmann::json::array();
  for (int k = 0; k < d; ++k) {
    jlo.push_back(r.basis.box().lo(k));
    jhi.push_back(r.basis.box().hi(k));
  }

  nlohmann::json jnodes = nlohmann::json::array();
  for (int i = 0; i < r.size(); ++i) {
    nlohmann::json jn = nlohmann::json::array();
    for (int k = 0; k < d; ++k) jn.push_back(r.node(i)[k]);
    jnodes.push_back(std::move(jn));
  }

  return nlohmann::json{
      {"schema", "sigquad/rule"},
      {"version", rf.schema_version},
      {"dimension", d},
      {"ade", r.ade},
      {"basis",
       {{"box", {{"lo", jlo}, {"hi", jhi}}},
        {"family", "chebyshev-orthonormal"},
        {"ordering", "graded-lexicographic"}}},
      {"nodes", jnodes},
      {"weights", r.weights},
      {"diagnostics",
       {{"moment_residual", r.moment_residual},
        {"stability", r.stability},
        {"onenorm", r.onenorm},
        {"cardinality", r.size()}}},
      {"provenance",
       {{"kind", rf.provenance.kind},
        {"source", rf.provenance.source},
        {"source_hash", hash_to_hex(rf.provenance.source_hash)},
        {"points", rf.provenance.points},
        {"seed", rf.provenance.seed}}}};
}

RuleFile rule_from_json(const nlohmann::json& j) {
  if (!j.is_object() || j.value("schema", "") != "sigquad/rule")
    throw std::invalid_argument("rule file: missing schema tag \"sigquad/rule\"");
  const int version = j.at("version").get<int>();
  if (version != kRuleSchemaVersion)
    throw std::invalid_argument("rule file: unsupported schema version");

  const int d = j.at("dimension").get<int>();
  const auto& jbox = j.at("basis").at("box");
  std::vector<double> lo = jbox.at("lo").get<std::vector<double>>();
  std::vector<double> hi = jbox.at("hi").get<std::vector<double>>();
  if (static_cast<int>(lo.size()) != d || static_cast<int>(hi.size()) != d)
    throw std::invalid_argument("rule file: box dimension mismatch");
  const std::string ordering = j.at("basis").value("ordering", "graded-lexicographic");
  if (ordering != "graded-lexicographic")
    throw std::invalid_argument("rule file: unknown basis ordering \"" + ordering + "\"");

  const int ade = j.at("ade").get<int>();
  ChebBasis basis(BoxDomain(lo, hi), ade);

  SignedRule r{basis, ade, {}, {}, 0.0, 0.0, 0.0};
  for (const auto& jn : j.at("nodes")) {
    if (!jn.is_array() || static_cast<int>(jn.size()) != d)
      throw std::invalid_argument("rule file: node dimension mismatch");
    for (int k = 0; k < d; ++k) r.nodes.push_back(jn[k].get<double>());
  }
  r.weights = j.at("weights").get<std::vector<double>>();
  if (r.weights.size() * d != r.nodes.size())
    throw std::invalid_argument("rule file: node/weight count mismatch");

  const auto& jd = j.at("diagnostics");
  r.moment_residual = jd.at("moment_residual").get<double>();
  r.stability = jd.at("stability").get<double>();
  r.onenorm = jd.at("onenorm").get<double>();
  if (jd.contains("cardinality") && jd.at("cardinality").get<int>() != r.size())
    throw std::invalid_argument("rule file: cardinality does not match weights");

  RuleProvenance prov;
  if (j.contains("provenance")) {
    const auto& jp = j.at("provenance");
    prov.kind = jp.value("kind", "");
    prov.source = jp.value("source", "");
    if (jp.contains("source_hash"))
      prov.source_hash = hex_to_hash(jp.at("source_hash").get<std::string>());
    prov.points = jp.value("points", 0LL);
    prov.seed = jp.value("seed", std::uint64_t{0});
  }
  return RuleFile{version, std::move(r), std::move(prov)};
}

void save_rule(const RuleFile& rf, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot write " + path.string());
  out << rule_to_json(rf).dump(1) << "\n";
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

RuleFile load_rule(const std::filesystem::path& path) {
  return rule_from_json(read_json_file(path));
}

std::uint64_t hash_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open " + path.string());
  std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return fnv1a(bytes);
}

}  // namespace sigquad
