// sigquad command line tool: compression of spline elements and QMC
// measures into signed rules, plus the verification harness
// (random-polynomial trials, test functions, stability and timing reports).

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sigquad/harness.hpp"
#include "sigquad/io.hpp"
#include "sigquad/qmc.hpp"
#include "sigquad/spline_element.hpp"
#include "sigquad/util.hpp"

namespace {

using namespace sigquad;

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitValidation = 2;

std::vector<double> parse_csv_doubles(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) out.push_back(std::stod(part));
  return out;
}

void write_text(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw std::invalid_argument("cannot write " + out_path);
  out << text;
}

struct VerifySource {
  std::optional<SplineElement> element;
  std::optional<PointCloud> cloud;
  std::optional<IndicatorDomain> domain;
};

// A rule's source is an element file or a CSG file; for QMC sources the
// cloud is rebuilt from the provenance (K, seed) and the rule's box.
VerifySource open_source(const RuleFile& rf, const std::string& source_path,
                         long long points_override) {
  VerifySource src;
  std::ifstream probe(source_path);
  if (!probe) throw std::invalid_argument("cannot open " + source_path);
  nlohmann::json j;
  try {
    probe >> j;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(source_path + ": " + e.what());
  }
  if (j.contains("sides")) {
    if (rf.rule.dim() != 2)
      throw std::invalid_argument("rule dimension does not match the 2D element source");
    src.element = parse_element(j);
    return src;
  }
  src.domain = parse_csg(j);
  if (rf.rule.dim() != 3)
    throw std::invalid_argument("rule dimension does not match the 3D csg source");
  long long k = points_override > 0 ? points_override : rf.provenance.points;
  if (k <= 0) throw std::invalid_argument("rule provenance has no point count; pass --points");
  src.cloud = qmc_measure(*src.domain, rf.rule.basis.box(), k, rf.provenance.seed);
  return src;
}

int cmd_compress_spline(const std::string& element_path, int ade, const std::string& out_path) {
  SplineElement element = load_element(element_path);
  SignedRule rule = compress_element(element, ade);
  RuleFile rf{kRuleSchemaVersion, rule,
              RuleProvenance{"spline", element_path, hash_file(element_path), 0, 0}};
  save_rule(rf, out_path);
  std::printf("wrote %s: %d nodes, ade %d, stability %.6f, moment residual %.3e\n",
              out_path.c_str(), rule.size(), rule.ade, rule.stability, rule.moment_residual);
  return kExitOk;
}

int cmd_compress_qmc(const std::string& csg_path, long long points, int ade,
                     std::uint64_t seed, const std::vector<double>& box_spec,
                     const std::string& out_path) {
  IndicatorDomain domain = load_csg(csg_path);
  BoxDomain box = box_spec.empty()
                      ? domain.suggested_box()
                      : BoxDomain(std::span<const double>(box_spec.data(), 3),
                                  std::span<const double>(box_spec.data() + 3, 3));
  SignedRule rule = compress_qmc(domain, box, points, ade, seed);
  RuleFile rf{kRuleSchemaVersion, rule,
              RuleProvenance{"qmc", csg_path, hash_file(csg_path), points, seed}};
  save_rule(rf, out_path);
  std::printf("wrote %s: %d nodes, ade %d, stability %.6f, moment residual %.3e\n",
              out_path.c_str(), rule.size(), rule.ade, rule.stability, rule.moment_residual);
  return kExitOk;
}

int cmd_verify(const std::string& rule_path, const std::string& source_path, int trials,
               std::uint64_t seed, const std::string& coeffs_text,
               const std::string& out_path) {
  RuleFile rf = load_rule(rule_path);
  VerifySource src = open_source(rf, source_path, 0);

  TrialReport report;
  if (src.element) {
    std::optional<std::array<double, 3>> fixed;
    if (!coeffs_text.empty()) {
      auto c = parse_csv_doubles(coeffs_text);
      if (c.size() != 3) throw std::invalid_argument("--coeffs needs c0,c1,c2 for a 2D rule");
      fixed = std::array<double, 3>{c[0], c[1], c[2]};
    }
    report = verify_spline_rule(*src.element, rf.rule, trials, seed, fixed);
  } else {
    std::optional<std::array<double, 4>> fixed;
    if (!coeffs_text.empty()) {
      auto c = parse_csv_doubles(coeffs_text);
      if (c.size() != 4) throw std::invalid_argument("--coeffs needs c0,c1,c2,c3 for a 3D rule");
      fixed = std::array<double, 4>{c[0], c[1], c[2], c[3]};
    }
    report = verify_qmc_rule(*src.cloud, rf.rule, trials, seed, fixed);
  }

  std::ostringstream csv;
  csv << "ade,trials,seed,trial,rel_error,geomean,reference_ms,rule_ms\n";
  csv.precision(17);
  for (int t = 0; t < report.trials; ++t)
    csv << report.ade << ',' << report.trials << ',' << report.seed << ',' << t << ','
        << report.errors[t] << ',' << report.geomean << ',' << report.reference_ms << ','
        << report.rule_ms << "\n";
  write_text(csv.str(), out_path);
  return kExitOk;
}

int cmd_test_functions(const std::string& rule_path, const std::string& source_path,
                       const std::string& family, const std::string& singular_text,
                       int reference_ade, long long reference_points,
                       const std::string& out_path) {
  RuleFile rf = load_rule(rule_path);
  std::ostringstream csv;
  csv << "family,ade,f1,f2,f3\n";
  csv.precision(10);

  if (family == "2d") {
    VerifySource src = open_source(rf, source_path, 0);
    if (!src.element) throw std::invalid_argument("family 2d needs an element source");
    std::array<double, 2> singular = kDefaultSingular2d;
    if (!singular_text.empty()) {
      auto s = parse_csv_doubles(singular_text);
      if (s.size() != 2) throw std::invalid_argument("--singular needs x,y for family 2d");
      singular = {s[0], s[1]};
    }
    FunctionErrors fe = test_function_errors_spline(*src.element, rf.rule, singular, reference_ade);
    csv << "2d," << rf.rule.ade << ',' << fe.values[0] << ',' << fe.values[1] << ','
        << fe.values[2] << "\n";
  } else if (family == "3d") {
    VerifySource src = open_source(rf, source_path, 0);
    if (!src.cloud) throw std::invalid_argument("family 3d needs a csg source");
    std::array<double, 3> singular = kDefaultSingular3dA;
    if (!singular_text.empty()) {
      auto s = parse_csv_doubles(singular_text);
      if (s.size() != 3) throw std::invalid_argument("--singular needs x,y,z for family 3d");
      singular = {s[0], s[1], s[2]};
    }
    PointCloud reference =
        qmc_measure(*src.domain, rf.rule.basis.box(), reference_points, rf.provenance.seed);
    const SignedRule& rule = rf.rule;
    FunctionErrors fe = test_function_errors_qmc(
        reference,
        [&rule](const std::function<double(double, double, double)>& f) {
          return rule_integrate_3d(rule, f);
        },
        singular);
    csv << "3d," << rf.rule.ade << ',' << fe.values[0] << ',' << fe.values[1] << ','
        << fe.values[2] << "\n";
  } else {
    throw std::invalid_argument("--family must be 2d or 3d");
  }
  write_text(csv.str(), out_path);
  return kExitOk;
}

int cmd_report_stability(const std::vector<std::string>& rule_paths,
                         const std::string& out_path) {
  std::ostringstream csv;
  csv << "file,ade,cardinality,onenorm,weight_sum,stability,cauchy_schwarz_bound,slack\n";
  csv.precision(10);
  for (const auto& path : rule_paths) {
    RuleFile rf = load_rule(path);
    StabilityRow row = stability_row(rf.rule);
    csv << path << ',' << row.ade << ',' << row.cardinality << ',' << row.onenorm << ','
        << row.weight_sum << ',' << row.stability << ',' << row.cauchy_schwarz << ','
        << row.slack << "\n";
  }
  write_text(csv.str(), out_path);
  return kExitOk;
}

int cmd_bench(const std::string& element_path, const std::string& csg_path, long long points,
              std::uint64_t seed, const std::string& ade_list, int repeats, bool skip_setup,
              const std::string& out_path) {
  std::vector<double> ades = parse_csv_doubles(ade_list);
  std::ostringstream csv;
  csv << "ade,cardinality,repeats,setup_ms,moments_ms,compress_ms\n";
  csv.precision(6);

  std::optional<SplineElement> element;
  std::optional<PointCloud> cloud;
  if (!element_path.empty()) {
    element = load_element(element_path);
  } else if (!csg_path.empty()) {
    IndicatorDomain domain = load_csg(csg_path);
    cloud = qmc_measure(domain, domain.suggested_box(), points, seed);
  } else {
    throw std::invalid_argument("bench needs --element or --csg");
  }

  for (double ade_d : ades) {
    const int n = static_cast<int>(ade_d);
    BenchRow row = element ? bench_element(*element, n, repeats) : bench_qmc(*cloud, n, repeats);
    csv << row.ade << ',' << row.cardinality << ',' << row.repeats << ','
        << (skip_setup ? 0.0 : row.setup_ms) << ',' << row.moments_ms << ','
        << row.compress_ms << "\n";
  }
  write_text(csv.str(), out_path);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"signed quadrature rules by moment-based measure compression"};
  app.require_subcommand(1);

  // compress-spline
  auto* cs = app.add_subcommand("compress-spline", "compress a planar spline element");
  std::string cs_element, cs_out;
  int cs_ade = 0;
  cs->add_option("--element", cs_element, "element JSON file")->required();
  cs->add_option("--ade", cs_ade, "algebraic degree of exactness")->required()
      ->check(CLI::NonNegativeNumber);
  cs->add_option("--out", cs_out, "output rule file")->required();

  // compress-qmc
  auto* cq = app.add_subcommand("compress-qmc", "compress a QMC measure on a CSG domain");
  std::string cq_csg, cq_out;
  long long cq_points = 100000;
  int cq_ade = 0;
  std::uint64_t cq_seed = 0;
  std::vector<double> cq_box;
  cq->add_option("--csg", cq_csg, "CSG JSON file")->required();
  cq->add_option("--points", cq_points, "Halton count K in the bounding box");
  cq->add_option("--ade", cq_ade, "algebraic degree of exactness")->required()
      ->check(CLI::NonNegativeNumber);
  cq->add_option("--seed", cq_seed, "ray-casting retry seed (recorded in the rule file)");
  cq->add_option("--box", cq_box, "override bounding box: xlo,ylo,zlo,xhi,yhi,zhi")
      ->delimiter(',')->expected(6);
  cq->add_option("--out", cq_out, "output rule file")->required();

  // verify
  auto* vf = app.add_subcommand("verify", "random-polynomial exactness trials");
  std::string vf_rule, vf_source, vf_coeffs, vf_out;
  int vf_trials = 100;
  std::uint64_t vf_seed = 1;
  vf->add_option("--rule", vf_rule, "rule file")->required();
  vf->add_option("--source", vf_source, "element or CSG file the rule was built from")->required();
  vf->add_option("--trials", vf_trials, "number of random trials");
  vf->add_option("--seed", vf_seed, "trial coefficient seed");
  vf->add_option("--coeffs", vf_coeffs, "fixed coefficients c0,c1,... instead of random draws");
  vf->add_option("--out", vf_out, "CSV output path (default: stdout)");

  // test-functions
  auto* tf = app.add_subcommand("test-functions", "integrate the reference function family");
  std::string tf_rule, tf_source, tf_family, tf_singular, tf_out;
  int tf_reference_ade = 30;
  long long tf_reference_points = 1000000;
  tf->add_option("--rule", tf_rule, "rule file")->required();
  tf->add_option("--source", tf_source, "element or CSG file the rule was built from")->required();
  tf->add_option("--family", tf_family, "2d or 3d")->required();
  tf->add_option("--singular", tf_singular, "singular point of f2/f3 (defaults per family)");
  tf->add_option("--reference-ade", tf_reference_ade, "reference rule degree (2d family)");
  tf->add_option("--reference-points", tf_reference_points, "reference QMC count (3d family)");
  tf->add_option("--out", tf_out, "CSV output path (default: stdout)");

  // report-stability
  auto* rs = app.add_subcommand("report-stability", "stability parameters and bound slacks");
  std::vector<std::string> rs_rules;
  std::string rs_out;
  rs->add_option("rules", rs_rules, "rule files")->required();
  rs->add_option("--out", rs_out, "CSV output path (default: stdout)");

  // bench
  auto* bn = app.add_subcommand("bench", "construction timings per pipeline stage");
  std::string bn_element, bn_csg, bn_ades = "2,4,6,8,10,12,14,16", bn_out;
  long long bn_points = 100000;
  std::uint64_t bn_seed = 0;
  int bn_repeats = 100;
  bool bn_skip_setup = false;
  bn->add_option("--element", bn_element, "element JSON file");
  bn->add_option("--csg", bn_csg, "CSG JSON file");
  bn->add_option("--points", bn_points, "Halton count for the QMC measure");
  bn->add_option("--seed", bn_seed, "ray-casting retry seed");
  bn->add_option("--ade-list", bn_ades, "comma-separated degrees");
  bn->add_option("--repeats", bn_repeats, "repeats per degree (median reported)");
  bn->add_flag("--skip-setup", bn_skip_setup, "report 0 for the reusable setup stage");
  bn->add_option("--out", bn_out, "CSV output path (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return kExitValidation;
  }

  try {
    if (cs->parsed()) return cmd_compress_spline(cs_element, cs_ade, cs_out);
    if (cq->parsed()) return cmd_compress_qmc(cq_csg, cq_points, cq_ade, cq_seed, cq_box, cq_out);
    if (vf->parsed()) return cmd_verify(vf_rule, vf_source, vf_trials, vf_seed, vf_coeffs, vf_out);
    if (tf->parsed())
      return cmd_test_functions(tf_rule, tf_source, tf_family, tf_singular, tf_reference_ade,
                                tf_reference_points, tf_out);
    if (rs->parsed()) return cmd_report_stability(rs_rules, rs_out);
    if (bn->parsed())
      return cmd_bench(bn_element, bn_csg, bn_points, bn_seed, bn_ades, bn_repeats,
                       bn_skip_setup, bn_out);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitInternal;
}
