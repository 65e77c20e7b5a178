#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <stdexcept>

#include "sigquad/harness.hpp"
#include "sigquad/io.hpp"
#include "sigquad/util.hpp"
#include "test_support.hpp"

using namespace sigquad;
using nlohmann::json;

namespace {
const std::filesystem::path kDataDir = SIGQUAD_DATA_DIR;

std::filesystem::path temp_file(const char* name) {
  return std::filesystem::temp_directory_path() / name;
}
}  // namespace

TEST_CASE("element files") {
  SUBCASE("harness elements load") {
    SplineElement e = load_element(kDataDir / "elements/nonconvex_quad_cubic.json");
    CHECK(e.sides.size() == 5);
    SplineElement c = load_element(kDataDir / "elements/convex_hex_cubic.json");
    CHECK(c.sides.size() == 7);
  }

  SUBCASE("malformed element files are rejected") {
    CHECK_THROWS_AS(parse_element(json::parse(R"({"no_sides": []})")), std::invalid_argument);
    CHECK_THROWS_AS(parse_element(json::parse(
                        R"({"sides": [{"degree": 1, "knots": [[0,0]]}]})")),
                    std::invalid_argument);
    CHECK_THROWS_AS(load_element("/nonexistent/file.json"), std::invalid_argument);
  }
}

TEST_CASE("csg files") {
  SUBCASE("harness domains load") {
    IndicatorDomain a = load_csg(kDataDir / "csg/ball_cut_polyhedron.json");
    CHECK(a.kind() == IndicatorDomain::Kind::Intersection);
    CHECK(a.children().size() == 2);
    CHECK(a.children()[1].as_polyhedron().vertices.size() == 20);
    CHECK(a.children()[1].as_polyhedron().facets.size() == 36);

    IndicatorDomain b = load_csg(kDataDir / "csg/five_ball_union.json");
    CHECK(b.kind() == IndicatorDomain::Kind::Union);
    CHECK(b.children().size() == 5);
  }

  SUBCASE("nested ops and difference parse") {
    IndicatorDomain d = parse_csg(json::parse(R"({
      "op": "difference",
      "children": [
        {"ball": {"center": [0,0,0], "radius": 1.0}},
        {"op": "union", "children": [{"ball": {"center": [0.8,0,0], "radius": 0.3}}]}
      ]})"));
    CHECK(d.contains({0.0, 0.0, 0.0}));
    CHECK(!d.contains({0.8, 0.0, 0.0}));
  }

  SUBCASE("malformed csg rejected") {
    CHECK_THROWS_AS(parse_csg(json::parse(R"({"op": "xor", "children": []})")),
                    std::invalid_argument);
    CHECK_THROWS_AS(parse_csg(json::parse(R"({"neither": 1})")), std::invalid_argument);
  }
}

TEST_CASE("rule files round-trip bitwise") {
  SplineElement e = load_element(kDataDir / "elements/nonconvex_quad_cubic.json");
  SignedRule rule = compress_element(e, 7);

  RuleFile rf{kRuleSchemaVersion, rule,
              RuleProvenance{"spline", "elements/nonconvex_quad_cubic.json",
                             hash_file(kDataDir / "elements/nonconvex_quad_cubic.json"), 0, 0}};
  const auto path = temp_file("sigquad_rule_roundtrip.json");
  save_rule(rf, path);
  RuleFile back = load_rule(path);

  REQUIRE(back.rule.size() == rule.size());
  for (int i = 0; i < rule.size(); ++i) {
    CHECK(back.rule.weights[i] == rule.weights[i]);
    CHECK(back.rule.nodes[2 * i] == rule.nodes[2 * i]);
    CHECK(back.rule.nodes[2 * i + 1] == rule.nodes[2 * i + 1]);
  }
  CHECK(back.rule.ade == rule.ade);
  CHECK(back.rule.basis == rule.basis);
  CHECK(back.provenance.kind == "spline");
  CHECK(back.provenance.source_hash == rf.provenance.source_hash);

  // re-verification from the file alone: the stored rule still matches the
  // element's moments
  ChebBasis basis = back.rule.basis;
  MomentVector m = greens_moments(e, basis);
  double residual = 0.0;
  std::vector<double> vals(basis.size());
  for (int j = 0; j < basis.size(); ++j) {
    double s = 0.0;
    for (int i = 0; i < back.rule.size(); ++i) {
      basis.eval(std::span<const double>(back.rule.node(i), 2), vals);
      s += vals[j] * back.rule.weights[i];
    }
    residual = std::max(residual, std::abs(s - m.values[j]));
  }
  CHECK(residual <= 1e-12);
  std::filesystem::remove(path);
}

TEST_CASE("rule file validation") {
  CHECK_THROWS_AS(rule_from_json(json::parse(R"({"schema": "other"})")), std::invalid_argument);
  json j = json::parse(R"({
    "schema": "sigquad/rule", "version": 1, "dimension": 2, "ade": 0,
    "basis": {"box": {"lo": [0,0], "hi": [1,1]}, "ordering": "graded-lexicographic"},
    "nodes": [[0.5, 0.5]], "weights": [1.0, 2.0],
    "diagnostics": {"moment_residual": 0, "stability": 1, "onenorm": 1}
  })");
  CHECK_THROWS_AS(rule_from_json(j), std::invalid_argument);  // node/weight mismatch
}

TEST_CASE("stability report row recovers the 1-norm bound") {
  SplineElement e = load_element(kDataDir / "elements/convex_hex_cubic.json");
  SignedRule rule = compress_element(e, 8);
  StabilityRow row = stability_row(rule);
  CHECK(row.ade == 8);
  CHECK(row.cardinality == 81);
  CHECK(row.stability == doctest::Approx(rule.stability).epsilon(1e-14));
  CHECK(row.slack >= -1e-12);  // ||w||_1 <= sqrt(lambda) ||m||_2
}

TEST_CASE("bench rows have the expected shape") {
  SplineElement e = load_element(kDataDir / "elements/convex_hex_cubic.json");
  BenchRow row = bench_element(e, 6, 5);
  CHECK(row.ade == 6);
  CHECK(row.cardinality == 49);
  CHECK(row.repeats == 5);
  CHECK(row.setup_ms >= 0.0);
  CHECK(row.moments_ms >= 0.0);
  CHECK(row.compress_ms >= 0.0);
}

TEST_CASE("compression cost scales like the matrix-vector product") {
  // no factorization anywhere: the per-element work is one N*M product,
  // so the log-log slope between two sizes stays near one
  SplineElement e = load_element(kDataDir / "elements/convex_hex_cubic.json");
  BenchRow small = bench_element(e, 16, 51);
  BenchRow large = bench_element(e, 30, 51);
  const double size_ratio = (496.0 * 961.0) / (153.0 * 289.0);  // (N*M) at 30 vs 16
  const double time_ratio = std::max(large.compress_ms, 1e-6) / std::max(small.compress_ms, 1e-6);
  const double slope = std::log(time_ratio) / std::log(size_ratio);
  MESSAGE("compress slope in N*M: ", slope);
  CHECK(slope <= 1.6);  // generous: timing noise, not a performance gate
}

TEST_CASE("test function machinery sanity") {
  SplineElement e = load_element(kDataDir / "elements/convex_hex_cubic.json");
  SignedRule rule = compress_element(e, 6);

  // a constant integrand is exact at any degree
  const double reference = rule.weight_sum();
  const double value = rule_integrate_2d(rule, [](double, double) { return 1.0; });
  CHECK(std::abs(value - reference) / std::abs(reference) <= 1e-14);

  FunctionErrors fe = test_function_errors_spline(e, rule, {0.51, 0.26});
  for (double err : fe.values) {
    CHECK(err >= 0.0);
    CHECK(err < 1.0);
  }
}
