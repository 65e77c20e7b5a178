#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "sigquad/compress.hpp"
#include "sigquad/qmc.hpp"
#include "sigquad/spline_element.hpp"

namespace sigquad {

/// Geometric mean computed in log space (underflow-safe near machine
/// precision).  Zero entries are floored at the smallest positive double.
double geometric_mean(std::span<const double> values);

/// Lebesgue moments of x^a y^b, a+b <= n, over a spline element by
/// Gauss-Green on the monomial antiderivatives x^(a+1)/(a+1) y^b.  This is
/// the reference route, independent of the Chebyshev pipeline.  Entry
/// layout: value(a,b) at index a*(n+1)+b.
std::vector<double> monomial_moments(const SplineElement& element, int n);

/// Reference integral of (c[0] + c[1] x + c[2] y)^n over the element via
/// multinomial expansion against monomial_moments output.
double spline_polynomial_reference(std::span<const double> monomials, int n,
                                   std::array<double, 3> c);

/// sum_i w_i (c0 + c . x_i)^n at the rule nodes (2D or 3D).
double rule_polynomial_value(const SignedRule& rule, std::span<const double> c, int n);

/// Full QMC value nu * sum_i (c0 + c . Q_i)^n.
double cloud_polynomial_value(const PointCloud& cloud, std::span<const double> c, int n);

struct TrialReport {
  int ade = 0;
  int trials = 0;
  std::uint64_t seed = 0;
  std::vector<double> errors;  // one relative error per trial
  double geomean = 0.0;
  double reference_ms = 0.0;   // wall clock spent on reference values
  double rule_ms = 0.0;        // wall clock spent on the compressed side
};

/// Random-polynomial exactness trials (c_j uniform in (0,1), seeded).
/// `fixed_coeffs`, when set, replaces the random draw in every trial.
TrialReport verify_spline_rule(const SplineElement& element, const SignedRule& rule,
                               int trials, std::uint64_t seed,
                               std::optional<std::array<double, 3>> fixed_coeffs = {});
TrialReport verify_qmc_rule(const PointCloud& cloud, const SignedRule& rule,
                            int trials, std::uint64_t seed,
                            std::optional<std::array<double, 4>> fixed_coeffs = {});

/// Test function family: f1 entire, f2/f3 with derivative singularities at
/// the given interior point.
std::function<double(double, double)> test_function_2d(int which, std::array<double, 2> singular);
std::function<double(double, double, double)> test_function_3d(int which, std::array<double, 3> singular);

inline constexpr std::array<double, 2> kDefaultSingular2d = {0.51, 0.26};
inline constexpr std::array<double, 3> kDefaultSingular3dA = {0.51, 0.26, 0.63};
inline constexpr std::array<double, 3> kDefaultSingular3dB = {0.21, 0.36, 0.51};

double rule_integrate_2d(const SignedRule& rule, const std::function<double(double, double)>& f);
double rule_integrate_3d(const SignedRule& rule, const std::function<double(double, double, double)>& f);

struct FunctionErrors {
  std::array<double, 3> values{};  // relative errors for f1, f2, f3
};

/// 2D: errors of the rule against a reference rule of the given ade
/// (default 30) on the same element.
FunctionErrors test_function_errors_spline(const SplineElement& element, const SignedRule& rule,
                                           std::array<double, 2> singular,
                                           int reference_ade = 30);

/// 3D: errors of an arbitrary value triple against a reference cloud
/// (K = 1e6 in the standard protocol).
FunctionErrors test_function_errors_qmc(const PointCloud& reference_cloud,
                                        const std::function<double(const std::function<double(double, double, double)>&)>& integrate,
                                        std::array<double, 3> singular);

struct StabilityRow {
  int ade = 0;
  int cardinality = 0;
  double onenorm = 0.0;
  double weight_sum = 0.0;
  double stability = 0.0;
  double cauchy_schwarz = 0.0;  // sqrt(lambda(B)) ||V^t w||_2
  double slack = 0.0;           // cauchy_schwarz - onenorm
};

/// Recomputes m = V^t w from the rule itself, then the 1-norm bound slack.
StabilityRow stability_row(const SignedRule& rule);

struct BenchRow {
  int ade = 0;
  int cardinality = 0;
  int repeats = 0;
  double setup_ms = 0.0;     // basis + auxiliary rule + basis-at-nodes table
  double moments_ms = 0.0;   // per-element moment computation
  double compress_ms = 0.0;  // matrix-vector product + diagnostics
};

BenchRow bench_element(const SplineElement& element, int n, int repeats);
BenchRow bench_qmc(const PointCloud& cloud, int n, int repeats);

}  // namespace sigquad
