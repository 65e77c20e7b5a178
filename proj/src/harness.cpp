#include "sigquad/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "sigquad/util.hpp"

namespace sigquad {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

double relative_error(double value, double reference) {
  if (reference == 0.0) return std::abs(value);
  return std::abs(value - reference) / std::abs(reference);
}

// trial errors are floored at machine epsilon so that exact-agreement
// trials do not drag the geometric mean below representable precision
double trial_error(double value, double reference) {
  return std::max(relative_error(value, reference), std::numeric_limits<double>::epsilon());
}

// binomials as doubles; exact for every entry that fits in 53 bits
std::vector<std::vector<double>> binomial_table(int n) {
  std::vector<std::vector<double>> b(n + 1);
  for (int i = 0; i <= n; ++i) {
    b[i].assign(i + 1, 1.0);
    for (int k = 1; k < i; ++k) b[i][k] = b[i - 1][k - 1] + b[i - 1][k];
  }
  return b;
}

double median_of(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

double geometric_mean(std::span<const double> values) {
  if (values.empty()) throw std::invalid_argument("geometric_mean: empty input");
  double log_sum = 0.0;
  for (double v : values)
    log_sum += std::log(std::max(v, std::numeric_limits<double>::min()));
  return std::exp(log_sum / static_cast<double>(values.size()));
}

std::vector<double> monomial_moments(const SplineElement& element, int n) {
  if (n < 0) throw std::invalid_argument("monomial_moments: degree must be >= 0");
  std::vector<double> moments(static_cast<std::size_t>(n + 1) * (n + 1), 0.0);
  std::vector<double> xpow(n + 2), ypow(n + 1);

  for (const auto& side : element.sides) {
    // x^(a+1) y^b psi' has degree at most delta*(n+2) - 1 in t
    const int q = (side.degree * (n + 2) + 1) / 2;
    QuadRule gl = gauss_legendre(q);
    for (const auto& piece : side.pieces) {
      for (int g = 0; g < gl.size(); ++g) {
        const double s = 0.5 * (gl.nodes[g] + 1.0);
        const double wgt = 0.5 * gl.weights[g];
        auto [x, y] = piece.at(s);
        const double dy = piece.derivative(s)[1];
        if (dy == 0.0) continue;

        xpow[0] = 1.0;
        for (int a = 1; a <= n + 1; ++a) xpow[a] = xpow[a - 1] * x;
        ypow[0] = 1.0;
        for (int b = 1; b <= n; ++b) ypow[b] = ypow[b - 1] * y;

        const double factor = wgt * dy;
        for (int a = 0; a <= n; ++a)
          for (int b = 0; b <= n - a; ++b)
            moments[static_cast<std::size_t>(a) * (n + 1) + b] +=
                factor * xpow[a + 1] / (a + 1) * ypow[b];
      }
    }
  }
  return moments;
}

double spline_polynomial_reference(std::span<const double> monomials, int n,
                                   std::array<double, 3> c) {
  const auto binom = binomial_table(n);
  double total = 0.0;
  for (int a = 0; a <= n; ++a)
    for (int b = 0; b <= n - a; ++b) {
      const double coef = binom[n][a] * binom[n - a][b] * ipow(c[1], a) * ipow(c[2], b) *
                          ipow(c[0], n - a - b);
      total += coef * monomials[static_cast<std::size_t>(a) * (n + 1) + b];
    }
  return total;
}

double rule_polynomial_value(const SignedRule& rule, std::span<const double> c, int n) {
  const int d = rule.dim();
  if (static_cast<int>(c.size()) != d + 1)
    throw std::invalid_argument("rule_polynomial_value: need d+1 coefficients");
  double s = 0.0;
  for (int i = 0; i < rule.size(); ++i) {
    const double* x = rule.node(i);
    double lin = c[0];
    for (int k = 0; k < d; ++k) lin += c[k + 1] * x[k];
    s += rule.weights[i] * ipow(lin, n);
  }
  return s;
}

double cloud_polynomial_value(const PointCloud& cloud, std::span<const double> c, int n) {
  if (c.size() != 4)
    throw std::invalid_argument("cloud_polynomial_value: need 4 coefficients");
  double s = 0.0;
  const long long l = cloud.size();
  for (long long i = 0; i < l; ++i) {
    const double* p = cloud.point(i);
    s += ipow(c[0] + c[1] * p[0] + c[2] * p[1] + c[3] * p[2], n);
  }
  return cloud.per_point_weight * s;
}

TrialReport verify_spline_rule(const SplineElement& element, const SignedRule& rule, int trials,
                               std::uint64_t seed,
                               std::optional<std::array<double, 3>> fixed_coeffs) {
  if (trials < 1) throw std::invalid_argument("verify_spline_rule: need at least one trial");
  if (rule.dim() != 2) throw std::invalid_argument("verify_spline_rule: need a 2D rule");
  const int n = rule.ade;

  TrialReport report{n, trials, seed, {}, 0.0, 0.0, 0.0};
  report.errors.reserve(trials);

  const auto t_ref = Clock::now();
  const std::vector<double> monomials = monomial_moments(element, n);
  report.reference_ms = ms_since(t_ref);

  Rng rng(seed);
  for (int t = 0; t < trials; ++t) {
    std::array<double, 3> c;
    if (fixed_coeffs)
      c = *fixed_coeffs;
    else
      c = {rng.uniform01(), rng.uniform01(), rng.uniform01()};

    const auto t_r = Clock::now();
    const double reference = spline_polynomial_reference(monomials, n, c);
    report.reference_ms += ms_since(t_r);

    const auto t_q = Clock::now();
    const double value = rule_polynomial_value(rule, c, n);
    report.rule_ms += ms_since(t_q);

    report.errors.push_back(trial_error(value, reference));
  }
  report.geomean = geometric_mean(report.errors);
  return report;
}

TrialReport verify_qmc_rule(const PointCloud& cloud, const SignedRule& rule, int trials,
                            std::uint64_t seed,
                            std::optional<std::array<double, 4>> fixed_coeffs) {
  if (trials < 1) throw std::invalid_argument("verify_qmc_rule: need at least one trial");
  if (rule.dim() != 3) throw std::invalid_argument("verify_qmc_rule: need a 3D rule");
  if (!(cloud.box == rule.basis.box()))
    throw std::invalid_argument("verify_qmc_rule: cloud box differs from rule box");
  const int n = rule.ade;

  TrialReport report{n, trials, seed, {}, 0.0, 0.0, 0.0};
  report.errors.reserve(trials);

  Rng rng(seed);
  for (int t = 0; t < trials; ++t) {
    std::array<double, 4> c;
    if (fixed_coeffs)
      c = *fixed_coeffs;
    else
      c = {rng.uniform01(), rng.uniform01(), rng.uniform01(), rng.uniform01()};

    const auto t_r = Clock::now();
    const double reference = cloud_polynomial_value(cloud, c, n);
    report.reference_ms += ms_since(t_r);

    const auto t_q = Clock::now();
    const double value = rule_polynomial_value(rule, c, n);
    report.rule_ms += ms_since(t_q);

    report.errors.push_back(trial_error(value, reference));
  }
  report.geomean = geometric_mean(report.errors);
  return report;
}

std::function<double(double, double)> test_function_2d(int which,
                                                       std::array<double, 2> singular) {
  switch (which) {
    case 1:
      return [](double x, double y) { return std::exp(-(x * x + y * y)); };
    case 2:
      return [singular](double x, double y) {
        const double r2 = (x - singular[0]) * (x - singular[0]) +
                          (y - singular[1]) * (y - singular[1]);
        return std::pow(r2, 5.5);
      };
    case 3:
      return [singular](double x, double y) {
        const double r2 = (x - singular[0]) * (x - singular[0]) +
                          (y - singular[1]) * (y - singular[1]);
        return std::pow(r2, 1.5);
      };
    default:
      throw std::invalid_argument("test_function_2d: which must be 1, 2 or 3");
  }
}

std::function<double(double, double, double)> test_function_3d(int which,
                                                               std::array<double, 3> singular) {
  switch (which) {
    case 1:
      return [](double x, double y, double z) { return std::exp(-(x * x + y * y + z * z)); };
    case 2:
      return [singular](double x, double y, double z) {
        const double r2 = (x - singular[0]) * (x - singular[0]) +
                          (y - singular[1]) * (y - singular[1]) +
                          (z - singular[2]) * (z - singular[2]);
        return std::pow(r2, 5.5);
      };
    case 3:
      return [singular](double x, double y, double z) {
        const double r2 = (x - singular[0]) * (x - singular[0]) +
                          (y - singular[1]) * (y - singular[1]) +
                          (z - singular[2]) * (z - singular[2]);
        return std::pow(r2, 1.5);
      };
    default:
      throw std::invalid_argument("test_function_3d: which must be 1, 2 or 3");
  }
}

double rule_integrate_2d(const SignedRule& rule, const std::function<double(double, double)>& f) {
  if (rule.dim() != 2) throw std::invalid_argument("rule_integrate_2d: need a 2D rule");
  double s = 0.0;
  for (int i = 0; i < rule.size(); ++i) {
    const double* x = rule.node(i);
    s += rule.weights[i] * f(x[0], x[1]);
  }
  return s;
}

double rule_integrate_3d(const SignedRule& rule,
                         const std::function<double(double, double, double)>& f) {
  if (rule.dim() != 3) throw std::invalid_argument("rule_integrate_3d: need a 3D rule");
  double s = 0.0;
  for (int i = 0; i < rule.size(); ++i) {
    const double* x = rule.node(i);
    s += rule.weights[i] * f(x[0], x[1], x[2]);
  }
  return s;
}

FunctionErrors test_function_errors_spline(const SplineElement& element, const SignedRule& rule,
                                           std::array<double, 2> singular, int reference_ade) {
  const SignedRule reference_rule = compress_element(element, reference_ade);
  FunctionErrors out;
  for (int which = 1; which <= 3; ++which) {
    const auto f = test_function_2d(which, singular);
    const double reference = rule_integrate_2d(reference_rule, f);
    const double value = rule_integrate_2d(rule, f);
    out.values[which - 1] = relative_error(value, reference);
  }
  return out;
}

FunctionErrors test_function_errors_qmc(
    const PointCloud& reference_cloud,
    const std::function<double(const std::function<double(double, double, double)>&)>& integrate,
    std::array<double, 3> singular) {
  FunctionErrors out;
  for (int which = 1; which <= 3; ++which) {
    const auto f = test_function_3d(which, singular);
    const double reference = qmc_integrate(reference_cloud, f);
    const double value = integrate(f);
    out.values[which - 1] = relative_error(value, reference);
  }
  return out;
}

StabilityRow stability_row(const SignedRule& rule) {
  StabilityRow row;
  row.ade = rule.ade;
  row.cardinality = rule.size();
  row.weight_sum = rule.weight_sum();

  double onenorm = 0.0;
  for (double w : rule.weights) onenorm += std::abs(w);
  row.onenorm = onenorm;
  row.stability = stability_parameter(rule);

  // recover the moments the rule matches: m = V^t w
  const ChebBasis& basis = rule.basis;
  const int n_funcs = basis.size();
  std::vector<double> m(n_funcs, 0.0);
  std::vector<double> vals(n_funcs);
  BasisEvaluator evaluate(basis);
  for (int i = 0; i < rule.size(); ++i) {
    evaluate(std::span<const double>(rule.node(i), rule.dim()), vals);
    for (int j = 0; j < n_funcs; ++j) m[j] += vals[j] * rule.weights[i];
  }
  double norm2 = 0.0;
  for (double v : m) norm2 += v * v;
  row.cauchy_schwarz = std::sqrt(basis.mass()) * std::sqrt(norm2);
  row.slack = row.cauchy_schwarz - row.onenorm;
  return row;
}

BenchRow bench_element(const SplineElement& element, int n, int repeats) {
  if (repeats < 1) throw std::invalid_argument("bench_element: need at least one repeat");
  const BoxDomain box = bounding_box(element);
  std::vector<double> setup_t(repeats), moments_t(repeats), compress_t(repeats);

  BenchRow row;
  for (int r = 0; r < repeats; ++r) {
    auto t0 = Clock::now();
    ChebBasis basis(box, n);
    QuadRule rule = gauss_chebyshev_box(box, n);
    CompressionPlan plan(basis, rule);
    setup_t[r] = ms_since(t0);

    t0 = Clock::now();
    MomentVector m = greens_moments(element, basis);
    moments_t[r] = ms_since(t0);

    t0 = Clock::now();
    SignedRule out = plan.apply(m);
    compress_t[r] = ms_since(t0);
    row.cardinality = out.size();
  }
  row.ade = n;
  row.repeats = repeats;
  row.setup_ms = median_of(setup_t);
  row.moments_ms = median_of(moments_t);
  row.compress_ms = median_of(compress_t);
  return row;
}

BenchRow bench_qmc(const PointCloud& cloud, int n, int repeats) {
  if (repeats < 1) throw std::invalid_argument("bench_qmc: need at least one repeat");
  std::vector<double> setup_t(repeats), moments_t(repeats), compress_t(repeats);

  BenchRow row;
  for (int r = 0; r < repeats; ++r) {
    auto t0 = Clock::now();
    ChebBasis basis(cloud.box, n);
    QuadRule rule = gauss_chebyshev_box(cloud.box, n);
    CompressionPlan plan(basis, rule);
    setup_t[r] = ms_since(t0);

    t0 = Clock::now();
    MomentVector m = qmc_moments(cloud, basis);
    moments_t[r] = ms_since(t0);

    t0 = Clock::now();
    SignedRule out = plan.apply(m);
    compress_t[r] = ms_since(t0);
    row.cardinality = out.size();
  }
  row.ade = n;
  row.repeats = repeats;
  row.setup_ms = median_of(setup_t);
  row.moments_ms = median_of(moments_t);
  row.compress_ms = median_of(compress_t);
  return row;
}

}  // namespace sigquad
