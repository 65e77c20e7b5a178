#include "sigquad/compress.hpp"

#include <atomic>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "sigquad/util.hpp"

namespace sigquad {

double MomentVector::norm2() const {
  double s = 0.0;
  for (double v : values) s += v * v;
  return std::sqrt(s);
}

double SignedRule::weight_sum() const {
  double s = 0.0;
  for (double w : weights) s += w;
  return s;
}

CompressionPlan::CompressionPlan(const ChebBasis& basis, const QuadRule& rule)
    : basis_(basis), rule_(rule) {
  if (!(rule.box == basis.box()))
    throw std::invalid_argument("CompressionPlan: rule box differs from basis box");
  if (rule.ade < 2 * basis.degree())
    throw std::invalid_argument("CompressionPlan: rule ade " + std::to_string(rule.ade) +
                                " below 2*degree " + std::to_string(2 * basis.degree()));

  const int m = rule.size();
  const int n_funcs = basis.size();
  vandermonde_.resize(static_cast<std::size_t>(m) * n_funcs);
  BasisEvaluator evaluate(basis_);
  for (int i = 0; i < m; ++i)
    evaluate(std::span<const double>(rule.node(i), rule.dim()),
             std::span<double>(vandermonde_.data() + static_cast<std::size_t>(i) * n_funcs,
                               n_funcs));
}

SignedRule CompressionPlan::apply(const MomentVector& m, const CompressOptions& opts) const {
  if (!(m.basis == basis_))
    throw std::invalid_argument("compress: moment vector was built for a different basis");
  const int n_funcs = basis_.size();
  if (static_cast<int>(m.values.size()) != n_funcs)
    throw std::invalid_argument("compress: moment vector has wrong length");
  for (double v : m.values)
    if (!std::isfinite(v)) throw std::invalid_argument("compress: non-finite moment");

  const int n_nodes = rule_.size();
  SignedRule out{basis_, basis_.degree(), rule_.nodes, std::vector<double>(n_nodes), 0, 0, 0};

  // w_i = u_i * sum_j V_ij m_j, accumulated row-major over the basis
  // index so results are bitwise reproducible.
  for (int i = 0; i < n_nodes; ++i) {
    const double* row = vandermonde_.data() + static_cast<std::size_t>(i) * n_funcs;
    double s = 0.0;
    if (opts.compensated) {
      double c = 0.0;
      for (int j = 0; j < n_funcs; ++j) {
        double y = row[j] * m.values[j] - c;
        double t = s + y;
        c = (t - s) - y;
        s = t;
      }
    } else {
      for (int j = 0; j < n_funcs; ++j) s += row[j] * m.values[j];
    }
    out.weights[i] = rule_.weights[i] * s;
  }

  // Diagnostics: residual of V^t w = m, 1-norm, stability.
  double residual = 0.0;
  for (int j = 0; j < n_funcs; ++j) {
    double s = 0.0;
    for (int i = 0; i < n_nodes; ++i)
      s += vandermonde_[static_cast<std::size_t>(i) * n_funcs + j] * out.weights[i];
    residual = std::max(residual, std::abs(s - m.values[j]));
  }
  out.moment_residual = residual;

  double onenorm = 0.0, sum = 0.0;
  for (double w : out.weights) {
    onenorm += std::abs(w);
    sum += w;
  }
  out.onenorm = onenorm;
  if (sum == 0.0)
    out.stability = onenorm == 0.0 ? 1.0 : std::numeric_limits<double>::infinity();
  else
    out.stability = onenorm / std::abs(sum);
  if (std::isfinite(out.stability) && out.stability > 10.0) {
    static std::atomic<int> reported{0};
    const int seen = reported.fetch_add(1);
    if (seen < 3)
      warn("stability parameter " + std::to_string(out.stability) +
           " exceeds 10; the target measure may be poorly covered by the box");
    else if (seen == 3)
      warn("further stability warnings suppressed");
  }
  return out;
}

SignedRule compress(const MomentVector& m, const QuadRule& rule, const CompressOptions& opts) {
  return CompressionPlan(m.basis, rule).apply(m, opts);
}

double cauchy_schwarz_bound(const MomentVector& m) {
  return std::sqrt(m.basis.mass()) * m.norm2();
}

double christoffel_bound(double mu_mass, const ChebBasis& basis, int grid_resolution) {
  if (mu_mass < 0.0) throw std::invalid_argument("christoffel_bound: mu_mass must be >= 0");
  if (grid_resolution < 2)
    throw std::invalid_argument("christoffel_bound: need at least 2 grid points per axis");

  const int d = basis.dim();
  long long total = 1;
  for (int k = 0; k < d; ++k) total *= grid_resolution;

  double max_k = 0.0;
  std::array<double, 3> point{};
  for (long long idx = 0; idx < total; ++idx) {
    long long rest = idx;
    for (int k = 0; k < d; ++k) {
      const long long g = rest % grid_resolution;
      rest /= grid_resolution;
      point[k] = basis.box().lo(k) +
                 basis.box().length(k) * static_cast<double>(g) / (grid_resolution - 1);
    }
    max_k = std::max(max_k, basis.christoffel(std::span<const double>(point.data(), d)));
  }
  return std::sqrt(basis.mass()) * mu_mass * std::sqrt(max_k);
}

double christoffel_bound_square(double mu_mass, int degree) {
  if (mu_mass < 0.0) throw std::invalid_argument("christoffel_bound_square: mu_mass must be >= 0");
  const double n = degree;
  return mu_mass * std::sqrt(2.0 * n * n + 2.0 * n + 1.0);
}

double density_bound(double omega2_over_sigma_l1, double lambda_mass) {
  if (omega2_over_sigma_l1 < 0.0 || lambda_mass < 0.0)
    throw std::invalid_argument("density_bound: inputs must be >= 0");
  return std::sqrt(lambda_mass) * std::sqrt(omega2_over_sigma_l1);
}

double stability_parameter(const SignedRule& rule) {
  const double sum = rule.weight_sum();
  if (sum == 0.0)
    throw std::invalid_argument("stability_parameter: weight sum is zero (degenerate measure)");
  double onenorm = 0.0;
  for (double w : rule.weights) onenorm += std::abs(w);
  return onenorm / std::abs(sum);
}

ErrorBudget error_budget(double en_estimate, double moment_error, double sample_error,
                         double f_l2_norm, double mu_mass, double w_onenorm,
                         double lambda_mass) {
  for (double v : {en_estimate, moment_error, sample_error, f_l2_norm, mu_mass, w_onenorm,
                   lambda_mass})
    if (v < 0.0 || !std::isfinite(v))
      throw std::invalid_argument("error_budget: inputs must be finite and >= 0");

  ErrorBudget b;
  b.en_estimate = en_estimate;
  b.moment_error = moment_error;
  b.sample_error = sample_error;
  b.f_l2_norm = f_l2_norm;
  b.mu_mass = mu_mass;
  b.w_onenorm = w_onenorm;
  b.lambda_mass = lambda_mass;

  const double sqrt_lambda = std::sqrt(lambda_mass);
  b.total = (mu_mass + w_onenorm) * en_estimate + w_onenorm * sample_error +
            (f_l2_norm + sqrt_lambda * (en_estimate + sample_error)) * moment_error;
  b.approx_total = (mu_mass + w_onenorm) * en_estimate + w_onenorm * sample_error +
                   f_l2_norm * moment_error;
  return b;
}

}  // namespace sigquad
