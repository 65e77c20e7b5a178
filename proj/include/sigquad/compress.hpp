#pragma once

#include <vector>

#include "sigquad/cheb_basis.hpp"
#include "sigquad/quad_rules.hpp"

namespace sigquad {

/// Moments m_j = integral of p_j over the target measure, paired with the
/// basis they were taken in.
struct MomentVector {
  ChebBasis basis;
  std::vector<double> values;

  double norm2() const;
};

/// Discrete signed measure (X, w): the compression output.  Weights may be
/// negative; stability is ||w||_1 / |sum w|.
struct SignedRule {
  ChebBasis basis;
  int ade = 0;
  std::vector<double> nodes;  // size() * dim, node-major
  std::vector<double> weights;
  double moment_residual = 0.0;  // |V^t w - m|_max
  double stability = 1.0;        // ||w||_1 / |sum w|
  double onenorm = 0.0;          // ||w||_1

  int size() const { return static_cast<int>(weights.size()); }
  int dim() const { return basis.dim(); }
  const double* node(int i) const { return nodes.data() + static_cast<std::size_t>(i) * dim(); }
  double weight_sum() const;
};

struct CompressOptions {
  bool compensated = false;  // Kahan accumulation in the product (off by default)
};

/// Basis values at the rule nodes, precomputed once and reused across
/// moment vectors (the per-mesh startup work).
class CompressionPlan {
 public:
  CompressionPlan(const ChebBasis& basis, const QuadRule& rule);

  /// w_i = u_i * sum_j p_j(x_i) m_j — a diagonal scaling of one
  /// matrix-vector product.  No factorization or solve anywhere.
  SignedRule apply(const MomentVector& m, const CompressOptions& opts = {}) const;

  const ChebBasis& basis() const { return basis_; }
  const QuadRule& rule() const { return rule_; }

 private:
  ChebBasis basis_;
  QuadRule rule_;
  std::vector<double> vandermonde_;  // M x N, node-major
};

SignedRule compress(const MomentVector& m, const QuadRule& rule,
                    const CompressOptions& opts = {});

/// sqrt(lambda(B)) * ||m||_2; every compression satisfies ||w||_1 <= this.
double cauchy_schwarz_bound(const MomentVector& m);

/// sqrt(lambda(B)) * mu(Omega) * sqrt(max K_n over a uniform grid with
/// `grid_resolution` points per axis).  The grid max is a lower bound of
/// the true max, so the returned value can slightly underestimate the
/// rigorous bound.
double christoffel_bound(double mu_mass, const ChebBasis& basis, int grid_resolution);

/// Closed form of the same bound on [-1,1]^2:
/// mu(Omega) * sqrt(2n^2 + 2n + 1).
double christoffel_bound_square(double mu_mass, int degree);

/// sqrt(lambda(B)) * sqrt(||omega^2/sigma||_L1(Omega)); the L1 integral is
/// supplied by the caller.
double density_bound(double omega2_over_sigma_l1, double lambda_mass);

/// ||w||_1 / |sum w| >= 1; throws when the weight sum vanishes.
double stability_parameter(const SignedRule& rule);

/// Cumulative worst-case quadrature error for perturbed moments and
/// perturbed samples.  `total` keeps the products-of-errors term,
/// `approx_total` drops it.
struct ErrorBudget {
  double en_estimate = 0.0;   // best uniform approximation error E_n(f;B)
  double moment_error = 0.0;  // ||m - m~||_2
  double sample_error = 0.0;  // ||f - f~||_inf at the nodes
  double f_l2_norm = 0.0;     // ||f||_L2_lambda(B)
  double mu_mass = 0.0;       // mu(Omega)
  double w_onenorm = 0.0;     // ||w||_1
  double lambda_mass = 0.0;   // lambda(B)
  double total = 0.0;
  double approx_total = 0.0;
};

ErrorBudget error_budget(double en_estimate, double moment_error, double sample_error,
                         double f_l2_norm, double mu_mass, double w_onenorm,
                         double lambda_mass);

}  // namespace sigquad
