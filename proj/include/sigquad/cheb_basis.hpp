#pragma once

#include <array>
#include <span>
#include <vector>

#include "sigquad/box.hpp"

namespace sigquad {

/// Exponent tuple (i1,...,id); unused entries stay zero.
struct MultiIndex {
  std::array<int, 3> e{};
  int total() const { return e[0] + e[1] + e[2]; }
  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;
};

/// Orthonormal product Chebyshev basis of total degree <= n on a box.
///
/// The underlying measure is the pushforward of the product Chebyshev
/// measure under the affine map onto the box, so its mass is pi^d
/// regardless of the box, and the basis values at mapped points do not
/// depend on the box either.  Basis functions are products of
/// tau_0 = 1/sqrt(pi), tau_m = sqrt(2/pi) T_m (m >= 1) in the reference
/// coordinate of each axis.  The ordering is graded lexicographic:
/// sorted by total degree, ties broken lexicographically on (i1,...,id);
/// order()[0] is the constant.
class ChebBasis {
 public:
  ChebBasis(const BoxDomain& box, int degree);

  const BoxDomain& box() const { return box_; }
  int degree() const { return degree_; }
  int dim() const { return box_.dim(); }
  int size() const { return static_cast<int>(order_.size()); }
  /// lambda(B) = pi^dim.
  double mass() const { return box_.chebyshev_mass(); }
  const std::vector<MultiIndex>& order() const { return order_; }

  /// Writes p_j(point), j = 0..N-1, into out. Points outside the box are
  /// allowed; values follow the polynomial extension.
  void eval(std::span<const double> point, std::span<double> out) const;
  std::vector<double> eval(std::span<const double> point) const;

  /// Christoffel polynomial K_n(x,x) = sum_j p_j(x)^2.
  double christoffel(std::span<const double> point) const;

  /// Chebyshev-coefficient form of a P_j with dP_j/dx = p_j (d = 2 only):
  /// P_j(x,y) = [sum_k x_coeffs[k] T_k(xhat)] * tau_{y_index}(yhat).
  /// The x half-width of the box is folded into x_coeffs; the integration
  /// constant is fixed to zero.
  struct XAntiderivative {
    std::vector<double> x_coeffs;
    int y_index = 0;
  };
  XAntiderivative antiderivative_x(int j) const;

  /// Evaluates the P_j defined by antiderivative_x (d = 2 only).
  double eval_antiderivative(int j, std::span<const double> point) const;

  friend bool operator==(const ChebBasis&, const ChebBasis&) = default;

 private:
  BoxDomain box_;
  int degree_;
  std::vector<MultiIndex> order_;
};

/// Scratch-reusing evaluator for hot loops (not thread-safe; make one per
/// thread).  Produces exactly the same values as ChebBasis::eval.
class BasisEvaluator {
 public:
  explicit BasisEvaluator(const ChebBasis& basis);
  void operator()(std::span<const double> point, std::span<double> out);

 private:
  const ChebBasis* basis_;
  std::vector<double> tau_;  // (degree+1) values per axis
};

/// Orthonormal 1D values tau_0..tau_n at xhat (reference coordinate).
void eval_tau(double xhat, int n, double* tau);

}  // namespace sigquad
