#pragma once

#include <vector>

#include "sigquad/box.hpp"
#include "sigquad/cheb_basis.hpp"

namespace sigquad {

/// Positive quadrature rule. `ade` is the claimed algebraic degree of
/// exactness; verify_rule_exactness checks the claim against a basis.
struct QuadRule {
  BoxDomain box;
  int ade = 0;
  std::vector<double> nodes;    // size() * box.dim(), node-major
  std::vector<double> weights;  // all strictly positive

  int size() const { return static_cast<int>(weights.size()); }
  int dim() const { return box.dim(); }
  const double* node(int i) const { return nodes.data() + static_cast<std::size_t>(i) * box.dim(); }
  double weight_sum() const;
};

/// Tensorial Gauss-Chebyshev rule for the mapped product Chebyshev
/// measure on the box: (n+1)^d nodes, equal weights (pi/(n+1))^d, exact
/// for every polynomial of total degree <= 2n (ade = 2n).  The reference
/// rule is cached per (dim, n); only the affine map depends on the box.
QuadRule gauss_chebyshev_box(const BoxDomain& box, int n);

/// q-point Gauss-Legendre rule on [-1,1] for the Lebesgue measure
/// (ade = 2q-1).  Nodes by Newton iteration from Chebyshev-point initial
/// guesses, tolerance 1e-15, at most 100 iterations.
QuadRule gauss_legendre(int q);

/// Max orthogonality residual |V^t D V - I|_max of the rule against the
/// basis, by explicit summation.  Requires rule.ade >= 2*basis.degree()
/// and matching boxes; a residual of order one exposes an overstated
/// ade claim.
double verify_rule_exactness(const QuadRule& rule, const ChebBasis& basis);

}  // namespace sigquad
