#pragma once

#include <array>
#include <span>
#include <vector>

#include "sigquad/box.hpp"
#include "sigquad/compress.hpp"

namespace sigquad {

/// One polynomial segment of a boundary arc, in the local parameter
/// s in [0,1]: coordinate(s) = c[0] + c[1] s + c[2] s^2 + c[3] s^3.
struct PolyPiece {
  std::array<double, 4> x{};
  std::array<double, 4> y{};
  int degree = 1;

  std::array<double, 2> at(double s) const {
    return {((x[3] * s + x[2]) * s + x[1]) * s + x[0],
            ((y[3] * s + y[2]) * s + y[1]) * s + y[0]};
  }
  std::array<double, 2> derivative(double s) const {
    return {(3.0 * x[3] * s + 2.0 * x[2]) * s + x[1],
            (3.0 * y[3] * s + 2.0 * y[2]) * s + y[1]};
  }
};

/// Boundary arc interpolating its knots over the uniform parameter grid
/// t = 0,1,...,m-1; `degree` is the effective piece degree actually built.
struct SplineArcSide {
  int degree = 1;
  std::vector<std::array<double, 2>> knots;
  std::vector<PolyPiece> pieces;  // knots.size() - 1 entries

  std::array<double, 2> front() const { return knots.front(); }
  std::array<double, 2> back() const { return knots.back(); }
};

/// degree 1: the chords.  degree 3: per-coordinate cubic spline
/// interpolation with not-a-knot end conditions; with fewer than four
/// knots the side degenerates to the interpolating polynomial (with a
/// warning).  Consecutive duplicate knots and degrees other than 1 and 3
/// are rejected.
SplineArcSide build_spline_side(std::span<const std::array<double, 2>> knots, int degree);

/// Jordan domain bounded by a closed chain of spline arcs, traversed
/// counterclockwise.  The struct itself is raw: use make_element for the
/// closure check and orientation fix.
struct SplineElement {
  std::vector<SplineArcSide> sides;

  std::vector<std::array<double, 2>> vertices() const;
};

/// Validates closure (side k ends where side k+1 starts, cyclically, to
/// 1e-12) and orientation; a clockwise chain is reversed with a warning.
SplineElement make_element(std::vector<SplineArcSide> sides);

/// Contour integral (1/2) oint (x dy - y dx); positive for a
/// counterclockwise Jordan boundary.
double signed_area(const SplineElement& element);

/// Exact per-coordinate min/max over all pieces (endpoint and interior
/// stationary-point candidates per cubic).
BoxDomain bounding_box(const SplineArcSide& side);
BoxDomain bounding_box(const SplineElement& element);

/// Lebesgue moments of the basis over the element by Gauss-Green contour
/// integration: m_j = oint P_j(phi, psi) psi' dt, with per-piece
/// Gauss-Legendre of q = ceil(degree*(n+2)/2) points, which is exact for
/// the polynomial integrand.  Assumes counterclockwise orientation (a
/// clockwise chain negates every moment); requires basis.box to contain
/// the element's bounding box.
MomentVector greens_moments(const SplineElement& element, const ChebBasis& basis);

/// Full pipeline: bounding box -> basis -> Gauss-Chebyshev rule ->
/// Gauss-Green moments -> compression.  (n+1)^2 nodes, exact on P_n.
SignedRule compress_element(const SplineElement& element, int n);

}  // namespace sigquad
