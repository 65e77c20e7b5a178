#include "sigquad/spline_element.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "sigquad/quad_rules.hpp"
#include "sigquad/util.hpp"

namespace sigquad {

namespace {

constexpr double kClosureTol = 1e-12;  // absolute, unit-scale elements

// Dense Gaussian elimination with partial pivoting; the not-a-knot
// system is small (one row per knot).
std::vector<double> solve_dense(std::vector<double> a, std::vector<double> b) {
  const int n = static_cast<int>(b.size());
  for (int col = 0; col < n; ++col) {
    int pivot = col;
    for (int r = col + 1; r < n; ++r)
      if (std::abs(a[r * n + col]) > std::abs(a[pivot * n + col])) pivot = r;
    if (a[pivot * n + col] == 0.0)
      throw std::runtime_error("spline system is singular");
    if (pivot != col) {
      for (int c = 0; c < n; ++c) std::swap(a[col * n + c], a[pivot * n + c]);
      std::swap(b[col], b[pivot]);
    }
    for (int r = col + 1; r < n; ++r) {
      double f = a[r * n + col] / a[col * n + col];
      if (f == 0.0) continue;
      for (int c = col; c < n; ++c) a[r * n + c] -= f * a[col * n + c];
      b[r] -= f * b[col];
    }
  }
  std::vector<double> x(n);
  for (int r = n - 1; r >= 0; --r) {
    double s = b[r];
    for (int c = r + 1; c < n; ++c) s -= a[r * n + c] * x[c];
    x[r] = s / a[r * n + r];
  }
  return x;
}

// Second derivatives of the not-a-knot cubic spline through values y at
// t = 0..m-1 (uniform grid, h = 1).
std::vector<double> not_a_knot_moments(std::span<const double> y) {
  const int m = static_cast<int>(y.size());
  std::vector<double> a(static_cast<std::size_t>(m) * m, 0.0);
  std::vector<double> rhs(m, 0.0);
  a[0 * m + 0] = 1.0;
  a[0 * m + 1] = -2.0;
  a[0 * m + 2] = 1.0;
  for (int j = 1; j <= m - 2; ++j) {
    a[j * m + (j - 1)] = 1.0;
    a[j * m + j] = 4.0;
    a[j * m + (j + 1)] = 1.0;
    rhs[j] = 6.0 * (y[j + 1] - 2.0 * y[j] + y[j - 1]);
  }
  a[(m - 1) * m + (m - 3)] = 1.0;
  a[(m - 1) * m + (m - 2)] = -2.0;
  a[(m - 1) * m + (m - 1)] = 1.0;
  return solve_dense(std::move(a), std::move(rhs));
}

// Local coefficients on [j, j+1] from values and spline moments.
std::array<double, 4> cubic_piece_coeffs(std::span<const double> y,
                                         std::span<const double> mom, int j) {
  return {y[j],
          (y[j + 1] - y[j]) - (2.0 * mom[j] + mom[j + 1]) / 6.0,
          0.5 * mom[j],
          (mom[j + 1] - mom[j]) / 6.0};
}

// Quadratic through three values at t = 0,1,2, shifted to piece j.
std::array<double, 4> quadratic_piece_coeffs(double y0, double y1, double y2, int j) {
  const double b = -1.5 * y0 + 2.0 * y1 - 0.5 * y2;
  const double c = 0.5 * y0 - y1 + 0.5 * y2;
  if (j == 0) return {y0, b, c, 0.0};
  return {y1, b + 2.0 * c, c, 0.0};
}

void coordinate_extrema(const std::array<double, 4>& c, double& lo, double& hi) {
  auto consider = [&](double s) {
    double v = ((c[3] * s + c[2]) * s + c[1]) * s + c[0];
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  };
  consider(0.0);
  consider(1.0);
  // stationary points of the cubic inside (0,1)
  const double qa = 3.0 * c[3], qb = 2.0 * c[2], qc = c[1];
  if (qa == 0.0) {
    if (qb != 0.0) {
      double s = -qc / qb;
      if (s > 0.0 && s < 1.0) consider(s);
    }
  } else {
    double disc = qb * qb - 4.0 * qa * qc;
    if (disc >= 0.0) {
      double sq = std::sqrt(disc);
      for (double s : {(-qb - sq) / (2.0 * qa), (-qb + sq) / (2.0 * qa)})
        if (s > 0.0 && s < 1.0) consider(s);
    }
  }
}

PolyPiece reversed_piece(const PolyPiece& p) {
  auto rev = [](const std::array<double, 4>& c) {
    // q(s) = p(1-s)
    return std::array<double, 4>{c[0] + c[1] + c[2] + c[3],
                                 -(c[1] + 2.0 * c[2] + 3.0 * c[3]),
                                 c[2] + 3.0 * c[3],
                                 -c[3]};
  };
  return PolyPiece{rev(p.x), rev(p.y), p.degree};
}

}  // namespace

SplineArcSide build_spline_side(std::span<const std::array<double, 2>> knots, int degree) {
  if (degree != 1 && degree != 3)
    throw std::invalid_argument("build_spline_side: degree must be 1 or 3");
  const int m = static_cast<int>(knots.size());
  if (m < 2) throw std::invalid_argument("build_spline_side: need at least 2 knots");
  for (int i = 0; i + 1 < m; ++i)
    if (knots[i] == knots[i + 1])
      throw std::invalid_argument("build_spline_side: repeated consecutive knots at " +
                                  std::to_string(i));
  for (const auto& k : knots)
    if (!std::isfinite(k[0]) || !std::isfinite(k[1]))
      throw std::invalid_argument("build_spline_side: non-finite knot");

  SplineArcSide side;
  side.knots.assign(knots.begin(), knots.end());

  int effective = degree;
  if (degree == 3 && m < 4) {
    effective = m - 1;  // interpolating polynomial through 2 or 3 knots
    warn("cubic side with " + std::to_string(m) +
         " knots degenerates to degree " + std::to_string(effective));
  }
  side.degree = effective;
  side.pieces.resize(m - 1);

  if (effective == 1) {
    for (int j = 0; j + 1 < m; ++j) {
      PolyPiece& p = side.pieces[j];
      p.degree = 1;
      p.x = {knots[j][0], knots[j + 1][0] - knots[j][0], 0.0, 0.0};
      p.y = {knots[j][1], knots[j + 1][1] - knots[j][1], 0.0, 0.0};
    }
  } else if (effective == 2) {
    for (int j = 0; j < 2; ++j) {
      PolyPiece& p = side.pieces[j];
      p.degree = 2;
      p.x = quadratic_piece_coeffs(knots[0][0], knots[1][0], knots[2][0], j);
      p.y = quadratic_piece_coeffs(knots[0][1], knots[1][1], knots[2][1], j);
    }
  } else {
    std::vector<double> xs(m), ys(m);
    for (int i = 0; i < m; ++i) {
      xs[i] = knots[i][0];
      ys[i] = knots[i][1];
    }
    std::vector<double> mx = not_a_knot_moments(xs);
    std::vector<double> my = not_a_knot_moments(ys);
    for (int j = 0; j + 1 < m; ++j) {
      PolyPiece& p = side.pieces[j];
      p.degree = 3;
      p.x = cubic_piece_coeffs(xs, mx, j);
      p.y = cubic_piece_coeffs(ys, my, j);
    }
  }
  return side;
}

std::vector<std::array<double, 2>> SplineElement::vertices() const {
  std::vector<std::array<double, 2>> v;
  v.reserve(sides.size());
  for (const auto& s : sides) v.push_back(s.front());
  return v;
}

double signed_area(const SplineElement& element) {
  double area2 = 0.0;
  for (const auto& side : element.sides) {
    QuadRule gl = gauss_legendre(std::max(side.degree, 1));
    for (const auto& piece : side.pieces) {
      for (int g = 0; g < gl.size(); ++g) {
        const double s = 0.5 * (gl.nodes[g] + 1.0);
        const double wgt = 0.5 * gl.weights[g];
        auto [x, y] = piece.at(s);
        auto [dx, dy] = piece.derivative(s);
        area2 += wgt * (x * dy - y * dx);
      }
    }
  }
  return 0.5 * area2;
}

SplineElement make_element(std::vector<SplineArcSide> sides) {
  if (sides.empty()) throw std::invalid_argument("make_element: no sides");
  const int n_sides = static_cast<int>(sides.size());
  for (int k = 0; k < n_sides; ++k) {
    const auto& end = sides[k].back();
    const auto& start = sides[(k + 1) % n_sides].front();
    if (std::abs(end[0] - start[0]) > kClosureTol || std::abs(end[1] - start[1]) > kClosureTol)
      throw std::invalid_argument("make_element: boundary not closed between side " +
                                  std::to_string(k) + " and side " +
                                  std::to_string((k + 1) % n_sides));
  }

  SplineElement element{std::move(sides)};
  const double area = signed_area(element);
  if (area == 0.0) throw std::invalid_argument("make_element: degenerate element (zero area)");
  if (area < 0.0) {
    warn("clockwise boundary detected; reversing orientation");
    SplineElement flipped;
    flipped.sides.reserve(element.sides.size());
    for (auto it = element.sides.rbegin(); it != element.sides.rend(); ++it) {
      SplineArcSide rev;
      rev.degree = it->degree;
      rev.knots.assign(it->knots.rbegin(), it->knots.rend());
      rev.pieces.reserve(it->pieces.size());
      for (auto pit = it->pieces.rbegin(); pit != it->pieces.rend(); ++pit)
        rev.pieces.push_back(reversed_piece(*pit));
      flipped.sides.push_back(std::move(rev));
    }
    return flipped;
  }
  return element;
}

BoxDomain bounding_box(const SplineArcSide& side) {
  double lo[2] = {std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
  double hi[2] = {-lo[0], -lo[1]};
  for (const auto& piece : side.pieces) {
    coordinate_extrema(piece.x, lo[0], hi[0]);
    coordinate_extrema(piece.y, lo[1], hi[1]);
  }
  return BoxDomain(std::span<const double>(lo, 2), std::span<const double>(hi, 2));
}

BoxDomain bounding_box(const SplineElement& element) {
  if (element.sides.empty()) throw std::invalid_argument("bounding_box: empty element");
  double lo[2] = {std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
  double hi[2] = {-lo[0], -lo[1]};
  for (const auto& side : element.sides)
    for (const auto& piece : side.pieces) {
      coordinate_extrema(piece.x, lo[0], hi[0]);
      coordinate_extrema(piece.y, lo[1], hi[1]);
    }
  return BoxDomain(std::span<const double>(lo, 2), std::span<const double>(hi, 2));
}

MomentVector greens_moments(const SplineElement& element, const ChebBasis& basis) {
  if (basis.dim() != 2)
    throw std::invalid_argument("greens_moments: need a 2D basis");
  const BoxDomain ebox = bounding_box(element);
  const double tol = 1e-12 * (1.0 + std::max(basis.box().length(0), basis.box().length(1)));
  if (!basis.box().contains_box(ebox, tol))
    throw std::invalid_argument("greens_moments: basis box does not contain the element box");

  const int n = basis.degree();
  const int n_funcs = basis.size();
  const auto& order = basis.order();

  // x-antiderivative of tau_m as hi*T_{m+1} + lo*T_{m-1}, box scale folded in
  const double inv_sqrt_pi = 1.0 / std::sqrt(std::numbers::pi);
  const double sqrt_2_over_pi = std::sqrt(2.0 / std::numbers::pi);
  const double scale_x = 0.5 * basis.box().length(0);
  std::vector<double> hi_coef(n + 1, 0.0), lo_coef(n + 1, 0.0);
  hi_coef[0] = inv_sqrt_pi * scale_x;
  if (n >= 1) hi_coef[1] = sqrt_2_over_pi / 4.0 * scale_x;
  for (int m = 2; m <= n; ++m) {
    hi_coef[m] = sqrt_2_over_pi / (2.0 * (m + 1)) * scale_x;
    lo_coef[m] = -sqrt_2_over_pi / (2.0 * (m - 1)) * scale_x;
  }

  std::vector<double> moments(n_funcs, 0.0);
  std::vector<double> t_x(n + 2), tau_y(n + 1);

  for (const auto& side : element.sides) {
    // integrand degree in t is at most delta*(n+2) - 1
    const int q = (side.degree * (n + 2) + 1) / 2;
    QuadRule gl = gauss_legendre(q);
    for (const auto& piece : side.pieces) {
      for (int g = 0; g < gl.size(); ++g) {
        const double s = 0.5 * (gl.nodes[g] + 1.0);
        const double wgt = 0.5 * gl.weights[g];
        auto [x, y] = piece.at(s);
        const double dy = piece.derivative(s)[1];
        if (dy == 0.0) continue;  // horizontal motion contributes nothing

        const double xhat = basis.box().to_reference(0, x);
        t_x[0] = 1.0;
        t_x[1] = xhat;
        for (int k = 2; k <= n + 1; ++k) t_x[k] = 2.0 * xhat * t_x[k - 1] - t_x[k - 2];
        eval_tau(basis.box().to_reference(1, y), n, tau_y.data());

        const double factor = wgt * dy;
        for (int j = 0; j < n_funcs; ++j) {
          const int i1 = order[j].e[0];
          double a = hi_coef[i1] * t_x[i1 + 1];
          if (i1 >= 2) a += lo_coef[i1] * t_x[i1 - 1];
          moments[j] += factor * a * tau_y[order[j].e[1]];
        }
      }
    }
  }
  return MomentVector{basis, std::move(moments)};
}

SignedRule compress_element(const SplineElement& element, int n) {
  if (n < 0) throw std::invalid_argument("compress_element: degree must be >= 0");
  const BoxDomain box = bounding_box(element);
  const ChebBasis basis(box, n);
  const QuadRule rule = gauss_chebyshev_box(box, n);
  return compress(greens_moments(element, basis), rule);
}

}  // namespace sigquad
