#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "sigquad/harness.hpp"
#include "sigquad/io.hpp"
#include "sigquad/spline_element.hpp"
#include "sigquad/util.hpp"
#include "test_support.hpp"

using namespace sigquad;
using sigquad::testing::random_element;
using sigquad::testing::square_element;

namespace {
constexpr double kPi = std::numbers::pi;
using P2 = std::array<double, 2>;

const std::filesystem::path kDataDir = SIGQUAD_DATA_DIR;

// 1D integral of tau_k over [0,1] after mapping [0,1] -> [-1,1]:
// (1/2) * integral of tau_k over [-1,1]
double tau_integral_01(int k) {
  if (k == 0) return 1.0 / std::sqrt(kPi);
  if (k % 2 == 1) return 0.0;
  return std::sqrt(2.0 / kPi) / (1.0 - static_cast<double>(k) * k);
}
}  // namespace

TEST_CASE("build_spline_side basics") {
  SUBCASE("two knots, degree 1: single chord through the midpoint") {
    std::vector<P2> knots = {{0.0, 0.0}, {2.0, 1.0}};
    SplineArcSide side = build_spline_side(knots, 1);
    REQUIRE(side.pieces.size() == 1);
    auto mid = side.pieces[0].at(0.5);
    CHECK(mid[0] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(mid[1] == doctest::Approx(0.5).epsilon(1e-15));
  }

  SUBCASE("repeated consecutive knots rejected") {
    std::vector<P2> knots = {{0.0, 0.0}, {0.0, 0.0}, {1.0, 1.0}};
    CHECK_THROWS_AS(build_spline_side(knots, 1), std::invalid_argument);
  }

  SUBCASE("unsupported degree rejected") {
    std::vector<P2> knots = {{0.0, 0.0}, {1.0, 1.0}};
    CHECK_THROWS_AS(build_spline_side(knots, 2), std::invalid_argument);
  }

  SUBCASE("cubic with too few knots degenerates") {
    std::vector<P2> two = {{0.0, 0.0}, {1.0, 1.0}};
    CHECK(build_spline_side(two, 3).degree == 1);
    std::vector<P2> three = {{0.0, 0.0}, {1.0, 1.0}, {2.0, 0.0}};
    SplineArcSide q = build_spline_side(three, 3);
    CHECK(q.degree == 2);
    // the unique parabola through the three points
    auto v = q.pieces[0].at(0.5);
    CHECK(v[1] == doctest::Approx(0.75).epsilon(1e-14));
  }
}

TEST_CASE("not-a-knot spline reproduces cubics") {
  auto cubic = [](double t) -> P2 {
    return {0.3 + 0.7 * t - 0.2 * t * t + 0.05 * t * t * t,
            -0.4 + 0.1 * t + 0.3 * t * t - 0.08 * t * t * t};
  };
  std::vector<P2> knots;
  for (int i = 0; i <= 6; ++i) knots.push_back(cubic(i));
  SplineArcSide side = build_spline_side(knots, 3);
  REQUIRE(side.degree == 3);
  for (int j = 0; j < 6; ++j)
    for (double s : {0.17, 0.5, 0.83}) {
      auto v = side.pieces[j].at(s);
      auto expect = cubic(j + s);
      CHECK(v[0] == doctest::Approx(expect[0]).epsilon(1e-12));
      CHECK(v[1] == doctest::Approx(expect[1]).epsilon(1e-12));
    }
}

TEST_CASE("spline interpolates its knots") {
  Rng rng(41);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<P2> knots;
    const int m = 4 + static_cast<int>(rng.uniform01() * 6);
    for (int i = 0; i < m; ++i) knots.push_back({static_cast<double>(i), rng.uniform(-1.0, 1.0)});
    SplineArcSide side = build_spline_side(knots, 3);
    for (int j = 0; j + 1 < m; ++j) {
      auto a = side.pieces[j].at(0.0);
      auto b = side.pieces[j].at(1.0);
      CHECK(std::abs(a[0] - knots[j][0]) <= 1e-12);
      CHECK(std::abs(a[1] - knots[j][1]) <= 1e-12);
      CHECK(std::abs(b[0] - knots[j + 1][0]) <= 1e-12);
      CHECK(std::abs(b[1] - knots[j + 1][1]) <= 1e-12);
    }
  }
}

TEST_CASE("cubic spline tracks a circle arc at fourth order") {
  // refinement study: interpolation error should drop ~16x per halving
  auto max_circle_distance = [](int m) {
    std::vector<P2> knots;
    for (int i = 0; i < m; ++i) {
      const double a = 0.5 * kPi * i / (m - 1);
      knots.push_back({std::cos(a), std::sin(a)});
    }
    SplineArcSide side = build_spline_side(knots, 3);
    double worst = 0.0;
    for (const auto& piece : side.pieces)
      for (int g = 0; g <= 50; ++g) {
        auto v = piece.at(g / 50.0);
        worst = std::max(worst, std::abs(std::hypot(v[0], v[1]) - 1.0));
      }
    return worst;
  };
  const double e1 = max_circle_distance(9);
  const double e2 = max_circle_distance(17);
  const double order = std::log2(e1 / e2);
  CHECK(order >= 3.8);
}

TEST_CASE("bounding boxes") {
  SUBCASE("unit square") {
    BoxDomain box = bounding_box(square_element(0.0, 1.0));
    CHECK(box.lo(0) == 0.0);
    CHECK(box.hi(0) == 1.0);
    CHECK(box.lo(1) == 0.0);
    CHECK(box.hi(1) == 1.0);
  }

  SUBCASE("interior extremum widens the box beyond the knot hull") {
    // hand-built piece x(s) = s, y(s) = s(1-s); knots sit at y = 0
    SplineArcSide side;
    side.degree = 2;
    side.knots = {{0.0, 0.0}, {1.0, 0.0}};
    side.pieces = {PolyPiece{{0.0, 1.0, 0.0, 0.0}, {0.0, 1.0, -1.0, 0.0}, 2}};
    BoxDomain box = bounding_box(side);
    CHECK(box.hi(1) == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(box.lo(1) == 0.0);
  }

  SUBCASE("dense boundary sampling never escapes the exact box") {
    Rng rng(59);
    for (int trial = 0; trial < 8; ++trial) {
      SplineElement e = random_element(rng, true);
      BoxDomain box = bounding_box(e);
      double lo[2] = {1e300, 1e300}, hi[2] = {-1e300, -1e300};
      for (const auto& side : e.sides)
        for (const auto& piece : side.pieces)
          for (int g = 0; g <= 1000; ++g) {
            auto v = piece.at(g / 1000.0);
            for (int k = 0; k < 2; ++k) {
              CHECK(v[k] >= box.lo(k) - 1e-13);
              CHECK(v[k] <= box.hi(k) + 1e-13);
              lo[k] = std::min(lo[k], v[k]);
              hi[k] = std::max(hi[k], v[k]);
            }
          }
      // sampled box reaches the exact box to within the sampling gap
      for (int k = 0; k < 2; ++k) {
        CHECK(lo[k] - box.lo(k) <= 1e-6);
        CHECK(box.hi(k) - hi[k] <= 1e-6);
      }
    }
  }
}

TEST_CASE("element assembly") {
  SUBCASE("open chains are rejected") {
    std::vector<SplineArcSide> sides;
    sides.push_back(build_spline_side(std::vector<P2>{{0.0, 0.0}, {1.0, 0.0}}, 1));
    sides.push_back(build_spline_side(std::vector<P2>{{1.0, 0.1}, {0.0, 0.0}}, 1));
    CHECK_THROWS_AS(make_element(std::move(sides)), std::invalid_argument);
  }

  SUBCASE("clockwise input is reversed to counterclockwise") {
    SplineElement ccw = square_element(0.0, 1.0);
    SplineElement cw;
    for (auto it = ccw.sides.rbegin(); it != ccw.sides.rend(); ++it) {
      std::vector<P2> knots(it->knots.rbegin(), it->knots.rend());
      cw.sides.push_back(build_spline_side(knots, 1));
    }
    CHECK(signed_area(cw) == doctest::Approx(-1.0).epsilon(1e-14));
    SplineElement fixed = make_element(cw.sides);
    CHECK(signed_area(fixed) == doctest::Approx(1.0).epsilon(1e-14));

    // moments after the fix match the counterclockwise original
    BoxDomain box = bounding_box(fixed);
    ChebBasis basis(box, 4);
    MomentVector a = greens_moments(fixed, basis);
    MomentVector b = greens_moments(ccw, basis);
    for (int j = 0; j < basis.size(); ++j)
      CHECK(a.values[j] == doctest::Approx(b.values[j]).epsilon(1e-13).scale(1.0));
  }
}

TEST_CASE("Gauss-Green moments") {
  SUBCASE("first moment is area/pi for any degree") {
    SplineElement square = square_element(0.0, 1.0);
    for (int n : {0, 3, 8}) {
      ChebBasis basis(bounding_box(square), n);
      MomentVector m = greens_moments(square, basis);
      CHECK(m.values[0] == doctest::Approx(1.0 / kPi).epsilon(1e-14));
    }
  }

  SUBCASE("unit square matches the tensor closed form, n <= 10") {
    SplineElement square = square_element(0.0, 1.0);
    for (int n : {6, 10}) {
      ChebBasis basis(bounding_box(square), n);
      MomentVector m = greens_moments(square, basis);
      for (int j = 0; j < basis.size(); ++j) {
        const auto& mi = basis.order()[j];
        const double expect = tau_integral_01(mi.e[0]) * tau_integral_01(mi.e[1]);
        CHECK(std::abs(m.values[j] - expect) <= 1e-13);
      }
    }
  }

  SUBCASE("clockwise orientation negates every moment") {
    SplineElement ccw = square_element(0.0, 1.0);
    SplineElement cw;  // raw struct, deliberately not fixed by make_element
    for (auto it = ccw.sides.rbegin(); it != ccw.sides.rend(); ++it) {
      std::vector<P2> knots(it->knots.rbegin(), it->knots.rend());
      cw.sides.push_back(build_spline_side(knots, 1));
    }
    ChebBasis basis(bounding_box(ccw), 5);
    MomentVector a = greens_moments(ccw, basis);
    MomentVector b = greens_moments(cw, basis);
    for (int j = 0; j < basis.size(); ++j)
      CHECK(b.values[j] == doctest::Approx(-a.values[j]).epsilon(1e-13).scale(1.0));
  }

  SUBCASE("basis box must contain the element") {
    SplineElement square = square_element(0.0, 1.0);
    ChebBasis small(BoxDomain::cube(0.2, 0.8, 2), 3);
    CHECK_THROWS_AS(greens_moments(square, small), std::invalid_argument);
  }
}

TEST_CASE("compress_element on the unit square") {
  SplineElement square = square_element(0.0, 1.0);

  SUBCASE("rule cardinality is (n+1)^2") {
    for (int n = 2; n <= 16; n += 2)
      CHECK(compress_element(square, n).size() == (n + 1) * (n + 1));
  }

  SUBCASE("degree 0 gives a single node carrying the area") {
    SignedRule rule = compress_element(square, 0);
    REQUIRE(rule.size() == 1);
    CHECK(rule.weights[0] == doctest::Approx(1.0).epsilon(1e-14));
  }

  SUBCASE("monomial exactness against the closed form") {
    const int n = 7;
    SignedRule rule = compress_element(square, n);
    for (int a = 0; a <= n; ++a)
      for (int b = 0; a + b <= n; ++b) {
        double s = 0.0;
        for (int i = 0; i < rule.size(); ++i)
          s += rule.weights[i] * ipow(rule.node(i)[0], a) * ipow(rule.node(i)[1], b);
        CHECK(s == doctest::Approx(1.0 / ((a + 1.0) * (b + 1.0))).epsilon(1e-13));
      }
  }
}

TEST_CASE("harness elements") {
  SplineElement nonconvex = load_element(kDataDir / "elements/nonconvex_quad_cubic.json");
  SplineElement convex = load_element(kDataDir / "elements/convex_hex_cubic.json");

  SUBCASE("shape sanity") {
    CHECK(signed_area(nonconvex) > 0.0);
    CHECK(signed_area(convex) > 0.0);

    // the nonconvex element has a reflex vertex
    auto verts = nonconvex.vertices();
    int reflex = 0;
    const int m = static_cast<int>(verts.size());
    for (int k = 0; k < m; ++k) {
      auto& a = verts[(k + m - 1) % m];
      auto& b = verts[k];
      auto& c = verts[(k + 1) % m];
      const double cross = (b[0] - a[0]) * (c[1] - b[1]) - (b[1] - a[1]) * (c[0] - b[0]);
      if (cross < 0.0) ++reflex;
    }
    CHECK(reflex >= 1);

    // the convex element lives inside the unit square
    BoxDomain cb = bounding_box(convex);
    CHECK(BoxDomain::cube(0.0, 1.0, 2).contains_box(cb));
  }

  SUBCASE("random polynomial trials reach machine precision") {
    for (const SplineElement* e : {&nonconvex, &convex}) {
      for (int n : {4, 10}) {
        SignedRule rule = compress_element(*e, n);
        TrialReport rep = verify_spline_rule(*e, rule, 100, 20240517);
        CHECK(rep.geomean <= 1e-12);
        CHECK(rep.errors.size() == 100);
        CHECK(rule.moment_residual <= 1e-12);
      }
    }
  }

  SUBCASE("stability stays in the [1, 1.5] band") {
    for (const SplineElement* e : {&nonconvex, &convex})
      for (int n = 2; n <= 16; ++n) {
        SignedRule rule = compress_element(*e, n);
        const double s = stability_parameter(rule);
        CHECK(s >= 1.0);
        CHECK(s <= 1.5);
      }
  }

  SUBCASE("smooth integrand converges to 1e-9 by degree 16 on the convex element") {
    std::vector<double> errors;
    for (int n = 2; n <= 16; n += 2) {
      SignedRule rule = compress_element(convex, n);
      FunctionErrors fe = test_function_errors_spline(convex, rule, {0.51, 0.26});
      errors.push_back(fe.values[0]);
    }
    CHECK(errors.back() <= 1e-9);
    for (std::size_t k = 0; k + 1 < errors.size(); ++k) {
      const bool at_floor = errors[k] <= 1e-11 && errors[k + 1] <= 1e-11;
      if (!at_floor) CHECK(errors[k + 1] < errors[k]);
    }
  }
}

TEST_CASE("exactness against the monomial Gauss-Green reference") {
  auto worst_monomial_error = [](const SplineElement& e, int n) {
    SignedRule rule = compress_element(e, n);
    std::vector<double> monomials = monomial_moments(e, n);
    double worst = 0.0;
    for (int a = 0; a <= n; ++a)
      for (int b = 0; a + b <= n; ++b) {
        double s = 0.0;
        for (int i = 0; i < rule.size(); ++i)
          s += rule.weights[i] * ipow(rule.node(i)[0], a) * ipow(rule.node(i)[1], b);
        const double reference = monomials[static_cast<std::size_t>(a) * (n + 1) + b];
        worst = std::max(worst, std::abs(s - reference) / std::max(1.0, std::abs(reference)));
      }
    return worst;
  };

  SUBCASE("random element") {
    Rng rng(71);
    CHECK(worst_monomial_error(random_element(rng, true), 9) <= 1e-11);
  }

  SUBCASE("harness elements up to degree 16") {
    for (const char* name : {"elements/nonconvex_quad_cubic.json", "elements/convex_hex_cubic.json"})
      for (int n : {5, 16})
        CHECK(worst_monomial_error(load_element(kDataDir / name), n) <= 1e-11);
  }
}

TEST_CASE("pipeline is affine equivariant") {
  Rng rng(83);
  SplineElement e = random_element(rng, true);
  const double ax = 1.7, bx = -0.4, ay = 0.6, by = 2.1;  // x' = ax x + bx, y' = ay y + by

  SplineElement mapped;
  for (const auto& side : e.sides) {
    std::vector<P2> knots;
    for (const auto& k : side.knots) knots.push_back({ax * k[0] + bx, ay * k[1] + by});
    mapped.sides.push_back(build_spline_side(knots, side.degree == 2 ? 3 : side.degree));
  }

  const int n = 6;
  SignedRule r0 = compress_element(e, n);
  SignedRule r1 = compress_element(mapped, n);

  // area scales by the Jacobian
  CHECK(r1.weight_sum() == doctest::Approx(ax * ay * r0.weight_sum()).epsilon(1e-12));

  // integral of a mapped polynomial: int_{E'} g = |J| int_E g(ax x + bx, ay y + by)
  auto g = [](double x, double y) { return x * x * y + 0.5 * x - 2.0 * y; };
  double lhs = 0.0;
  for (int i = 0; i < r1.size(); ++i) lhs += r1.weights[i] * g(r1.node(i)[0], r1.node(i)[1]);
  double rhs = 0.0;
  for (int i = 0; i < r0.size(); ++i)
    rhs += r0.weights[i] * g(ax * r0.node(i)[0] + bx, ay * r0.node(i)[1] + by);
  rhs *= ax * ay;
  CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
}
