#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <numbers>
#include <vector>

#include "sigquad/quad_rules.hpp"
#include "sigquad/util.hpp"
#include "test_support.hpp"

using namespace sigquad;
using sigquad::testing::random_box;
using sigquad::testing::tau_trig;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("Gauss-Chebyshev basics") {
  SUBCASE("n=0 in 2D is the center point with weight pi^2") {
    QuadRule rule = gauss_chebyshev_box(BoxDomain::cube(-1.0, 1.0, 2), 0);
    REQUIRE(rule.size() == 1);
    CHECK(std::abs(rule.node(0)[0]) <= 1e-15);
    CHECK(std::abs(rule.node(0)[1]) <= 1e-15);
    CHECK(rule.weights[0] == doctest::Approx(kPi * kPi).epsilon(1e-15));
    CHECK(rule.ade == 0);
  }

  SUBCASE("n=10 in 2D has 121 nodes") {
    QuadRule rule = gauss_chebyshev_box(BoxDomain::cube(0.0, 2.0, 2), 10);
    CHECK(rule.size() == 121);
    CHECK(rule.ade == 20);
  }

  SUBCASE("1D orthonormality by direct summation, n=2") {
    QuadRule rule = gauss_chebyshev_box(BoxDomain::cube(-1.0, 1.0, 1), 2);
    for (int h = 0; h <= 2; ++h)
      for (int k = 0; k <= 2; ++k) {
        double s = 0.0;
        for (int i = 0; i < rule.size(); ++i)
          s += rule.weights[i] * tau_trig(h, rule.node(i)[0]) * tau_trig(k, rule.node(i)[0]);
        CHECK(s == doctest::Approx(h == k ? 1.0 : 0.0).epsilon(1e-14).scale(1.0));
      }
  }
}

TEST_CASE("Gauss-Chebyshev rule invariants") {
  Rng rng(17);
  for (int d = 1; d <= 3; ++d) {
    for (int n : {0, 1, 5, 9}) {
      BoxDomain box = random_box(rng, d);
      QuadRule rule = gauss_chebyshev_box(box, n);
      int expected = 1;
      for (int k = 0; k < d; ++k) expected *= n + 1;
      REQUIRE(rule.size() == expected);

      for (double w : rule.weights) CHECK(w > 0.0);
      CHECK(rule.weight_sum() == doctest::Approx(box.chebyshev_mass()).epsilon(1e-13));
      for (int i = 0; i < rule.size(); ++i)
        for (int k = 0; k < d; ++k) {
          CHECK(rule.node(i)[k] > box.lo(k));
          CHECK(rule.node(i)[k] < box.hi(k));
        }
    }
  }
}

TEST_CASE("rules for the same (d, n) share the reference pattern") {
  BoxDomain a = BoxDomain::cube(-1.0, 1.0, 2);
  BoxDomain b = BoxDomain::cube(3.0, 10.0, 2);
  QuadRule ra = gauss_chebyshev_box(a, 4);
  QuadRule rb = gauss_chebyshev_box(b, 4);
  REQUIRE(ra.size() == rb.size());
  for (int i = 0; i < ra.size(); ++i) {
    CHECK(ra.weights[i] == rb.weights[i]);
    for (int k = 0; k < 2; ++k)
      CHECK(b.to_reference(k, rb.node(i)[k]) ==
            doctest::Approx(a.to_reference(k, ra.node(i)[k])).epsilon(1e-14));
  }
}

TEST_CASE("Gauss-Legendre classical values") {
  SUBCASE("q=1: midpoint") {
    QuadRule r = gauss_legendre(1);
    REQUIRE(r.size() == 1);
    CHECK(std::abs(r.nodes[0]) <= 1e-15);
    CHECK(r.weights[0] == doctest::Approx(2.0).epsilon(1e-15));
  }
  SUBCASE("q=2: +-1/sqrt(3), weights 1") {
    QuadRule r = gauss_legendre(2);
    REQUIRE(r.size() == 2);
    CHECK(r.nodes[0] == doctest::Approx(-1.0 / std::sqrt(3.0)).epsilon(1e-15));
    CHECK(r.nodes[1] == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-15));
    CHECK(r.weights[0] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(r.weights[1] == doctest::Approx(1.0).epsilon(1e-15));
  }
  SUBCASE("q=3: 0, +-sqrt(3/5), weights 8/9, 5/9") {
    QuadRule r = gauss_legendre(3);
    REQUIRE(r.size() == 3);
    CHECK(r.nodes[0] == doctest::Approx(-std::sqrt(0.6)).epsilon(1e-15));
    CHECK(std::abs(r.nodes[1]) <= 1e-15);
    CHECK(r.nodes[2] == doctest::Approx(std::sqrt(0.6)).epsilon(1e-15));
    CHECK(r.weights[0] == doctest::Approx(5.0 / 9.0).epsilon(1e-15));
    CHECK(r.weights[1] == doctest::Approx(8.0 / 9.0).epsilon(1e-15));
    CHECK(r.weights[2] == doctest::Approx(5.0 / 9.0).epsilon(1e-15));
  }
  SUBCASE("q=0 is rejected") { CHECK_THROWS_AS(gauss_legendre(0), std::invalid_argument); }
}

TEST_CASE("Gauss-Legendre moments up to q = 40") {
  for (int q = 1; q <= 40; ++q) {
    QuadRule r = gauss_legendre(q);
    CHECK(r.weight_sum() == doctest::Approx(2.0).epsilon(1e-14));
    for (double w : r.weights) CHECK(w > 0.0);
    for (int k = 0; k <= 2 * q - 1; ++k) {
      double s = 0.0;
      for (int i = 0; i < r.size(); ++i) s += r.weights[i] * ipow(r.nodes[i], k);
      const double expect = (k % 2 == 0) ? 2.0 / (k + 1) : 0.0;
      CHECK(s == doctest::Approx(expect).epsilon(1e-13).scale(1.0));
    }
  }
}

TEST_CASE("verify_rule_exactness") {
  BoxDomain box = BoxDomain::cube(-1.0, 1.0, 2);

  SUBCASE("matched rule passes") {
    for (int n : {0, 4, 9}) {
      ChebBasis basis(box, n);
      CHECK(verify_rule_exactness(gauss_chebyshev_box(box, n), basis) <= 1e-12);
    }
  }

  SUBCASE("n = 0 reduces to the mass identity") {
    ChebBasis basis(box, 0);
    CHECK(verify_rule_exactness(gauss_chebyshev_box(box, 0), basis) <= 1e-15);
  }

  SUBCASE("an overstated ade claim is exposed by the residual") {
    const int n = 6;
    ChebBasis basis(box, n);
    QuadRule under = gauss_chebyshev_box(box, n - 1);
    under.ade = 2 * n;  // false claim
    CHECK(verify_rule_exactness(under, basis) > 0.1);
  }

  SUBCASE("honest degree mismatch is an error") {
    ChebBasis basis(box, 6);
    QuadRule under = gauss_chebyshev_box(box, 5);
    CHECK_THROWS_AS(verify_rule_exactness(under, basis), std::invalid_argument);
  }

  SUBCASE("box mismatch is an error") {
    ChebBasis basis(BoxDomain::cube(0.0, 1.0, 2), 3);
    QuadRule rule = gauss_chebyshev_box(box, 3);
    CHECK_THROWS_AS(verify_rule_exactness(rule, basis), std::invalid_argument);
  }
}
