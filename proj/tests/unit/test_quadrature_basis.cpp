#include <cmath>
#include <functional>

#include "doctest.h"
#include "oedg/basis.hpp"
#include "oedg/quadrature.hpp"

using namespace oedg;

namespace {

double quad_integrate(int n_points, const std::function<double(double)>& f) {
  const auto& rule = gauss_legendre(n_points);
  double acc = 0.0;
  for (int q = 0; q < rule.size(); ++q) acc += rule.weights[q] * f(rule.nodes[q]);
  return acc;
}

}  // namespace

TEST_CASE("gauss rules: weights sum to one, nodes symmetric and ordered") {
  for (int n = 1; n <= kMaxQuadraturePoints; ++n) {
    const auto& rule = gauss_legendre(n);
    REQUIRE(rule.size() == n);
    double wsum = 0.0;
    for (int q = 0; q < n; ++q) {
      wsum += rule.weights[q];
      CHECK(rule.weights[q] > 0.0);
      CHECK(rule.nodes[q] > -0.5);
      CHECK(rule.nodes[q] < 0.5);
      if (q > 0) CHECK(rule.nodes[q] > rule.nodes[q - 1]);
      CHECK(rule.nodes[q] == doctest::Approx(-rule.nodes[n - 1 - q]).epsilon(1e-14));
    }
    CHECK(wsum == doctest::Approx(1.0).epsilon(1e-15));
  }
}

TEST_CASE("gauss rules: n points integrate degree 2n-1 exactly") {
  for (int n = 1; n <= kMaxQuadraturePoints; ++n) {
    // Odd powers vanish by symmetry; check the top even power 2n-2 against
    // the closed form int_{-1/2}^{1/2} x^{2m} dx = (1/2)^{2m} / (2m+1).
    int m = n - 1;
    double exact = std::pow(0.5, 2 * m) / (2 * m + 1);
    double got = quad_integrate(n, [&](double x) { return std::pow(x, 2 * m); });
    CHECK(got == doctest::Approx(exact).epsilon(1e-13));
    double odd = quad_integrate(n, [&](double x) { return std::pow(x, 2 * m + 1); });
    CHECK(std::abs(odd) < 1e-15);
  }
}

TEST_CASE("gauss rules: out-of-range point counts are rejected") {
  CHECK_THROWS(gauss_legendre(0));
  CHECK_THROWS(gauss_legendre(kMaxQuadraturePoints + 1));
}

TEST_CASE("reference basis values and derivatives at hand-picked points") {
  // phi_0 = 1, phi_1 = xi, phi_2 = 12 xi^2 - 1, phi_3 = 20 xi^3 - 3 xi.
  CHECK(basis_value_ref(0, 0, 0.31) == 1.0);
  CHECK(basis_value_ref(0, 1, 0.31) == 0.0);
  CHECK(basis_value_ref(1, 0, 0.31) == doctest::Approx(0.31).epsilon(1e-15));
  CHECK(basis_value_ref(1, 1, 0.31) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(basis_value_ref(2, 0, 0.5) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(basis_value_ref(2, 1, 0.5) == doctest::Approx(12.0).epsilon(1e-15));
  CHECK(basis_value_ref(2, 2, 0.5) == doctest::Approx(24.0).epsilon(1e-15));
  CHECK(basis_value_ref(3, 0, 0.5) == doctest::Approx(20.0 * 0.125 - 1.5).epsilon(1e-15));
  CHECK(basis_value_ref(3, 1, 0.5) == doctest::Approx(60.0 * 0.25 - 3.0).epsilon(1e-15));
  // Right-edge values: phi_1 = 1/2 and phi_2 = 2; every other mode is 1.
  const double edge[] = {1.0, 0.5, 2.0, 1.0, 1.0, 1.0, 1.0};
  for (int m = 0; m <= kMaxBasisDegree; ++m)
    CHECK(basis_value_ref(m, 0, 0.5) == doctest::Approx(edge[m]).epsilon(1e-13));
}

TEST_CASE("reference basis is orthogonal with the documented norms") {
  for (int a = 0; a <= kMaxBasisDegree; ++a) {
    for (int b = 0; b <= kMaxBasisDegree; ++b) {
      double ip = quad_integrate(
          kMaxQuadraturePoints,
          [&](double x) { return basis_value_ref(a, 0, x) * basis_value_ref(b, 0, x); });
      if (a == b)
        CHECK(ip == doctest::Approx(basis_norm2_ref(a)).epsilon(1e-12));
      else
        CHECK(std::abs(ip) < 1e-13);
    }
  }
  // Spot values: ||phi_1||^2 = 1/12, ||phi_2||^2 = integral of (12 xi^2 - 1)^2 = 4/5.
  CHECK(basis_norm2_ref(0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(basis_norm2_ref(1) == doctest::Approx(1.0 / 12.0).epsilon(1e-14));
  CHECK(basis_norm2_ref(2) == doctest::Approx(0.8).epsilon(1e-14));
  // P_m(2 xi) has norm 1/(2m+1) under the unit-measure reference cell.
  for (int m = 3; m <= kMaxBasisDegree; ++m)
    CHECK(basis_norm2_ref(m) == doctest::Approx(1.0 / (2.0 * m + 1.0)).epsilon(1e-13));
}

TEST_CASE("physical 1D basis scales derivatives by 1/h per order") {
  double h = 0.4, xi = -0.23;
  for (int m = 0; m <= 3; ++m) {
    for (int d = 0; d <= 3; ++d) {
      double expect = basis_value_ref(m, d, xi) / std::pow(h, d);
      CHECK(eval_basis_1d(3, m, d, xi, h) == doctest::Approx(expect).epsilon(1e-14));
    }
  }
  CHECK_THROWS(eval_basis_1d(2, 3, 0, 0.0, 1.0));
  CHECK_THROWS(eval_basis_1d(2, 1, 3, 0.0, 1.0));
}

TEST_CASE("2D mode set uses graded ordering with x-degree ascending last") {
  const ModeSet2D& set = ModeSet2D::get(3);
  REQUIRE(set.size() == 10);
  CHECK(set.index(0, 0) == 0);
  CHECK(set.index(0, 1) == 1);
  CHECK(set.index(1, 0) == 2);
  CHECK(set.index(0, 2) == 3);
  CHECK(set.index(1, 1) == 4);
  CHECK(set.index(2, 0) == 5);
  CHECK(set.index(0, 3) == 6);
  CHECK(set.modes[0].a1 == 0);
  CHECK(set.modes[2].a1 == 1);
  CHECK(set.modes[2].a2 == 0);
  CHECK_THROWS(set.index(2, 2));
  for (int k = 0; k <= kMaxBasisDegree; ++k)
    CHECK(ModeSet2D::get(k).size() == (k + 1) * (k + 2) / 2);
}

TEST_CASE("2D basis is the tensor product of 1D factors") {
  double xi = 0.17, eta = -0.4, hx = 0.25, hy = 2.0;
  for (int a1 = 0; a1 <= 2; ++a1) {
    for (int a2 = 0; a2 <= 2 - a1; ++a2) {
      for (int d1 = 0; d1 <= 1; ++d1) {
        for (int d2 = 0; d2 <= 1; ++d2) {
          double expect = basis_value_ref(a1, d1, xi) / std::pow(hx, d1) *
                          basis_value_ref(a2, d2, eta) / std::pow(hy, d2);
          CHECK(eval_basis_2d(2, a1, a2, d1, d2, xi, eta, hx, hy) ==
                doctest::Approx(expect).epsilon(1e-14));
        }
      }
    }
  }
  CHECK_THROWS(eval_basis_2d(2, 2, 1, 0, 0, 0.0, 0.0, 1.0, 1.0));
}
