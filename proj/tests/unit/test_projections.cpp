#include <cmath>

#include "doctest.h"
#include "oedg/projections.hpp"
#include "oedg/quadrature.hpp"

using namespace oedg;

namespace {

void poly_fn(double x, double* state) { state[0] = 1.0 - 2.0 * x + 0.5 * x * x; }

void smooth_fn(double x, double* state) {
  state[0] = std::sin(2.0 * x) + 0.3 * std::cos(5.0 * x);
  state[1] = std::exp(-x);
}

}  // namespace

TEST_CASE("L2 projection reproduces polynomial data exactly") {
  auto mesh = build_uniform_1d(-1.0, 2.0, 7);
  auto sol = l2_project_1d(mesh, 2, 1, poly_fn);
  for (int j = 0; j < mesh->num_cells(); ++j) {
    for (double xi : {-0.5, -0.2, 0.0, 0.37, 0.5}) {
      double x = mesh->center(j) + xi * mesh->width(j);
      double exact;
      poly_fn(x, &exact);
      CHECK(evaluate_1d(sol, j, 0, xi) == doctest::Approx(exact).epsilon(1e-13));
    }
  }
}

TEST_CASE("L2 projection residual is orthogonal to the basis") {
  // Orthogonality is a statement about the discrete inner product, so the
  // check must use the same rule the projection integrated with.
  auto mesh = build_uniform_1d(0.0, 1.0, 4);
  int k = 3;
  auto sol = l2_project_1d(mesh, k, 2, smooth_fn, kMaxQuadraturePoints);
  const auto& rule = gauss_legendre(kMaxQuadraturePoints);
  for (int j = 0; j < mesh->num_cells(); ++j) {
    for (int c = 0; c < 2; ++c) {
      for (int m = 0; m <= k; ++m) {
        double ip = 0.0;
        for (int q = 0; q < rule.size(); ++q) {
          double xi = rule.nodes[q];
          double x = mesh->center(j) + xi * mesh->width(j);
          double state[2];
          smooth_fn(x, state);
          double diff = state[c] - evaluate_1d(sol, j, c, xi);
          ip += rule.weights[q] * diff * basis_value_ref(m, 0, xi);
        }
        CHECK(std::abs(ip) < 1e-12);
      }
    }
  }
}

TEST_CASE("downwind-interpolating projection of x^2 on [0,1] is 4x/3 - 1/3") {
  auto mesh = build_uniform_1d(0.0, 2.0, 2);  // cell 0 is [0,1]
  auto sol = gauss_radau_project_1d(mesh, 1, 1, [](double x, double* s) { s[0] = x * x; });
  CHECK(evaluate_1d(sol, 0, 0, -0.5) == doctest::Approx(-1.0 / 3.0).epsilon(1e-13));
  CHECK(evaluate_1d(sol, 0, 0, 0.0) == doctest::Approx(1.0 / 3.0).epsilon(1e-13));
  CHECK(evaluate_1d(sol, 0, 0, 0.5) == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("downwind-interpolating projection matches value and moments") {
  auto mesh = build_uniform_1d(-0.5, 1.5, 5);
  int k = 3;
  auto fn = [](double x, double* s) { s[0] = std::sin(3.0 * x) + x; };
  auto sol = gauss_radau_project_1d(mesh, k, 1, fn, kMaxQuadraturePoints);
  const auto& rule = gauss_legendre(kMaxQuadraturePoints);
  for (int j = 0; j < mesh->num_cells(); ++j) {
    // Right-edge interpolation.
    double x_hi = mesh->edge(j + 1);
    double exact;
    fn(x_hi, &exact);
    CHECK(evaluate_1d(sol, j, 0, 0.5) == doctest::Approx(exact).epsilon(1e-12));
    // Moments against polynomials of degree < k.
    for (int m = 0; m < k; ++m) {
      double ip = 0.0;
      for (int q = 0; q < rule.size(); ++q) {
        double xi = rule.nodes[q];
        double x = mesh->center(j) + xi * mesh->width(j);
        double state;
        fn(x, &state);
        double diff = state - evaluate_1d(sol, j, 0, xi);
        ip += rule.weights[q] * diff * basis_value_ref(m, 0, xi);
      }
      CHECK(std::abs(ip) < 1e-12);
    }
  }
}

TEST_CASE("downwind-interpolating projection reproduces degree-k data") {
  auto mesh = build_uniform_1d(0.0, 2.0, 3);
  auto l2 = l2_project_1d(mesh, 2, 1, poly_fn);
  auto gr = gauss_radau_project_1d(mesh, 2, 1, poly_fn);
  for (size_t i = 0; i < l2.coeff.size(); ++i)
    CHECK(gr.coeff[i] == doctest::Approx(l2.coeff[i]).epsilon(1e-12));
}

TEST_CASE("2D L2 projection reproduces tensor polynomial data") {
  auto mesh = build_uniform_2d(0.0, 1.0, 3, 0.0, 2.0, 2);
  auto fn = [](double x, double y, double* s) {
    s[0] = 1.0 + x - 2.0 * y + 3.0 * x * y;
    s[1] = x * x - y;
  };
  auto sol = l2_project_2d(mesh, 2, 2, fn);
  for (int c = 0; c < mesh->num_cells(); ++c) {
    auto idx = mesh->unflat(c);
    for (double xi : {-0.5, 0.1, 0.5}) {
      for (double eta : {-0.5, 0.0, 0.4}) {
        double x = mesh->x_center(idx.i) + xi * mesh->hx(idx.i);
        double y = mesh->y_center(idx.j) + eta * mesh->hy(idx.j);
        double exact[2];
        fn(x, y, exact);
        CHECK(evaluate_2d(sol, c, 0, xi, eta) == doctest::Approx(exact[0]).epsilon(1e-13));
        CHECK(evaluate_2d(sol, c, 1, xi, eta) == doctest::Approx(exact[1]).epsilon(1e-13));
      }
    }
  }
}

TEST_CASE("projection cell averages equal exact cell means") {
  auto mesh = build_uniform_1d(0.0, 1.0, 4);
  auto sol = l2_project_1d(mesh, 3, 1, [](double x, double* s) { s[0] = std::exp(x); });
  for (int j = 0; j < 4; ++j) {
    double a = mesh->edge(j), b = mesh->edge(j + 1);
    double mean = (std::exp(b) - std::exp(a)) / (b - a);
    CHECK(sol.cell_average(j, 0) == doctest::Approx(mean).epsilon(1e-10));
  }
}
