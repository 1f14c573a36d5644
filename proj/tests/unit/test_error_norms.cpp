#include <cmath>

#include "doctest.h"
#include "oedg/error_norms.hpp"
#include "oedg/projections.hpp"

using namespace oedg;

TEST_CASE("all norms are tiny when the solution is an exact projection") {
  auto mesh = build_uniform_1d(-1.0, 1.0, 6);
  auto fn = [](double x, double* s) { s[0] = 0.5 * x * x - x + 0.25; };
  auto sol = l2_project_1d(mesh, 2, 1, fn);
  auto rep = error_norms_1d(sol, fn, 0);
  CHECK(rep.e1 < 1e-13);
  CHECK(rep.e2 < 1e-13);
  CHECK(rep.e3 < 1e-13);
  CHECK(rep.e4 < 1e-13);
  CHECK(rep.e5 < 1e-13);
}

TEST_CASE("a pure mode-1 perturbation has the closed-form norms") {
  // sol = exact + c * phi_1 on every cell:
  //   e2 = |c| sqrt(|domain| / 12), e4 = 0, e5 = |c|/2 sqrt(|domain|),
  //   e3 = |c|/2 (edge values dominate). e1 integrates |c xi|, whose kink the
  //   Gauss rule only approximates, so it gets a band rather than an equality.
  auto mesh = build_uniform_1d(0.0, 2.0, 8);
  auto fn = [](double x, double* s) { s[0] = 3.0 - x; };
  auto sol = l2_project_1d(mesh, 2, 1, fn);
  double c = 1e-3;
  for (int j = 0; j < 8; ++j) sol.at(j, 0, 1) += c;
  auto rep = error_norms_1d(sol, fn, 0);
  CHECK(rep.e1 > 0.8 * c * 2.0 / 4.0);
  CHECK(rep.e1 < 1.0001 * c * 2.0 / 4.0);
  CHECK(rep.e2 == doctest::Approx(c * std::sqrt(2.0 / 12.0)).epsilon(1e-12));
  CHECK(rep.e3 == doctest::Approx(c / 2.0).epsilon(1e-12));
  CHECK(rep.e4 < 1e-14);
  CHECK(rep.e5 == doctest::Approx(0.5 * c * std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("a nonnegative polynomial perturbation integrates exactly") {
  // sol = exact + c * (phi_0 + phi_2) = exact + 12 c xi^2, which never changes
  // sign, so every norm has a closed form the quadrature reproduces exactly:
  //   e1 = c |domain|, e2 = c sqrt(1.8 |domain|), e3 = 3c (edges),
  //   e4 = c sqrt(|domain|), e5 = 3c sqrt(|domain|).
  auto mesh = build_uniform_1d(0.0, 2.0, 8);
  auto fn = [](double x, double* s) { s[0] = 3.0 - x; };
  auto sol = l2_project_1d(mesh, 2, 1, fn);
  double c = 1e-3;
  for (int j = 0; j < 8; ++j) {
    sol.at(j, 0, 0) += c;
    sol.at(j, 0, 2) += c;
  }
  auto rep = error_norms_1d(sol, fn, 0);
  CHECK(rep.e1 == doctest::Approx(c * 2.0).epsilon(1e-12));
  CHECK(rep.e2 == doctest::Approx(c * std::sqrt(1.8 * 2.0)).epsilon(1e-12));
  CHECK(rep.e3 == doctest::Approx(3.0 * c).epsilon(1e-12));
  CHECK(rep.e4 == doctest::Approx(c * std::sqrt(2.0)).epsilon(1e-12));
  CHECK(rep.e5 == doctest::Approx(3.0 * c * std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("a pure average shift drives e4 and e5 identically") {
  auto mesh = build_uniform_1d(0.0, 3.0, 6);
  auto fn = [](double x, double* s) { s[0] = x; };
  auto sol = l2_project_1d(mesh, 1, 1, fn);
  double d = 2.5e-4;
  for (int j = 0; j < 6; ++j) sol.at(j, 0, 0) += d;
  auto rep = error_norms_1d(sol, fn, 0);
  CHECK(rep.e1 == doctest::Approx(d * 3.0).epsilon(1e-12));
  CHECK(rep.e2 == doctest::Approx(d * std::sqrt(3.0)).epsilon(1e-12));
  CHECK(rep.e3 == doctest::Approx(d).epsilon(1e-12));
  CHECK(rep.e4 == doctest::Approx(d * std::sqrt(3.0)).epsilon(1e-12));
  CHECK(rep.e5 == doctest::Approx(d * std::sqrt(3.0)).epsilon(1e-12));
}

TEST_CASE("the max norm samples cell endpoints, not just quadrature nodes") {
  auto mesh = build_uniform_1d(0.0, 1.0, 4);
  auto zero = [](double, double* s) { s[0] = 0.0; };
  auto sol = make_solution_1d(mesh, 1, 1);
  for (int j = 0; j < 4; ++j) sol.at(j, 0, 1) = 1.0;  // peaks of 1/2 at edges
  auto rep = error_norms_1d(sol, zero, 0);
  CHECK(rep.e3 == doctest::Approx(0.5).epsilon(1e-13));
}

TEST_CASE("component selection reads the right slice") {
  auto mesh = build_uniform_1d(0.0, 1.0, 4);
  auto fn = [](double x, double* s) {
    s[0] = x;
    s[1] = -x;
  };
  auto sol = l2_project_1d(mesh, 1, 2, fn);
  for (int j = 0; j < 4; ++j) sol.at(j, 1, 0) += 0.01;
  auto rep0 = error_norms_1d(sol, fn, 0);
  auto rep1 = error_norms_1d(sol, fn, 1);
  CHECK(rep0.e1 < 1e-14);
  CHECK(rep1.e1 == doctest::Approx(0.01).epsilon(1e-12));
}

TEST_CASE("2D norms: projection is exact, perturbations scale, e5 is absent") {
  auto mesh = build_uniform_2d(0.0, 1.0, 4, 0.0, 2.0, 4);
  auto fn = [](double x, double y, double* s) { s[0] = x + 2.0 * y; };
  auto sol = l2_project_2d(mesh, 1, 1, fn);
  auto rep = error_norms_2d(sol, fn, 0);
  CHECK(rep.e1 < 1e-13);
  CHECK(rep.e2 < 1e-13);
  CHECK(rep.e3 < 1e-13);
  CHECK(rep.e4 < 1e-13);
  CHECK(std::isnan(rep.e5));

  double d = 1e-3;
  for (int c = 0; c < mesh->num_cells(); ++c) sol.at(c, 0, 0) += d;
  rep = error_norms_2d(sol, fn, 0);
  CHECK(rep.e1 == doctest::Approx(d * 2.0).epsilon(1e-11));  // area 2
  CHECK(rep.e2 == doctest::Approx(d * std::sqrt(2.0)).epsilon(1e-11));
  CHECK(rep.e3 == doctest::Approx(d).epsilon(1e-11));
  CHECK(rep.e4 == doctest::Approx(d * std::sqrt(2.0)).epsilon(1e-11));
}

TEST_CASE("downwind point sampling can be disabled") {
  auto mesh = build_uniform_1d(0.0, 1.0, 4);
  auto fn = [](double x, double* s) { s[0] = x; };
  auto sol = l2_project_1d(mesh, 1, 1, fn);
  auto rep = error_norms_1d(sol, fn, 0, 0, false);
  CHECK(std::isnan(rep.e5));
}
