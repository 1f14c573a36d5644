#include <cmath>
#include <limits>

#include "doctest.h"
#include "oedg/dg_solution.hpp"
#include "oedg/mesh.hpp"

using namespace oedg;

TEST_CASE("uniform 1D mesh geometry") {
  auto mesh = build_uniform_1d(-1.0, 3.0, 8);
  REQUIRE(mesh->num_cells() == 8);
  CHECK(mesh->x_lo() == -1.0);
  CHECK(mesh->x_hi() == 3.0);
  CHECK(mesh->length() == 4.0);
  CHECK(mesh->width(3) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(mesh->min_width() == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(mesh->center(0) == doctest::Approx(-0.75).epsilon(1e-15));
  CHECK(mesh->edge(8) == 3.0);
  CHECK(mesh->periodic());
}

TEST_CASE("1D neighbors wrap on periodic meshes and stop at physical ends") {
  auto periodic = build_uniform_1d(0.0, 1.0, 4);
  CHECK(periodic->neighbor(0, -1) == 3);
  CHECK(periodic->neighbor(3, +1) == 0);
  CHECK(periodic->neighbor(1, +1) == 2);

  auto walled = build_uniform_1d(0.0, 1.0, 4, BoundaryKind::Physical, BoundaryKind::Physical);
  CHECK(walled->neighbor(0, -1) == -1);
  CHECK(walled->neighbor(3, +1) == -1);
  CHECK(walled->neighbor(2, -1) == 1);
  CHECK_FALSE(walled->periodic());
}

TEST_CASE("mesh construction rejects degenerate input") {
  CHECK_THROWS(build_uniform_1d(0.0, 1.0, 0));
  CHECK_THROWS(build_uniform_1d(1.0, 0.0, 4));
  CHECK_THROWS(build_uniform_2d(0.0, 1.0, 0, 0.0, 1.0, 4));
}

TEST_CASE("uniform 2D mesh geometry and flat indexing") {
  auto mesh = build_uniform_2d(0.0, 2.0, 4, -1.0, 1.0, 2);
  REQUIRE(mesh->nx() == 4);
  REQUIRE(mesh->ny() == 2);
  CHECK(mesh->num_cells() == 8);
  CHECK(mesh->hx(1) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(mesh->hy(0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(mesh->area() == doctest::Approx(4.0).epsilon(1e-15));
  CHECK(mesh->x_center(2) == doctest::Approx(1.25).epsilon(1e-15));
  CHECK(mesh->y_center(1) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(mesh->flat(3, 1) == 7);
  CHECK(mesh->unflat(7).i == 3);
  CHECK(mesh->unflat(7).j == 1);
  for (int c = 0; c < mesh->num_cells(); ++c) {
    auto idx = mesh->unflat(c);
    CHECK(mesh->flat(idx.i, idx.j) == c);
  }
}

TEST_CASE("2D neighbors respect per-side boundary kinds") {
  auto mesh = build_uniform_2d(0.0, 1.0, 3, 0.0, 1.0, 3,
                               std::array<BoundaryKind, 4>{BoundaryKind::Periodic,
                                                           BoundaryKind::Periodic,
                                                           BoundaryKind::Physical,
                                                           BoundaryKind::Physical});
  CHECK(mesh->periodic_x());
  CHECK_FALSE(mesh->periodic_y());
  CHECK(mesh->neighbor_x(0, 1, -1) == mesh->flat(2, 1));
  CHECK(mesh->neighbor_x(2, 0, +1) == mesh->flat(0, 0));
  CHECK(mesh->neighbor_y(1, 0, -1) == -1);
  CHECK(mesh->neighbor_y(1, 2, +1) == -1);
  CHECK(mesh->neighbor_y(1, 1, +1) == mesh->flat(1, 2));
}

TEST_CASE("solution containers size and index their coefficients correctly") {
  auto mesh = build_uniform_1d(0.0, 1.0, 5);
  auto sol = make_solution_1d(mesh, 2, 3);
  CHECK(sol.degree == 2);
  CHECK(sol.n_comp == 3);
  CHECK(sol.n_modes() == 3);
  CHECK(sol.cell_stride() == 9);
  REQUIRE(sol.coeff.size() == 45);
  sol.at(4, 2, 1) = 7.5;
  CHECK(sol.coeff[4 * 9 + 2 * 3 + 1] == 7.5);
  CHECK(sol.cell_ptr(4)[2 * 3 + 1] == 7.5);

  auto mesh2 = build_uniform_2d(0.0, 1.0, 3, 0.0, 1.0, 2);
  auto sol2 = make_solution_2d(mesh2, 2, 4);
  CHECK(sol2.n_modes() == 6);
  CHECK(sol2.cell_stride() == 24);
  REQUIRE(sol2.coeff.size() == 6u * 24u);
  sol2.at(5, 3, 2) = -1.25;
  CHECK(sol2.coeff[5 * 24 + 3 * 6 + 2] == -1.25);
}

TEST_CASE("pointwise evaluation matches the modal expansion") {
  auto mesh = build_uniform_1d(0.0, 2.0, 4);
  auto sol = make_solution_1d(mesh, 2, 1);
  // u(xi) = 1 + 2 xi + (12 xi^2 - 1) in cell 1.
  sol.at(1, 0, 0) = 1.0;
  sol.at(1, 0, 1) = 2.0;
  sol.at(1, 0, 2) = 1.0;
  CHECK(evaluate_1d(sol, 1, 0, 0.5) == doctest::Approx(1.0 + 1.0 + 2.0).epsilon(1e-14));
  CHECK(evaluate_1d(sol, 1, 0, 0.0) == doctest::Approx(0.0).epsilon(1e-14));
  // d/dx picks up 1/h = 2: u'(xi) = (2 + 24 xi) / h.
  CHECK(evaluate_1d(sol, 1, 0, 0.25, 1) == doctest::Approx((2.0 + 6.0) * 2.0).epsilon(1e-13));
  CHECK(sol.cell_average(1, 0) == 1.0);

  auto mesh2 = build_uniform_2d(0.0, 1.0, 2, 0.0, 1.0, 2);
  auto sol2 = make_solution_2d(mesh2, 1, 2);
  const ModeSet2D& set = ModeSet2D::get(1);
  sol2.at(3, 1, set.index(1, 0)) = 2.0;
  sol2.at(3, 1, set.index(0, 1)) = -1.0;
  CHECK(evaluate_2d(sol2, 3, 1, 0.5, 0.5) == doctest::Approx(2.0 * 0.5 - 0.5).epsilon(1e-14));
  double state[2];
  evaluate_state_2d(sol2, 3, 0.5, 0.5, state);
  CHECK(state[0] == 0.0);
  CHECK(state[1] == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("total mass sums width-weighted averages") {
  auto mesh = build_uniform_1d(0.0, 3.0, 6);
  auto sol = make_solution_1d(mesh, 1, 2);
  for (int j = 0; j < 6; ++j) {
    sol.at(j, 0, 0) = 2.0;
    sol.at(j, 1, 0) = j;
    sol.at(j, 1, 1) = 5.0;  // higher modes carry no mass
  }
  CHECK(total_mass_1d(sol, 0) == doctest::Approx(6.0).epsilon(1e-14));
  CHECK(total_mass_1d(sol, 1) == doctest::Approx(0.5 * 15.0).epsilon(1e-14));

  auto mesh2 = build_uniform_2d(0.0, 1.0, 2, 0.0, 2.0, 2);
  auto sol2 = make_solution_2d(mesh2, 1, 1);
  for (int c = 0; c < 4; ++c) sol2.at(c, 0, 0) = 3.0;
  CHECK(total_mass_2d(sol2, 0) == doctest::Approx(6.0).epsilon(1e-14));
}

TEST_CASE("non-finite detection") {
  std::vector<double> ok{0.0, 1.0, -2.5};
  CHECK_FALSE(has_nonfinite(ok));
  std::vector<double> bad{0.0, std::numeric_limits<double>::quiet_NaN()};
  CHECK(has_nonfinite(bad));
  std::vector<double> inf{std::numeric_limits<double>::infinity()};
  CHECK(has_nonfinite(inf));
}
