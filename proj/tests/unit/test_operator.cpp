#include <cmath>
#include <memory>

#include "doctest.h"
#include "oedg/projections.hpp"
#include "oedg/spatial_operator.hpp"

using namespace oedg;

namespace {

constexpr double kPi = 3.14159265358979323846;

}  // namespace

TEST_CASE("residual vanishes on constant states for every boundary kind") {
  SUBCASE("periodic advection") {
    auto mesh = build_uniform_1d(0.0, 1.0, 8);
    Operator1D op(mesh, advection_model_1d(1.0), BCSet1D::all_periodic(), FluxKind::Upwind, 2);
    auto sol = l2_project_1d(mesh, 2, 1, [](double, double* s) { s[0] = 3.2; });
    auto out = make_solution_1d(mesh, 2, 1);
    op.residual(sol, 0.0, out);
    for (double v : out.coeff) CHECK(std::abs(v) < 1e-12);
  }
  SUBCASE("outflow burgers") {
    auto mesh = build_uniform_1d(0.0, 1.0, 8, BoundaryKind::Physical, BoundaryKind::Physical);
    Operator1D op(mesh, burgers_model_1d(), BCSet1D::all_outflow(), FluxKind::LocalLaxFriedrichs,
                  2);
    auto sol = l2_project_1d(mesh, 2, 1, [](double, double* s) { s[0] = -0.7; });
    auto out = make_solution_1d(mesh, 2, 1);
    op.residual(sol, 0.0, out);
    for (double v : out.coeff) CHECK(std::abs(v) < 1e-12);
  }
  SUBCASE("reflective euler at rest") {
    auto mesh = build_uniform_1d(0.0, 1.0, 8, BoundaryKind::Physical, BoundaryKind::Physical);
    Model m = euler_model_1d();
    Operator1D op(mesh, m, BCSet1D::all_reflective(), FluxKind::LocalLaxFriedrichs, 2);
    auto sol = l2_project_1d(mesh, 2, 3, [&](double, double* s) {
      double prim[3] = {1.0, 0.0, 1.0};
      euler_prim_to_cons(m, prim, s);
    });
    auto out = make_solution_1d(mesh, 2, 3);
    op.residual(sol, 0.0, out);
    for (double v : out.coeff) CHECK(std::abs(v) < 1e-12);
  }
}

TEST_CASE("inflow ghost matching the interior keeps the residual zero") {
  auto mesh = build_uniform_1d(0.0, 1.0, 8, BoundaryKind::Physical, BoundaryKind::Physical);
  BCSet1D bcs;
  bcs.left = BC1D::make_inflow([](double, double, double* s) { s[0] = 1.25; });
  bcs.right = BC1D::outflow();
  Operator1D op(mesh, advection_model_1d(1.0), bcs, FluxKind::Upwind, 1);
  auto sol = l2_project_1d(mesh, 1, 1, [](double, double* s) { s[0] = 1.25; });
  auto out = make_solution_1d(mesh, 1, 1);
  op.residual(sol, 0.0, out);
  for (double v : out.coeff) CHECK(std::abs(v) < 1e-12);
}

TEST_CASE("advection residual approximates -u_x in the cell-average modes") {
  auto mesh = build_uniform_1d(0.0, 1.0, 64);
  Operator1D op(mesh, advection_model_1d(1.0), BCSet1D::all_periodic(), FluxKind::Upwind, 2);
  auto sol = l2_project_1d(mesh, 2, 1, [](double x, double* s) { s[0] = std::sin(2.0 * kPi * x); });
  auto out = make_solution_1d(mesh, 2, 1);
  op.residual(sol, 0.0, out);
  for (int j = 0; j < 64; ++j) {
    // Exact mean of -u_x over cell j via the flux difference of endpoints.
    double a = mesh->edge(j), b = mesh->edge(j + 1);
    double exact = -(std::sin(2.0 * kPi * b) - std::sin(2.0 * kPi * a)) / mesh->width(j);
    CHECK(out.cell_average(j, 0) == doctest::Approx(exact).epsilon(5e-4));
  }
}

TEST_CASE("residual cell-average modes telescope to zero total mass change") {
  SUBCASE("1D periodic") {
    auto mesh = build_uniform_1d(0.0, 1.0, 32);
    Operator1D op(mesh, burgers_model_1d(), BCSet1D::all_periodic(), FluxKind::LocalLaxFriedrichs,
                  3);
    auto sol =
        l2_project_1d(mesh, 3, 1, [](double x, double* s) { s[0] = std::sin(2.0 * kPi * x); });
    auto out = make_solution_1d(mesh, 3, 1);
    op.residual(sol, 0.0, out);
    CHECK(std::abs(total_mass_1d(out, 0)) < 1e-14);
  }
  SUBCASE("2D periodic") {
    auto mesh = build_uniform_2d(0.0, 1.0, 12, 0.0, 1.0, 12);
    Operator2D op(mesh, advection_model_2d(1.0, 0.5), BCSet2D::all_periodic(), FluxKind::Upwind,
                  2);
    auto sol = l2_project_2d(mesh, 2, 1, [](double x, double y, double* s) {
      s[0] = std::cos(2.0 * kPi * (x + y));
    });
    auto out = make_solution_2d(mesh, 2, 1);
    op.residual(sol, 0.0, out);
    CHECK(std::abs(total_mass_2d(out, 0)) < 1e-13);
  }
}

TEST_CASE("2D residual vanishes on constants, including near interior walls") {
  auto mesh = build_uniform_2d(0.0, 1.0, 10, 0.0, 1.0, 10,
                               std::array<BoundaryKind, 4>{BoundaryKind::Physical,
                                                           BoundaryKind::Physical,
                                                           BoundaryKind::Physical,
                                                           BoundaryKind::Physical});
  Model m = euler_model_2d();
  BCSet2D bcs = BCSet2D::all_outflow();
  bcs.walls.push_back({0, 0.5, 0.2, 0.8});
  bcs.walls.push_back({1, 0.3, 0.0, 0.5});
  Operator2D op(mesh, m, bcs, FluxKind::LocalLaxFriedrichs, 2);
  auto sol = l2_project_2d(mesh, 2, 4, [&](double, double, double* s) {
    double prim[4] = {1.0, 0.0, 0.0, 2.0};
    euler_prim_to_cons(m, prim, s);
  });
  auto out = make_solution_2d(mesh, 2, 4);
  op.residual(sol, 0.0, out);
  for (double v : out.coeff) CHECK(std::abs(v) < 1e-12);
}

TEST_CASE("interior wall segments must lie on mesh lines") {
  auto mesh = build_uniform_2d(0.0, 1.0, 10, 0.0, 1.0, 10, BoundaryKind::Physical);
  BCSet2D bcs = BCSet2D::all_outflow();
  bcs.walls.push_back({0, 0.55, 0.2, 0.8});  // x = 0.55 is not an edge
  CHECK_THROWS(Operator2D(mesh, euler_model_2d(), bcs, FluxKind::LocalLaxFriedrichs, 1));
}

TEST_CASE("wall faces are registered on the correct mesh lines") {
  auto mesh = build_uniform_2d(0.0, 1.0, 10, 0.0, 1.0, 10, BoundaryKind::Physical);
  BCSet2D bcs = BCSet2D::all_outflow();
  bcs.walls.push_back({0, 0.5, 0.2, 0.8});
  Operator2D op(mesh, euler_model_2d(), bcs, FluxKind::LocalLaxFriedrichs, 1);
  CHECK(op.is_wall_x_face(5, 3));
  CHECK(op.is_wall_x_face(5, 7));
  CHECK_FALSE(op.is_wall_x_face(5, 1));  // below the segment
  CHECK_FALSE(op.is_wall_x_face(4, 3));  // different line
  CHECK_FALSE(op.is_wall_y_face(3, 5));
}

TEST_CASE("residual is linear for linear advection") {
  auto mesh = build_uniform_1d(0.0, 1.0, 16);
  Operator1D op(mesh, advection_model_1d(2.0), BCSet1D::all_periodic(), FluxKind::Upwind, 2);
  auto a = l2_project_1d(mesh, 2, 1, [](double x, double* s) { s[0] = std::sin(2.0 * kPi * x); });
  auto b = l2_project_1d(mesh, 2, 1, [](double x, double* s) { s[0] = x * (1.0 - x); });
  auto combo = a;
  for (size_t i = 0; i < combo.coeff.size(); ++i) combo.coeff[i] = 2.0 * a.coeff[i] - 3.0 * b.coeff[i];
  auto ra = make_solution_1d(mesh, 2, 1), rb = ra, rc = ra;
  op.residual(a, 0.0, ra);
  op.residual(b, 0.0, rb);
  op.residual(combo, 0.0, rc);
  for (size_t i = 0; i < rc.coeff.size(); ++i)
    CHECK(rc.coeff[i] == doctest::Approx(2.0 * ra.coeff[i] - 3.0 * rb.coeff[i]).epsilon(1e-12));
}

TEST_CASE("semidiscrete residual converges to the exact transport rate") {
  // For smooth periodic advection, the residual modes approach the projection
  // of -c u_x. The raw-coefficient distance is dominated by the top mode,
  // which converges at O(h^k); for k=2 halving h should quarter the error.
  double err_prev = 0.0;
  for (int level = 0; level < 2; ++level) {
    int n = 32 << level;
    auto mesh = build_uniform_1d(0.0, 1.0, n);
    Operator1D op(mesh, advection_model_1d(1.0), BCSet1D::all_periodic(), FluxKind::Upwind, 2);
    auto sol =
        l2_project_1d(mesh, 2, 1, [](double x, double* s) { s[0] = std::sin(2.0 * kPi * x); });
    auto out = make_solution_1d(mesh, 2, 1);
    op.residual(sol, 0.0, out);
    auto target = l2_project_1d(
        mesh, 2, 1, [](double x, double* s) { s[0] = -2.0 * kPi * std::cos(2.0 * kPi * x); });
    double err = 0.0;
    for (size_t i = 0; i < out.coeff.size(); ++i) {
      double d = out.coeff[i] - target.coeff[i];
      err += d * d;
    }
    err = std::sqrt(err / n);
    if (level > 0) CHECK(err < 0.3 * err_prev);
    err_prev = err;
  }
}
