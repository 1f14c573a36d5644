#include <cmath>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "doctest.h"
#include "oedg/models.hpp"
#include "oedg/problems.hpp"

using namespace oedg;

namespace {
constexpr double kPi = 3.14159265358979323846;

double ic_value_1d(const ProblemSpec& s, double x, int comp = 0) {
  std::vector<double> u(s.model.n_comp);
  s.ic1(x, u.data());
  return u[comp];
}

double ic_value_2d(const ProblemSpec& s, double x, double y, int comp = 0) {
  std::vector<double> u(s.model.n_comp);
  s.ic2(x, y, u.data());
  return u[comp];
}
}  // namespace

TEST_CASE("registry lists every problem once") {
  const auto& reg = problem_registry();
  CHECK(reg.size() == 20);
  std::set<std::string> ids;
  int n1 = 0, n2 = 0;
  for (const auto& info : reg) {
    CHECK(ids.insert(info.id).second);
    CHECK(!info.summary.empty());
    (info.dim == 1 ? n1 : n2)++;
  }
  CHECK(n1 == 9);
  CHECK(n2 == 11);
  CHECK(problem_exists("lax"));
  CHECK(problem_exists("mach-2000-jet"));
  CHECK(!problem_exists("sod"));
}

TEST_CASE("every registered problem builds with defaults") {
  for (const auto& info : problem_registry()) {
    CAPTURE(info.id);
    ProblemSpec s = make_problem(info.id);
    CHECK(s.id == info.id);
    CHECK(s.dim == info.dim);
    CHECK(s.k >= 1);
    CHECK(s.t_final > 0.0);
    CHECK(s.cfl > 0.0);
    if (s.dim == 1) {
      CHECK(s.n >= 2);
      CHECK(static_cast<bool>(s.ic1));
    } else {
      CHECK(s.nx >= 2);
      CHECK(s.ny >= 2);
      CHECK(static_cast<bool>(s.ic2));
    }
  }
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(make_problem("no-such-problem"), std::invalid_argument);

  ProblemParams p;
  p.k = 9;
  CHECK_THROWS_AS(make_problem("advection-smooth", p), std::invalid_argument);

  p = {};
  p.lambda = 2.0;
  CHECK_THROWS_AS(make_problem("blast-wave", p), std::invalid_argument);

  p = {};
  p.units = "minutes";
  CHECK_THROWS_AS(make_problem("lax", p), std::invalid_argument);

  p = {};
  p.units = "furlongs";
  CHECK_THROWS_AS(make_problem("lwr-freeway", p), std::invalid_argument);

  p = {};
  p.nx = 77;
  p.ny = 50;
  CHECK_THROWS_AS(make_problem("two-plates", p), std::invalid_argument);

  p = {};
  p.nx = 16;
  CHECK_THROWS_AS(make_problem("lax", p), std::invalid_argument);
  p = {};
  p.n = 64;
  CHECK_THROWS_AS(make_problem("shock-vortex", p), std::invalid_argument);

  p = {};
  p.gamma = 1.4;
  CHECK_THROWS_AS(make_problem("advection-smooth", p), std::invalid_argument);
  p.gamma = 0.9;
  CHECK_THROWS_AS(make_problem("lax", p), std::invalid_argument);
}

TEST_CASE("defaults match the benchmark setups") {
  ProblemSpec lax = make_problem("lax");
  CHECK(lax.n == 256);
  CHECK(lax.k == 2);
  CHECK(lax.t_final == doctest::Approx(1.3));
  CHECK(lax.x_lo == doctest::Approx(-5.0));
  CHECK(lax.x_hi == doctest::Approx(5.0));
  CHECK(lax.rk == RKKind::SspRk3);
  CHECK(lax.oe);
  CHECK(lax.bcs1.left.kind == BC1D::Kind::Outflow);
  CHECK(lax.reference.n_cells == 20000);

  ProblemSpec dm = make_problem("double-mach");
  CHECK(dm.nx == 960);
  CHECK(dm.ny == 240);
  CHECK(dm.k == 3);
  CHECK(dm.t_final == doctest::Approx(0.2));

  ProblemSpec jet = make_problem("mach-2000-jet");
  CHECK(jet.model.gamma == doctest::Approx(5.0 / 3.0));
  CHECK(jet.t_final == doctest::Approx(0.001));

  ProblemSpec adv = make_problem("advection-smooth");
  CHECK(adv.n == 128);
  CHECK(adv.cfl == doctest::Approx(1.0 / 5.0));
  CHECK(adv.rk == RKKind::SspRk3);
  CHECK(adv.flux == FluxKind::Upwind);

  ProblemParams p;
  p.k = 3;
  ProblemSpec adv3 = make_problem("advection-smooth", p);
  CHECK(adv3.cfl == doctest::Approx(1.0 / 7.0));
  CHECK(adv3.rk == RKKind::Rk4Classic);

  ProblemSpec es = make_problem("euler-smooth");
  CHECK(es.cfl == doctest::Approx(0.95 / 5.0));
  ProblemSpec so = make_problem("shu-osher");
  CHECK(so.n == 400);
  CHECK(so.k == 3);
  CHECK(so.rk == RKKind::SspRk3);
}

TEST_CASE("rk default by degree") {
  CHECK(default_rk_for_degree(1) == RKKind::SspRk2);
  CHECK(default_rk_for_degree(2) == RKKind::SspRk3);
  CHECK(default_rk_for_degree(3) == RKKind::Rk4Classic);
  CHECK(default_rk_for_degree(5) == RKKind::Rk4Classic);
}

TEST_CASE("advection-scale scales the initial data") {
  ProblemParams p;
  p.lambda = 100.0;
  ProblemSpec scaled = make_problem("advection-scale", p);
  ProblemSpec base = make_problem("advection-discontinuous");
  for (double x : {0.05, 0.31, 0.5, 0.79, 0.93}) {
    CHECK(ic_value_1d(scaled, x) == doctest::Approx(100.0 * ic_value_1d(base, x)).epsilon(1e-14));
  }
  CHECK(scaled.lambda == doctest::Approx(100.0));

  p = {};
  p.beta = 4.0;
  ProblemSpec fast = make_problem("advection-scale", p);
  CHECK(fast.model.advection_x == doctest::Approx(4.0));
  // Faster wave, proportionally shorter default horizon: same final profile.
  CHECK(fast.t_final == doctest::Approx(base.t_final / 4.0));
  std::vector<double> a(1), b(1);
  fast.exact1(0.37, fast.t_final, a.data());
  base.exact1(0.37, base.t_final, b.data());
  CHECK(a[0] == doctest::Approx(b[0]).epsilon(1e-14));
}

TEST_CASE("burgers-smooth exact solution follows characteristics") {
  ProblemSpec s = make_problem("burgers-smooth");
  REQUIRE(s.has_exact());
  // u satisfies u = u0(x - u t) along characteristics.
  for (double x : {0.3, 2.0, 4.4}) {
    double u;
    s.exact1(x, 0.5, &u);
    CHECK(u == doctest::Approx(std::sin(x - u * 0.5) + 0.5).epsilon(1e-12));
  }
  double u0;
  s.exact1(1.2, 0.0, &u0);
  CHECK(u0 == doctest::Approx(std::sin(1.2) + 0.5));

  // Past shock formation there is no single-valued exact solution.
  ProblemParams p;
  p.t_final = 2.0;
  ProblemSpec late = make_problem("burgers-smooth", p);
  CHECK(!late.has_exact());
}

TEST_CASE("lwr-freeway initial profile and signals") {
  ProblemSpec s = make_problem("lwr-freeway");
  CHECK(s.n == 800);
  CHECK(s.x_hi == doctest::Approx(20.0));
  CHECK(s.t_final == doctest::Approx(1.0));
  CHECK(s.reference.n_cells == 80000);

  CHECK(ic_value_1d(s, 5.0) == doctest::Approx(50.0));
  CHECK(ic_value_1d(s, 10.5) == doctest::Approx(200.0));
  CHECK(ic_value_1d(s, 12.0) == doctest::Approx(350.0));
  CHECK(ic_value_1d(s, 14.5) == doctest::Approx(200.0));
  CHECK(ic_value_1d(s, 18.0) == doctest::Approx(50.0));

  double u;
  s.bcs1.left.inflow(0.0, 0.05, &u);
  CHECK(u == doctest::Approx(0.0));
  s.bcs1.left.inflow(0.0, 0.25, &u);
  CHECK(u == doctest::Approx(75.0));
  s.bcs1.left.inflow(0.0, 0.75, &u);
  CHECK(u == doctest::Approx(50.0));
  // Exit light: red for the first 2 minutes of each 3-minute cycle.
  s.bcs1.right.inflow(20.0, 1.0 / 60.0, &u);
  CHECK(u == doctest::Approx(0.0));
  s.bcs1.right.inflow(20.0, 2.5 / 60.0, &u);
  CHECK(u == doctest::Approx(350.0));
  s.bcs1.right.inflow(20.0, 3.0 / 60.0 + 1.0 / 60.0, &u);
  CHECK(u == doctest::Approx(0.0));

  ProblemParams p;
  p.units = "meters";
  ProblemSpec m = make_problem("lwr-freeway", p);
  CHECK(m.x_hi == doctest::Approx(20000.0));
  CHECK(ic_value_1d(m, 12000.0) == doctest::Approx(0.350));
  double flux_m, flux_km;
  double rho_m = 0.2, rho_km = 200.0;
  physical_flux(m.model, &rho_m, &flux_m, nullptr);
  physical_flux(s.model, &rho_km, &flux_km, nullptr);
  // Vehicles per hour past a point does not depend on the length unit used
  // to measure density, so the two fluxes agree without any rescaling.
  CHECK(flux_m == doctest::Approx(flux_km).epsilon(1e-12));

  p.units = "minutes";
  ProblemSpec mn = make_problem("lwr-freeway", p);
  CHECK(mn.t_final == doctest::Approx(60.0));
  mn.bcs1.left.inflow(0.0, 15.0, &u);
  CHECK(u == doctest::Approx(75.0));
}

TEST_CASE("euler-smooth exact density wave") {
  ProblemSpec s = make_problem("euler-smooth");
  std::vector<double> cons(3), prim(3);
  s.exact1(1.7, 0.6, cons.data());
  euler_cons_to_prim(s.model, cons.data(), prim.data());
  const double sn = std::sin(1.7 - 0.6);
  CHECK(prim[0] == doctest::Approx(2.0 + 2.0 * sn * sn).epsilon(1e-13));
  CHECK(prim[1] == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(prim[2] == doctest::Approx(2.0).epsilon(1e-13));
}

TEST_CASE("shu-osher initial data and boundary states") {
  ProblemSpec s = make_problem("shu-osher");
  std::vector<double> cons(3), prim(3);
  s.ic1(-4.5, cons.data());
  euler_cons_to_prim(s.model, cons.data(), prim.data());
  CHECK(prim[0] == doctest::Approx(3.857143));
  CHECK(prim[1] == doctest::Approx(2.629369));
  CHECK(prim[2] == doctest::Approx(10.33333));

  s.ic1(1.0, cons.data());
  euler_cons_to_prim(s.model, cons.data(), prim.data());
  CHECK(prim[0] == doctest::Approx(1.0 + 0.2 * std::sin(5.0)));
  CHECK(prim[1] == doctest::Approx(0.0));
  CHECK(prim[2] == doctest::Approx(1.0));

  REQUIRE(s.bcs1.left.kind == BC1D::Kind::Inflow);
  s.bcs1.left.inflow(-5.0, 0.7, cons.data());
  euler_cons_to_prim(s.model, cons.data(), prim.data());
  CHECK(prim[0] == doctest::Approx(3.857143));
  CHECK(s.bcs1.right.kind == BC1D::Kind::Outflow);
}

TEST_CASE("blast-wave pressure plateaus") {
  ProblemSpec s = make_problem("blast-wave");
  CHECK(s.n == 640);
  CHECK(s.bcs1.left.kind == BC1D::Kind::Reflective);
  std::vector<double> cons(3), prim(3);
  for (auto [x, pr] : std::vector<std::pair<double, double>>{
           {0.05, 1000.0}, {0.5, 0.01}, {0.95, 100.0}}) {
    s.ic1(x, cons.data());
    euler_cons_to_prim(s.model, cons.data(), prim.data());
    CHECK(prim[0] == doctest::Approx(1.0));
    CHECK(prim[1] == doctest::Approx(0.0));
    CHECK(prim[2] == doctest::Approx(pr));
  }
}

TEST_CASE("2d advection exact solution translates diagonally") {
  ProblemSpec s = make_problem("advection-smooth-2d");
  CHECK(s.nx == 80);
  CHECK(s.ny == 64);
  const double sn = std::sin(kPi * (0.3 - 0.1));
  CHECK(ic_value_2d(s, 0.3, -0.1) == doctest::Approx(sn * sn).epsilon(1e-14));
  std::vector<double> u(1);
  s.exact2(0.3, -0.1, 0.25, u.data());
  const double sm = std::sin(kPi * (0.3 - 0.1 - 0.5));
  CHECK(u[0] == doctest::Approx(sm * sm).epsilon(1e-14));
}

TEST_CASE("pentagram indicator geometry") {
  ProblemSpec s = make_problem("pentagram");
  // At theta = pi/2, sin(5 theta) = 1 and the radius is (3 + 3)/8 = 0.75.
  CHECK(ic_value_2d(s, 0.0, 0.74) == doctest::Approx(1.0));
  CHECK(ic_value_2d(s, 0.0, 0.76) == doctest::Approx(0.0));
  CHECK(ic_value_2d(s, 0.0, 0.0) == doctest::Approx(1.0));
  // Advection wraps the pattern around the periodic box.
  std::vector<double> a(1);
  s.exact2(0.3, 0.1, 2.0, a.data());
  CHECK(a[0] == doctest::Approx(ic_value_2d(s, 0.3, 0.1)));
}

TEST_CASE("shock-vortex upstream and downstream states") {
  ProblemSpec s = make_problem("shock-vortex");
  std::vector<double> cons(4), prim(4);
  // Downstream of the Mach 1.1 normal shock.
  s.ic2(1.5, 0.5, cons.data());
  euler_cons_to_prim(s.model, cons.data(), prim.data());
  CHECK(prim[0] == doctest::Approx(2.904 / 2.484).epsilon(1e-4));
  CHECK(prim[3] == doctest::Approx(1.245).epsilon(1e-12));
  // Far from the vortex core the left state is the upstream mean flow.
  s.ic2(0.02, 0.02, cons.data());
  euler_cons_to_prim(s.model, cons.data(), prim.data());
  CHECK(prim[0] == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(prim[1] == doctest::Approx(1.1 * std::sqrt(1.4)).epsilon(1e-9));
  // At the vortex center the temperature dip lowers the density.
  s.ic2(0.25, 0.5, cons.data());
  euler_cons_to_prim(s.model, cons.data(), prim.data());
  CHECK(prim[0] == doctest::Approx(0.8857).epsilon(1e-3));
  CHECK(prim[0] < 1.0);
}

TEST_CASE("double-mach moving-shock top boundary") {
  ProblemSpec s = make_problem("double-mach");
  REQUIRE(s.bcs2.side[kTop].kind == BC2D::Kind::Custom);
  std::vector<double> interior(4, 0.0), ghost(4), prim(4);
  // At t=0 the shock meets the top at x ~ 0.744, so x=2 sees pre-shock gas.
  s.bcs2.side[kTop].ghost_fn(2.0, 1.0, 0.0, interior.data(), 0.0, 1.0, ghost.data());
  euler_cons_to_prim(s.model, ghost.data(), prim.data());
  CHECK(prim[0] == doctest::Approx(1.4));
  // By t=0.2 the shock has passed x=2 and the ghost is post-shock.
  s.bcs2.side[kTop].ghost_fn(2.0, 1.0, 0.2, interior.data(), 0.0, 1.0, ghost.data());
  euler_cons_to_prim(s.model, ghost.data(), prim.data());
  CHECK(prim[0] == doctest::Approx(8.0));

  // Bottom: post-shock before the ramp, mirrored wall after it.
  std::vector<double> in = {1.0, 0.3, -0.7, 2.5};
  s.bcs2.side[kBottom].ghost_fn(0.1, 0.0, 0.0, in.data(), 0.0, -1.0, ghost.data());
  euler_cons_to_prim(s.model, ghost.data(), prim.data());
  CHECK(prim[0] == doctest::Approx(8.0));
  s.bcs2.side[kBottom].ghost_fn(1.0, 0.0, 0.0, in.data(), 0.0, -1.0, ghost.data());
  CHECK(ghost[0] == doctest::Approx(in[0]));
  CHECK(ghost[1] == doctest::Approx(in[1]));
  CHECK(ghost[2] == doctest::Approx(-in[2]));
  CHECK(ghost[3] == doctest::Approx(in[3]));
}

TEST_CASE("jet inflow strip and ambient copy") {
  ProblemSpec s = make_problem("mach-2000-jet");
  REQUIRE(s.bcs2.side[kLeft].kind == BC2D::Kind::Custom);
  std::vector<double> in = {0.7, 0.1, 0.2, 1.9}, ghost(4), prim(4);
  s.bcs2.side[kLeft].ghost_fn(0.0, 0.0, 0.0, in.data(), -1.0, 0.0, ghost.data());
  euler_cons_to_prim(s.model, ghost.data(), prim.data());
  CHECK(prim[0] == doctest::Approx(5.0));
  CHECK(prim[1] == doctest::Approx(800.0));
  s.bcs2.side[kLeft].ghost_fn(0.0, 0.2, 0.0, in.data(), -1.0, 0.0, ghost.data());
  for (int c = 0; c < 4; ++c) CHECK(ghost[c] == doctest::Approx(in[c]));
}

TEST_CASE("two-plates wall segments on mesh lines") {
  ProblemSpec s = make_problem("two-plates");
  REQUIRE(s.bcs2.walls.size() == 2);
  CHECK(s.bcs2.walls[0].normal_axis == 1);
  CHECK(s.bcs2.walls[0].position == doctest::Approx(-2.0));
  CHECK(s.bcs2.walls[1].position == doctest::Approx(2.0));
  CHECK(s.bcs2.walls[0].lo == doctest::Approx(2.0));
  CHECK(s.bcs2.walls[0].hi == doctest::Approx(3.0));
  std::vector<double> cons(4), prim(4);
  s.ic2(5.0, 0.0, cons.data());
  euler_cons_to_prim(s.model, cons.data(), prim.data());
  CHECK(prim[1] == doctest::Approx(std::cos(kPi / 12.0)));
  CHECK(prim[2] == doctest::Approx(std::sin(kPi / 12.0)));
  CHECK(prim[3] == doctest::Approx(1.0 / (1.4 * 9.0)));
}

TEST_CASE("euler 2d riemann quadrants") {
  ProblemSpec s1 = make_problem("euler-2d-riemann-1");
  CHECK(s1.t_final == doctest::Approx(0.25));
  std::vector<double> cons(4), prim(4);
  s1.ic2(0.25, 0.25, cons.data());
  euler_cons_to_prim(s1.model, cons.data(), prim.data());
  CHECK(prim[0] == doctest::Approx(0.8));
  s1.ic2(0.75, 0.75, cons.data());
  euler_cons_to_prim(s1.model, cons.data(), prim.data());
  CHECK(prim[0] == doctest::Approx(0.5313));
  CHECK(prim[3] == doctest::Approx(0.4));
  s1.ic2(0.25, 0.75, cons.data());
  euler_cons_to_prim(s1.model, cons.data(), prim.data());
  CHECK(prim[1] == doctest::Approx(0.7276));

  ProblemSpec s2 = make_problem("euler-2d-riemann-2");
  CHECK(s2.t_final == doctest::Approx(0.35));
  s2.ic2(0.25, 0.25, cons.data());
  euler_cons_to_prim(s2.model, cons.data(), prim.data());
  CHECK(prim[0] == doctest::Approx(0.138));
  CHECK(prim[1] == doctest::Approx(1.206));
  CHECK(prim[2] == doctest::Approx(1.206));
}

TEST_CASE("exact_at binds the evaluation time") {
  ProblemSpec s = make_problem("advection-smooth");
  auto at = s.exact_at_1d(0.4);
  REQUIRE(static_cast<bool>(at));
  double a, b;
  at(0.3, &a);
  s.exact1(0.3, 0.4, &b);
  CHECK(a == b);
  ProblemSpec lax = make_problem("lax");
  CHECK(!lax.exact_at_1d(1.3));
}
