#include "oedg/problems.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace oedg {

namespace {

constexpr double kPi = 3.14159265358979323846;

double wrap01(double x) { return x - std::floor(x); }

// Wraps into [lo, lo + span).
double wrap_into(double x, double lo, double span) { return lo + wrap01((x - lo) / span) * span; }

[[noreturn]] void fail(const std::string& id, const std::string& msg) {
  throw std::invalid_argument("problem '" + id + "': " + msg);
}

struct Defaults {
  int k = 2;
  int n = 0, nx = 0, ny = 0;
  double t_final = 0.0;
  double cfl = 0.0;  // 0 = 1/(2k+1)
  bool smooth = false;
};

void resolve_common(ProblemSpec& s, const Defaults& d, const ProblemParams& p) {
  s.k = p.k > 0 ? p.k : d.k;
  if (s.k < 1 || s.k > kMaxBasisDegree) fail(s.id, "k must be in [1, " +
                                              std::to_string(kMaxBasisDegree) + "]");
  if (s.dim == 1) {
    s.n = p.n > 0 ? p.n : d.n;
    if (s.n < 2) fail(s.id, "n must be at least 2");
    if (p.nx > 0 || p.ny > 0) fail(s.id, "nx/ny apply to 2D problems only");
  } else {
    s.nx = p.nx > 0 ? p.nx : d.nx;
    s.ny = p.ny > 0 ? p.ny : d.ny;
    if (s.nx < 2 || s.ny < 2) fail(s.id, "nx and ny must be at least 2");
    if (p.n > 0) fail(s.id, "n applies to 1D problems only");
  }
  double beta_time = s.beta > 0 ? s.beta : 1.0;
  s.t_final = p.t_final >= 0.0 ? p.t_final : d.t_final / beta_time;
  s.cfl = p.cfl > 0.0 ? p.cfl : (d.cfl > 0.0 ? d.cfl : 1.0 / (2.0 * s.k + 1.0));
  if (!(s.cfl > 0.0)) fail(s.id, "cfl must be positive");
  s.rk = p.rk ? *p.rk : (d.smooth ? default_rk_for_degree(s.k) : RKKind::SspRk3);
  if (p.oe) s.oe = *p.oe;
  if (p.variant) s.variant = *p.variant;
}

void require_unused_lambda(const std::string& id, const ProblemParams& p) {
  if (p.lambda != 1.0) fail(id, "lambda scaling is not defined for this problem");
}
void require_unused_beta(const std::string& id, const ProblemParams& p) {
  if (p.beta != 1.0) fail(id, "beta scaling is not defined for this problem");
}
void require_unused_gamma(const std::string& id, const ProblemParams& p) {
  if (p.gamma != 0.0) fail(id, "gamma applies to Euler problems only");
}
void require_unused_units(const std::string& id, const ProblemParams& p) {
  if (!p.units.empty()) fail(id, "units apply to lwr-freeway only");
}

double resolve_gamma(const std::string& id, const ProblemParams& p, double dflt) {
  if (p.gamma == 0.0) return dflt;
  if (!(p.gamma > 1.0)) fail(id, "gamma must exceed 1");
  return p.gamma;
}

// u = u0(x - u t) with u0 = sin + 0.5, solved by safeguarded Newton. Valid
// before characteristics cross (t < 1).
double burgers_char_value(double x, double t) {
  if (t <= 0.0) return std::sin(x) + 0.5;
  double lo = -0.5 - 1e-12, hi = 1.5 + 1e-12;
  double u = std::sin(x) + 0.5;
  for (int it = 0; it < 200; ++it) {
    const double g = u - std::sin(x - u * t) - 0.5;
    if (g > 0.0)
      hi = u;
    else
      lo = u;
    const double dg = 1.0 + t * std::cos(x - u * t);
    double step = g / dg;
    double un = u - step;
    if (!(un > lo && un < hi)) un = 0.5 * (lo + hi);
    if (std::abs(un - u) <= 1e-15 * std::max(1.0, std::abs(un))) return un;
    u = un;
  }
  return u;
}

// ---- 1D scalar advection -------------------------------------------------

void add_advection_smooth(ProblemSpec& s, const ProblemParams& p) {
  require_unused_gamma(s.id, p);
  require_unused_units(s.id, p);
  if (!(p.beta > 0.0)) fail(s.id, "beta must be positive");
  if (!(p.lambda > 0.0)) fail(s.id, "lambda must be positive");
  s.dim = 1;
  s.lambda = p.lambda;
  s.beta = p.beta;
  s.model = advection_model_1d(s.beta);
  s.flux = FluxKind::Upwind;
  s.x_lo = 0.0;
  s.x_hi = 1.0;
  s.bcs1 = BCSet1D::all_periodic();
  resolve_common(s, {2, 128, 0, 0, 1.1, 0.0, true}, p);

  const double lam = s.lambda, beta = s.beta;
  s.ic1 = [lam](double x, double* u) {
    const double sn = std::sin(2.0 * kPi * x);
    u[0] = lam * sn * sn;
  };
  s.exact1 = [lam, beta](double x, double t, double* u) {
    const double sn = std::sin(2.0 * kPi * wrap01(x - beta * t));
    u[0] = lam * sn * sn;
  };
}

double u0_two_piece(double x) {
  const double y = wrap01(x);
  if (y >= 0.3 && y <= 0.8) return std::sin(2.0 * kPi * y);
  return std::cos(2.0 * kPi * y) - 0.5;
}

void add_advection_discontinuous(ProblemSpec& s, const ProblemParams& p) {
  require_unused_gamma(s.id, p);
  require_unused_units(s.id, p);
  if (!(p.beta > 0.0)) fail(s.id, "beta must be positive");
  if (!(p.lambda > 0.0)) fail(s.id, "lambda must be positive");
  s.dim = 1;
  s.lambda = p.lambda;
  s.beta = p.beta;
  s.model = advection_model_1d(s.beta);
  s.flux = FluxKind::Upwind;
  s.x_lo = 0.0;
  s.x_hi = 1.0;
  s.bcs1 = BCSet1D::all_periodic();
  resolve_common(s, {2, 256, 0, 0, 1.1, 0.0, false}, p);

  const double lam = s.lambda, beta = s.beta;
  s.ic1 = [lam](double x, double* u) { u[0] = lam * u0_two_piece(x); };
  s.exact1 = [lam, beta](double x, double t, double* u) {
    u[0] = lam * u0_two_piece(x - beta * t);
  };
}

// ---- 1D Burgers ------------------------------------------------------------

void add_burgers_smooth(ProblemSpec& s, const ProblemParams& p) {
  require_unused_gamma(s.id, p);
  require_unused_units(s.id, p);
  if (!(p.beta > 0.0)) fail(s.id, "beta must be positive");
  if (!(p.lambda > 0.0)) fail(s.id, "lambda must be positive");
  s.dim = 1;
  s.lambda = p.lambda;
  s.beta = p.beta;
  s.model = burgers_model_1d();
  s.model.flux_scale = s.beta;
  s.flux = FluxKind::LocalLaxFriedrichs;
  s.x_lo = 0.0;
  s.x_hi = 2.0 * kPi;
  s.bcs1 = BCSet1D::all_periodic();
  resolve_common(s, {2, 128, 0, 0, 0.6, 0.0, true}, p);

  const double lam = s.lambda, beta = s.beta;
  s.ic1 = [lam](double x, double* u) { u[0] = lam * (std::sin(x) + 0.5); };
  // Scaled/sped-up runs follow the base characteristics at time lambda*beta*t.
  if (lam * beta * s.t_final < 0.99) {
    s.exact1 = [lam, beta](double x, double t, double* u) {
      u[0] = lam * burgers_char_value(x, lam * beta * t);
    };
  }
}

// ---- 1D traffic flow -------------------------------------------------------

// Piecewise linear density (veh/km over km): free flow at 50 with a
// congestion trapezoid between km 10 and 15 peaking at the jam density 350.
double lwr_profile_km(double x) {
  if (x <= 10.0) return 50.0;
  if (x < 11.0) return 50.0 + 300.0 * (x - 10.0);
  if (x <= 14.0) return 350.0;
  if (x < 15.0) return 350.0 - 300.0 * (x - 14.0);
  return 50.0;
}

double lwr_entrance_signal(double t_hours) {
  if (t_hours < 10.0 / 60.0) return 0.0;
  if (t_hours < 30.0 / 60.0) return 75.0;
  return 50.0;
}

double lwr_exit_signal(double t_hours) {
  const double cycle = 3.0 / 60.0;
  double phase = t_hours - cycle * std::floor(t_hours / cycle);
  return phase < 2.0 / 60.0 ? 0.0 : 350.0;
}

void add_lwr_freeway(ProblemSpec& s, const ProblemParams& p) {
  require_unused_gamma(s.id, p);
  require_unused_lambda(s.id, p);
  require_unused_beta(s.id, p);
  std::string units = p.units.empty() ? "hours" : p.units;
  double time_scale = 1.0, space_scale = 1.0, dens_scale = 1.0;
  if (units == "hours") {
  } else if (units == "minutes") {
    time_scale = 60.0;
  } else if (units == "meters") {
    space_scale = 1000.0;
    dens_scale = 1000.0;
  } else {
    fail(s.id, "units must be hours, minutes, or meters");
  }

  s.dim = 1;
  s.model = lwr_model_1d(dens_scale, 1.0 / time_scale);
  s.flux = FluxKind::LocalLaxFriedrichs;
  s.x_lo = 0.0;
  s.x_hi = 20.0 * space_scale;
  Defaults d;
  d.k = 2;
  d.n = 800;
  d.t_final = 1.0 * time_scale;
  resolve_common(s, d, p);

  s.ic1 = [space_scale, dens_scale](double x, double* u) {
    u[0] = lwr_profile_km(x / space_scale) / dens_scale;
  };
  s.bcs1.left = BC1D::make_inflow([time_scale, dens_scale](double, double t, double* u) {
    u[0] = lwr_entrance_signal(t / time_scale) / dens_scale;
  });
  s.bcs1.right = BC1D::make_inflow([time_scale, dens_scale](double, double t, double* u) {
    u[0] = lwr_exit_signal(t / time_scale) / dens_scale;
  });
  s.reference = {80000, 0.45};
}

// ---- 1D Euler ----------------------------------------------------------------

void add_euler_smooth(ProblemSpec& s, const ProblemParams& p) {
  require_unused_units(s.id, p);
  require_unused_beta(s.id, p);
  if (!(p.lambda > 0.0)) fail(s.id, "lambda must be positive");
  s.dim = 1;
  s.lambda = p.lambda;
  s.model = euler_model_1d(resolve_gamma(s.id, p, 1.4));
  s.flux = FluxKind::LocalLaxFriedrichs;
  s.x_lo = 0.0;
  s.x_hi = 2.0 * kPi;
  s.bcs1 = BCSet1D::all_periodic();
  Defaults d;
  d.k = 2;
  d.n = 256;
  d.t_final = 1.1;
  d.smooth = true;
  resolve_common(s, d, p);
  if (p.cfl <= 0.0) s.cfl = 0.95 / (2.0 * s.k + 1.0);

  const Model model = s.model;
  const double lam = s.lambda;
  auto state = [model, lam](double x, double t, double* u) {
    const double sn = std::sin(x - t);
    const double prim[3] = {2.0 + 2.0 * sn * sn, 1.0, 2.0};
    euler_prim_to_cons(model, prim, u);
    for (int c = 0; c < 3; ++c) u[c] *= lam;
  };
  s.ic1 = [state](double x, double* u) { state(x, 0.0, u); };
  s.exact1 = state;
}

void add_lax(ProblemSpec& s, const ProblemParams& p) {
  require_unused_units(s.id, p);
  require_unused_beta(s.id, p);
  if (!(p.lambda > 0.0)) fail(s.id, "lambda must be positive");
  s.dim = 1;
  s.lambda = p.lambda;
  s.model = euler_model_1d(resolve_gamma(s.id, p, 1.4));
  s.flux = FluxKind::LocalLaxFriedrichs;
  s.x_lo = -5.0;
  s.x_hi = 5.0;
  s.bcs1 = BCSet1D::all_outflow();
  resolve_common(s, {2, 256, 0, 0, 1.3, 0.0, false}, p);

  const Model model = s.model;
  const double lam = s.lambda;
  s.ic1 = [model, lam](double x, double* u) {
    const double primL[3] = {0.445, 0.698, 3.528};
    const double primR[3] = {0.5, 0.0, 0.571};
    euler_prim_to_cons(model, x < 0.0 ? primL : primR, u);
    for (int c = 0; c < 3; ++c) u[c] *= lam;
  };
  s.reference = {20000, 0.45};
}

void add_blast_wave(ProblemSpec& s, const ProblemParams& p) {
  require_unused_units(s.id, p);
  require_unused_beta(s.id, p);
  require_unused_lambda(s.id, p);
  s.dim = 1;
  s.model = euler_model_1d(resolve_gamma(s.id, p, 1.4));
  s.flux = FluxKind::LocalLaxFriedrichs;
  s.x_lo = 0.0;
  s.x_hi = 1.0;
  s.bcs1 = BCSet1D::all_reflective();
  resolve_common(s, {2, 640, 0, 0, 0.038, 0.0, false}, p);

  const Model model = s.model;
  s.ic1 = [model](double x, double* u) {
    double prim[3] = {1.0, 0.0, 0.01};
    if (x < 0.1)
      prim[2] = 1000.0;
    else if (x > 0.9)
      prim[2] = 100.0;
    euler_prim_to_cons(model, prim, u);
  };
  s.reference = {20000, 0.45};
}

void add_shu_osher(ProblemSpec& s, const ProblemParams& p) {
  require_unused_units(s.id, p);
  require_unused_beta(s.id, p);
  if (!(p.lambda > 0.0)) fail(s.id, "lambda must be positive");
  s.dim = 1;
  s.lambda = p.lambda;
  s.model = euler_model_1d(resolve_gamma(s.id, p, 1.4));
  s.flux = FluxKind::LocalLaxFriedrichs;
  s.x_lo = -5.0;
  s.x_hi = 5.0;
  resolve_common(s, {3, 400, 0, 0, 1.8, 0.0, false}, p);

  const Model model = s.model;
  const double lam = s.lambda;
  auto left_state = [model, lam](double* u) {
    const double prim[3] = {3.857143, 2.629369, 10.33333};
    euler_prim_to_cons(model, prim, u);
    for (int c = 0; c < 3; ++c) u[c] *= lam;
  };
  s.ic1 = [model, lam, left_state](double x, double* u) {
    if (x < -4.0) {
      left_state(u);
      return;
    }
    const double prim[3] = {1.0 + 0.2 * std::sin(5.0 * x), 0.0, 1.0};
    euler_prim_to_cons(model, prim, u);
    for (int c = 0; c < 3; ++c) u[c] *= lam;
  };
  // The post-shock inflow is supersonic, so the full state is prescribed.
  s.bcs1.left = BC1D::make_inflow([left_state](double, double, double* u) { left_state(u); });
  s.bcs1.right = BC1D::outflow();
}

// ---- 2D advection ------------------------------------------------------------

void add_advection_smooth_2d(ProblemSpec& s, const ProblemParams& p) {
  require_unused_gamma(s.id, p);
  require_unused_units(s.id, p);
  require_unused_beta(s.id, p);
  if (!(p.lambda > 0.0)) fail(s.id, "lambda must be positive");
  s.dim = 2;
  s.lambda = p.lambda;
  s.model = advection_model_2d(1.0, 1.0);
  s.flux = FluxKind::Upwind;
  s.x_lo = -1.0;
  s.x_hi = 1.0;
  s.y_lo = -1.0;
  s.y_hi = 1.0;
  s.bcs2 = BCSet2D::all_periodic();
  Defaults d;
  d.k = 2;
  d.nx = 80;
  d.ny = 64;
  d.t_final = 1.1;
  d.smooth = true;
  resolve_common(s, d, p);

  const double lam = s.lambda;
  s.ic2 = [lam](double x, double y, double* u) {
    const double sn = std::sin(kPi * (x + y));
    u[0] = lam * sn * sn;
  };
  s.exact2 = [lam](double x, double y, double t, double* u) {
    const double sn = std::sin(kPi * (x + y - 2.0 * t));
    u[0] = lam * sn * sn;
  };
}

double pentagram_u0(double x, double y) {
  const double r = std::hypot(x, y);
  if (r < 1e-300) return 1.0;
  double c = std::clamp(x / r, -1.0, 1.0);
  double theta = y >= 0.0 ? std::acos(c) : 2.0 * kPi - std::acos(c);
  const double radius = (3.0 + std::pow(3.0, std::sin(5.0 * theta))) / 8.0;
  return r <= radius ? 1.0 : 0.0;
}

void add_pentagram(ProblemSpec& s, const ProblemParams& p) {
  require_unused_gamma(s.id, p);
  require_unused_units(s.id, p);
  require_unused_beta(s.id, p);
  require_unused_lambda(s.id, p);
  s.dim = 2;
  s.model = advection_model_2d(1.0, 1.0);
  s.flux = FluxKind::Upwind;
  s.x_lo = -1.0;
  s.x_hi = 1.0;
  s.y_lo = -1.0;
  s.y_hi = 1.0;
  s.bcs2 = BCSet2D::all_periodic();
  resolve_common(s, {2, 0, 320, 320, 1.8, 0.0, false}, p);

  s.ic2 = [](double x, double y, double* u) { u[0] = pentagram_u0(x, y); };
  s.exact2 = [](double x, double y, double t, double* u) {
    u[0] = pentagram_u0(wrap_into(x - t, -1.0, 2.0), wrap_into(y - t, -1.0, 2.0));
  };
}

// ---- 2D Burgers ----------------------------------------------------------------

void add_burgers_2d_riemann(ProblemSpec& s, const ProblemParams& p) {
  require_unused_gamma(s.id, p);
  require_unused_units(s.id, p);
  require_unused_beta(s.id, p);
  require_unused_lambda(s.id, p);
  s.dim = 2;
  s.model = burgers_model_2d();
  s.flux = FluxKind::LocalLaxFriedrichs;
  s.x_lo = 0.0;
  s.x_hi = 1.0;
  s.y_lo = 0.0;
  s.y_hi = 1.0;
  s.bcs2 = BCSet2D::all_outflow();
  resolve_common(s, {2, 0, 256, 256, 0.5, 0.0, false}, p);

  s.ic2 = [](double x, double y, double* u) {
    if (x < 0.5)
      u[0] = y < 0.5 ? 0.5 : -0.2;
    else
      u[0] = y < 0.5 ? 0.8 : -1.0;
  };
}

// ---- 2D Euler ----------------------------------------------------------------

void add_euler_smooth_2d(ProblemSpec& s, const ProblemParams& p) {
  require_unused_units(s.id, p);
  require_unused_beta(s.id, p);
  if (!(p.lambda > 0.0)) fail(s.id, "lambda must be positive");
  s.dim = 2;
  s.lambda = p.lambda;
  s.model = euler_model_2d(resolve_gamma(s.id, p, 1.4));
  s.flux = FluxKind::LocalLaxFriedrichs;
  s.x_lo = 0.0;
  s.x_hi = 2.0;
  s.y_lo = 0.0;
  s.y_hi = 2.0;
  s.bcs2 = BCSet2D::all_periodic();
  Defaults d;
  d.k = 2;
  d.nx = 80;
  d.ny = 80;
  d.t_final = 2.0;
  d.smooth = true;
  resolve_common(s, d, p);

  const Model model = s.model;
  const double lam = s.lambda;
  auto state = [model, lam](double x, double y, double t, double* u) {
    const double rho = 1.0 + 0.2 * std::sin(kPi * (x + y - t));
    const double prim[4] = {rho, 0.7, 0.3, 1.0};
    euler_prim_to_cons(model, prim, u);
    for (int c = 0; c < 4; ++c) u[c] *= lam;
  };
  s.ic2 = [state](double x, double y, double* u) { state(x, y, 0.0, u); };
  s.exact2 = state;
}

void add_shock_reflection(ProblemSpec& s, const ProblemParams& p) {
  require_unused_units(s.id, p);
  require_unused_beta(s.id, p);
  require_unused_lambda(s.id, p);
  s.dim = 2;
  s.model = euler_model_2d(resolve_gamma(s.id, p, 1.4));
  s.flux = FluxKind::LocalLaxFriedrichs;
  s.x_lo = 0.0;
  s.x_hi = 4.0;
  s.y_lo = 0.0;
  s.y_hi = 1.0;
  resolve_common(s, {2, 0, 200, 50, 20.0, 0.0, false}, p);

  const Model model = s.model;
  double inflow_left[4], inflow_top[4];
  {
    const double prim_left[4] = {1.0, 2.9, 0.0, 5.0 / 7.0};
    const double prim_top[4] = {1.69997, 2.61934, -0.50632, 1.52819};
    euler_prim_to_cons(model, prim_left, inflow_left);
    euler_prim_to_cons(model, prim_top, inflow_top);
  }
  std::vector<double> left_state(inflow_left, inflow_left + 4);
  std::vector<double> top_state(inflow_top, inflow_top + 4);

  s.ic2 = [left_state](double, double, double* u) {
    for (int c = 0; c < 4; ++c) u[c] = left_state[c];
  };
  s.bcs2.side[kLeft] = BC2D::make_inflow([left_state](double, double, double, double* u) {
    for (int c = 0; c < 4; ++c) u[c] = left_state[c];
  });
  s.bcs2.side[kTop] = BC2D::make_inflow([top_state](double, double, double, double* u) {
    for (int c = 0; c < 4; ++c) u[c] = top_state[c];
  });
  s.bcs2.side[kBottom] = BC2D::reflective();
  s.bcs2.side[kRight] = BC2D::outflow();
}

void add_two_plates(ProblemSpec& s, const ProblemParams& p) {
  require_unused_units(s.id, p);
  require_unused_beta(s.id, p);
  require_unused_lambda(s.id, p);
  s.dim = 2;
  s.model = euler_model_2d(resolve_gamma(s.id, p, 1.4));
  s.flux = FluxKind::LocalLaxFriedrichs;
  s.x_lo = 0.0;
  s.x_hi = 10.0;
  s.y_lo = -5.0;
  s.y_hi = 5.0;
  resolve_common(s, {2, 0, 200, 200, 100.0, 0.0, false}, p);
  // Plates at y = +-2 over x in (2, 3) must lie on mesh lines.
  if (s.nx % 10 != 0 || s.ny % 10 != 0)
    fail(s.id, "nx and ny must be multiples of 10 so the plates lie on mesh lines");

  const Model model = s.model;
  const double mach = 3.0;
  double free_stream[4];
  {
    const double prim[4] = {1.0, std::cos(kPi / 12.0), std::sin(kPi / 12.0),
                            1.0 / (model.gamma * mach * mach)};
    euler_prim_to_cons(model, prim, free_stream);
  }
  std::vector<double> state(free_stream, free_stream + 4);

  s.ic2 = [state](double, double, double* u) {
    for (int c = 0; c < 4; ++c) u[c] = state[c];
  };
  auto inflow = BC2D::make_inflow([state](double, double, double, double* u) {
    for (int c = 0; c < 4; ++c) u[c] = state[c];
  });
  s.bcs2.side[kLeft] = inflow;
  s.bcs2.side[kBottom] = inflow;
  s.bcs2.side[kTop] = BC2D::outflow();
  s.bcs2.side[kRight] = BC2D::outflow();
  s.bcs2.walls.push_back({1, -2.0, 2.0, 3.0});
  s.bcs2.walls.push_back({1, 2.0, 2.0, 3.0});
}

void add_euler_2d_riemann(ProblemSpec& s, const ProblemParams& p, int which) {
  require_unused_units(s.id, p);
  require_unused_beta(s.id, p);
  if (!(p.lambda > 0.0)) fail(s.id, "lambda must be positive");
  s.dim = 2;
  s.lambda = p.lambda;
  s.model = euler_model_2d(resolve_gamma(s.id, p, 1.4));
  s.flux = FluxKind::LocalLaxFriedrichs;
  s.x_lo = 0.0;
  s.x_hi = 1.0;
  s.y_lo = 0.0;
  s.y_hi = 1.0;
  s.bcs2 = BCSet2D::all_outflow();
  resolve_common(s, {2, 0, 320, 320, which == 1 ? 0.25 : 0.35, 0.0, false}, p);

  // Quadrant primitives (rho, vx, vy, p): ll, ul, lr, ur.
  // First problem: two stationary contacts and two shocks.
  static const double kStates1[4][4] = {{0.8, 0.0, 0.0, 1.0},
                                        {1.0, 0.7276, 0.0, 1.0},
                                        {1.0, 0.0, 0.7276, 1.0},
                                        {0.5313, 0.0, 0.0, 0.4}};
  static const double kStates2[4][4] = {{0.138, 1.206, 1.206, 0.029},
                                        {0.5323, 1.206, 0.0, 0.3},
                                        {0.5323, 0.0, 1.206, 0.3},
                                        {1.5, 0.0, 0.0, 1.5}};
  const auto& prim = which == 1 ? kStates1 : kStates2;
  const Model model = s.model;
  const double lam = s.lambda;
  std::vector<double> cons(16);
  for (int q = 0; q < 4; ++q) {
    euler_prim_to_cons(model, prim[q], cons.data() + 4 * q);
    for (int c = 0; c < 4; ++c) cons[4 * q + c] *= lam;
  }
  s.ic2 = [cons](double x, double y, double* u) {
    const int q = (x < 0.5 ? 0 : 2) + (y < 0.5 ? 0 : 1);
    for (int c = 0; c < 4; ++c) u[c] = cons[4 * q + c];
  };
}

void add_shock_vortex(ProblemSpec& s, const ProblemParams& p) {
  require_unused_units(s.id, p);
  require_unused_beta(s.id, p);
  require_unused_lambda(s.id, p);
  s.dim = 2;
  s.model = euler_model_2d(resolve_gamma(s.id, p, 1.4));
  s.flux = FluxKind::LocalLaxFriedrichs;
  s.x_lo = 0.0;
  s.x_hi = 2.0;
  s.y_lo = 0.0;
  s.y_hi = 1.0;
  resolve_common(s, {2, 0, 400, 200, 0.8, 0.0, false}, p);

  const Model model = s.model;
  const double gamma = model.gamma;
  const double mach = 1.1;
  // Upstream mean state and its normal-shock image.
  const double rho_l = 1.0, p_l = 1.0;
  const double v_l = mach * std::sqrt(gamma);
  const double m2 = mach * mach;
  const double rho_r = rho_l * ((gamma + 1.0) * m2) / ((gamma - 1.0) * m2 + 2.0);
  const double p_r = p_l * (1.0 + 2.0 * gamma / (gamma + 1.0) * (m2 - 1.0));
  const double v_r = v_l * rho_l / rho_r;

  const double eps = 0.3, alpha = 0.204, rc = 0.05;
  const double xc = 0.25, yc = 0.5;

  s.ic2 = [model, gamma, rho_l, p_l, v_l, rho_r, p_r, v_r, eps, alpha, rc, xc,
           yc](double x, double y, double* u) {
    if (x >= 0.5) {
      const double prim[4] = {rho_r, v_r, 0.0, p_r};
      euler_prim_to_cons(model, prim, u);
      return;
    }
    // Isentropic vortex: velocity and temperature perturbations at constant
    // entropy, superimposed on the upstream mean flow.
    const double xb = x - xc, yb = y - yc;
    const double eta2 = (xb * xb + yb * yb) / (rc * rc);
    const double phi = eps / rc * std::exp(alpha * (1.0 - eta2));
    const double dT = -(gamma - 1.0) * eps * eps / (4.0 * alpha * gamma) *
                      std::exp(2.0 * alpha * (1.0 - eta2));
    const double T0 = p_l / rho_l;
    const double S0 = p_l / std::pow(rho_l, gamma);
    const double T = T0 + dT;
    const double rho = std::pow(T / S0, 1.0 / (gamma - 1.0));
    const double prim[4] = {rho, v_l + phi * yb, -phi * xb, rho * T};
    euler_prim_to_cons(model, prim, u);
  };
  double left_cons[4];
  {
    const double prim[4] = {rho_l, v_l, 0.0, p_l};
    euler_prim_to_cons(model, prim, left_cons);
  }
  std::vector<double> left_state(left_cons, left_cons + 4);
  s.bcs2.side[kLeft] = BC2D::make_inflow([left_state](double, double, double, double* u) {
    for (int c = 0; c < 4; ++c) u[c] = left_state[c];
  });
  s.bcs2.side[kRight] = BC2D::outflow();
  s.bcs2.side[kBottom] = BC2D::reflective();
  s.bcs2.side[kTop] = BC2D::reflective();
}

void add_double_mach(ProblemSpec& s, const ProblemParams& p) {
  require_unused_units(s.id, p);
  require_unused_beta(s.id, p);
  require_unused_lambda(s.id, p);
  s.dim = 2;
  s.model = euler_model_2d(resolve_gamma(s.id, p, 1.4));
  s.flux = FluxKind::LocalLaxFriedrichs;
  s.x_lo = 0.0;
  s.x_hi = 4.0;
  s.y_lo = 0.0;
  s.y_hi = 1.0;
  resolve_common(s, {3, 0, 960, 240, 0.2, 0.0, false}, p);

  const Model model = s.model;
  double post[4], pre[4];
  {
    const double prim_post[4] = {8.0, 8.25 * std::cos(kPi / 6.0), -8.25 * std::sin(kPi / 6.0),
                                 116.5};
    const double prim_pre[4] = {1.4, 0.0, 0.0, 1.0};
    euler_prim_to_cons(model, prim_post, post);
    euler_prim_to_cons(model, prim_pre, pre);
  }
  std::vector<double> post_state(post, post + 4), pre_state(pre, pre + 4);
  const double inv_sqrt3 = 1.0 / std::sqrt(3.0);

  s.ic2 = [post_state, pre_state, inv_sqrt3](double x, double y, double* u) {
    const auto& st = x < 1.0 / 6.0 + y * inv_sqrt3 ? post_state : pre_state;
    for (int c = 0; c < 4; ++c) u[c] = st[c];
  };
  s.bcs2.side[kLeft] = BC2D::make_inflow([post_state](double, double, double, double* u) {
    for (int c = 0; c < 4; ++c) u[c] = post_state[c];
  });
  s.bcs2.side[kRight] = BC2D::outflow();
  // Bottom: post-shock state ahead of the ramp start, slip wall after it.
  s.bcs2.side[kBottom] = BC2D::custom([post_state](double x, double, double, const double* in,
                                                   double, double, double* ghost) {
    if (x < 1.0 / 6.0) {
      for (int c = 0; c < 4; ++c) ghost[c] = post_state[c];
      return;
    }
    ghost[0] = in[0];
    ghost[1] = in[1];
    ghost[2] = -in[2];
    ghost[3] = in[3];
  });
  // Top: the exact shock position separates post- and pre-shock states.
  s.bcs2.side[kTop] = BC2D::custom([post_state, pre_state, inv_sqrt3](
                                       double x, double, double t, const double*, double, double,
                                       double* ghost) {
    const auto& st = x < 1.0 / 6.0 + (1.0 + 20.0 * t) * inv_sqrt3 ? post_state : pre_state;
    for (int c = 0; c < 4; ++c) ghost[c] = st[c];
  });
}

void add_mach_2000_jet(ProblemSpec& s, const ProblemParams& p) {
  require_unused_units(s.id, p);
  require_unused_beta(s.id, p);
  require_unused_lambda(s.id, p);
  s.dim = 2;
  s.model = euler_model_2d(resolve_gamma(s.id, p, 5.0 / 3.0));
  s.flux = FluxKind::LocalLaxFriedrichs;
  s.x_lo = 0.0;
  s.x_hi = 1.0;
  s.y_lo = -0.25;
  s.y_hi = 0.25;
  resolve_common(s, {2, 0, 320, 160, 0.001, 0.0, false}, p);

  const Model model = s.model;
  double ambient[4], jet[4];
  {
    const double prim_ambient[4] = {0.5, 0.0, 0.0, 0.4127};
    const double prim_jet[4] = {5.0, 800.0, 0.0, 0.4127};
    euler_prim_to_cons(model, prim_ambient, ambient);
    euler_prim_to_cons(model, prim_jet, jet);
  }
  std::vector<double> ambient_state(ambient, ambient + 4), jet_state(jet, jet + 4);

  s.ic2 = [ambient_state](double, double, double* u) {
    for (int c = 0; c < 4; ++c) u[c] = ambient_state[c];
  };
  s.bcs2.side[kLeft] = BC2D::custom([jet_state](double, double y, double, const double* in,
                                                double, double, double* ghost) {
    if (std::abs(y) <= 0.05) {
      for (int c = 0; c < 4; ++c) ghost[c] = jet_state[c];
    } else {
      for (int c = 0; c < 4; ++c) ghost[c] = in[c];
    }
  });
  s.bcs2.side[kRight] = BC2D::outflow();
  s.bcs2.side[kBottom] = BC2D::outflow();
  s.bcs2.side[kTop] = BC2D::outflow();
}

struct RegistryEntry {
  ProblemInfo info;
  void (*build)(ProblemSpec&, const ProblemParams&);
};

void build_advection_scale(ProblemSpec& s, const ProblemParams& p) {
  add_advection_discontinuous(s, p);
}
void build_euler_riemann_1(ProblemSpec& s, const ProblemParams& p) {
  add_euler_2d_riemann(s, p, 1);
}
void build_euler_riemann_2(ProblemSpec& s, const ProblemParams& p) {
  add_euler_2d_riemann(s, p, 2);
}

const std::vector<RegistryEntry>& registry() {
  static const std::vector<RegistryEntry> entries = {
      {{"advection-smooth", 1, "linear advection of sin^2(2 pi x), periodic"},
       add_advection_smooth},
      {{"advection-discontinuous", 1, "linear advection of a two-piece profile, periodic"},
       add_advection_discontinuous},
      {{"advection-scale", 1, "scaled-data variant of advection-discontinuous (set lambda/beta)"},
       build_advection_scale},
      {{"burgers-smooth", 1, "Burgers with sin(x)+0.5 data before shock formation"},
       add_burgers_smooth},
      {{"lwr-freeway", 1, "traffic flow on a 20 km freeway with signals (units=hours|minutes|meters)"},
       add_lwr_freeway},
      {{"euler-smooth", 1, "Euler density wave 2+2 sin^2(x-t)"}, add_euler_smooth},
      {{"lax", 1, "Lax shock tube (optionally lambda-scaled)"}, add_lax},
      {{"blast-wave", 1, "interacting blast waves with reflective walls"}, add_blast_wave},
      {{"shu-osher", 1, "shock / sine-wave interaction (optionally lambda-scaled)"},
       add_shu_osher},
      {{"advection-smooth-2d", 2, "2D advection of sin^2(pi(x+y)), periodic"},
       add_advection_smooth_2d},
      {{"pentagram", 2, "2D advection of a pentagram-shaped indicator"}, add_pentagram},
      {{"burgers-2d-riemann", 2, "2D Burgers quadrant Riemann problem"}, add_burgers_2d_riemann},
      {{"euler-smooth-2d", 2, "2D Euler density wave 1+0.2 sin(pi(x+y-t))"}, add_euler_smooth_2d},
      {{"shock-reflection", 2, "steady regular shock reflection off a wall"},
       add_shock_reflection},
      {{"two-plates", 2, "Mach 3 flow past two plates at 15 degree incidence"}, add_two_plates},
      {{"euler-2d-riemann-1", 2, "2D Euler Riemann problem: contacts and shocks"},
       build_euler_riemann_1},
      {{"euler-2d-riemann-2", 2, "2D Euler Riemann problem: four shocks"}, build_euler_riemann_2},
      {{"shock-vortex", 2, "Mach 1.1 shock / isentropic vortex interaction"}, add_shock_vortex},
      {{"double-mach", 2, "double Mach reflection of a Mach 10 shock"}, add_double_mach},
      {{"mach-2000-jet", 2, "Mach 2000 jet into quiescent gas, gamma = 5/3"}, add_mach_2000_jet},
  };
  return entries;
}

}  // namespace

RKKind default_rk_for_degree(int k) {
  if (k <= 1) return RKKind::SspRk2;
  if (k == 2) return RKKind::SspRk3;
  return RKKind::Rk4Classic;
}

SpaceFn1D ProblemSpec::exact_at_1d(double t) const {
  if (!exact1) return nullptr;
  auto fn = exact1;
  return [fn, t](double x, double* state) { fn(x, t, state); };
}

SpaceFn2D ProblemSpec::exact_at_2d(double t) const {
  if (!exact2) return nullptr;
  auto fn = exact2;
  return [fn, t](double x, double y, double* state) { fn(x, y, t, state); };
}

const std::vector<ProblemInfo>& problem_registry() {
  static const std::vector<ProblemInfo> infos = [] {
    std::vector<ProblemInfo> v;
    for (const auto& e : registry()) v.push_back(e.info);
    return v;
  }();
  return infos;
}

bool problem_exists(const std::string& id) {
  for (const auto& e : registry())
    if (e.info.id == id) return true;
  return false;
}

ProblemSpec make_problem(const std::string& id, const ProblemParams& params) {
  for (const auto& e : registry()) {
    if (e.info.id != id) continue;
    ProblemSpec s;
    s.id = id;
    s.summary = e.info.summary;
    e.build(s, params);
    if (!(s.t_final >= 0.0)) fail(id, "t_final must be nonnegative");
    return s;
  }
  throw std::invalid_argument("unknown problem '" + id + "' (see list-problems)");
}

}  // namespace oedg
