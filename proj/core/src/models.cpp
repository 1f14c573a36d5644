#include "oedg/models.hpp"

#include <algorithm>
#include <cmath>

namespace oedg {

namespace {

// Piecewise quadratic traffic flux (density in veh/km, flux in veh/h).
// Branches join continuously at 50 and 100; f(350) = 0 (jam density).
double lwr_flux_base(double u) {
  if (u <= 50.0) return -0.4 * u * u + 100.0 * u;
  if (u <= 100.0) return -0.1 * u * u + 15.0 * u + 3500.0;
  return -0.024 * u * u - 5.2 * u + 4760.0;
}

// Max one-sided |f'| over the branches containing u.
double lwr_speed_base(double u) {
  double s = 0.0;
  if (u <= 50.0) s = std::max(s, std::abs(-0.8 * u + 100.0));
  if (u >= 50.0 && u <= 100.0) s = std::max(s, std::abs(-0.2 * u + 15.0));
  if (u >= 100.0) s = std::max(s, std::abs(-0.048 * u - 5.2));
  return s;
}

void check_euler(const Model& m, double rho, double p) {
  if (m.check_admissibility && !(rho > 0.0 && p > 0.0)) throw AdmissibilityError(rho, p);
}

double euler_pressure_1d(const Model& m, const double* u) {
  double p = (m.gamma - 1.0) * (u[2] - 0.5 * u[1] * u[1] / u[0]);
  check_euler(m, u[0], p);
  return p;
}

double euler_pressure_2d(const Model& m, const double* u) {
  double p = (m.gamma - 1.0) * (u[3] - 0.5 * (u[1] * u[1] + u[2] * u[2]) / u[0]);
  check_euler(m, u[0], p);
  return p;
}

[[noreturn]] void bad_kind() { throw std::logic_error("model: unsupported kind"); }

}  // namespace

Model advection_model_1d(double speed) {
  Model m;
  m.kind = ModelKind::Advection1D;
  m.n_comp = 1;
  m.dim = 1;
  m.advection_x = speed;
  return m;
}

Model burgers_model_1d() {
  Model m;
  m.kind = ModelKind::Burgers1D;
  m.n_comp = 1;
  m.dim = 1;
  return m;
}

Model lwr_model_1d(double density_scale, double flux_scale) {
  Model m;
  m.kind = ModelKind::Lwr1D;
  m.n_comp = 1;
  m.dim = 1;
  m.lwr_density_scale = density_scale;
  m.flux_scale = flux_scale;
  return m;
}

Model euler_model_1d(double gamma) {
  Model m;
  m.kind = ModelKind::Euler1D;
  m.n_comp = 3;
  m.dim = 1;
  m.gamma = gamma;
  return m;
}

Model advection_model_2d(double speed_x, double speed_y) {
  Model m;
  m.kind = ModelKind::Advection2D;
  m.n_comp = 1;
  m.dim = 2;
  m.advection_x = speed_x;
  m.advection_y = speed_y;
  return m;
}

Model burgers_model_2d() {
  Model m;
  m.kind = ModelKind::Burgers2D;
  m.n_comp = 1;
  m.dim = 2;
  return m;
}

Model euler_model_2d(double gamma) {
  Model m;
  m.kind = ModelKind::Euler2D;
  m.n_comp = 4;
  m.dim = 2;
  m.gamma = gamma;
  return m;
}

void physical_flux(const Model& m, const double* u, double* fx, double* fy) {
  double s = m.flux_scale;
  switch (m.kind) {
    case ModelKind::Advection1D:
      fx[0] = s * m.advection_x * u[0];
      return;
    case ModelKind::Burgers1D:
      fx[0] = s * 0.5 * u[0] * u[0];
      return;
    case ModelKind::Lwr1D:
      fx[0] = s * lwr_flux_base(m.lwr_density_scale * u[0]);
      return;
    case ModelKind::Euler1D: {
      double p = euler_pressure_1d(m, u);
      double v = u[1] / u[0];
      fx[0] = s * u[1];
      fx[1] = s * (u[1] * v + p);
      fx[2] = s * (u[2] + p) * v;
      return;
    }
    case ModelKind::Advection2D:
      fx[0] = s * m.advection_x * u[0];
      fy[0] = s * m.advection_y * u[0];
      return;
    case ModelKind::Burgers2D:
      fx[0] = s * 0.5 * u[0] * u[0];
      fy[0] = fx[0];
      return;
    case ModelKind::Euler2D: {
      double p = euler_pressure_2d(m, u);
      double vx = u[1] / u[0], vy = u[2] / u[0];
      fx[0] = s * u[1];
      fx[1] = s * (u[1] * vx + p);
      fx[2] = s * (u[1] * vy);
      fx[3] = s * (u[3] + p) * vx;
      fy[0] = s * u[2];
      fy[1] = s * (u[2] * vx);
      fy[2] = s * (u[2] * vy + p);
      fy[3] = s * (u[3] + p) * vy;
      return;
    }
  }
  bad_kind();
}

double max_wave_speed_x(const Model& m, const double* u) {
  double s = std::abs(m.flux_scale);
  switch (m.kind) {
    case ModelKind::Advection1D:
    case ModelKind::Advection2D:
      return s * std::abs(m.advection_x);
    case ModelKind::Burgers1D:
    case ModelKind::Burgers2D:
      return s * std::abs(u[0]);
    case ModelKind::Lwr1D:
      return s * m.lwr_density_scale * lwr_speed_base(m.lwr_density_scale * u[0]);
    case ModelKind::Euler1D: {
      double p = euler_pressure_1d(m, u);
      return s * (std::abs(u[1] / u[0]) + std::sqrt(m.gamma * p / u[0]));
    }
    case ModelKind::Euler2D: {
      double p = euler_pressure_2d(m, u);
      return s * (std::abs(u[1] / u[0]) + std::sqrt(m.gamma * p / u[0]));
    }
  }
  bad_kind();
}

double max_wave_speed_y(const Model& m, const double* u) {
  double s = std::abs(m.flux_scale);
  switch (m.kind) {
    case ModelKind::Advection2D:
      return s * std::abs(m.advection_y);
    case ModelKind::Burgers2D:
      return s * std::abs(u[0]);
    case ModelKind::Euler2D: {
      double p = euler_pressure_2d(m, u);
      return s * (std::abs(u[2] / u[0]) + std::sqrt(m.gamma * p / u[0]));
    }
    default:
      throw std::logic_error("max_wave_speed_y: 1D model");
  }
}

void numerical_flux(const Model& m, FluxKind flux, const double* uL, const double* uR, double nx,
                    double ny, double* out) {
  int nc = m.n_comp;
  double fxL[4], fyL[4], fxR[4], fyR[4];
  switch (flux) {
    case FluxKind::Upwind: {
      if (m.kind != ModelKind::Advection1D && m.kind != ModelKind::Advection2D) {
        throw std::invalid_argument("numerical_flux: upwind flux requires an advection model");
      }
      double vn = m.flux_scale * (m.advection_x * nx + m.advection_y * ny);
      const double* up = vn >= 0.0 ? uL : uR;
      physical_flux(m, up, fxL, fyL);
      for (int c = 0; c < nc; ++c) out[c] = fxL[c] * nx + (m.dim == 2 ? fyL[c] * ny : 0.0);
      return;
    }
    case FluxKind::LocalLaxFriedrichs: {
      physical_flux(m, uL, fxL, fyL);
      physical_flux(m, uR, fxR, fyR);
      double aL, aR;
      if (ny == 0.0) {
        aL = max_wave_speed_x(m, uL);
        aR = max_wave_speed_x(m, uR);
      } else {
        aL = max_wave_speed_y(m, uL);
        aR = max_wave_speed_y(m, uR);
      }
      double alpha = std::max(aL, aR);
      for (int c = 0; c < nc; ++c) {
        double fn_L = fxL[c] * nx + (m.dim == 2 ? fyL[c] * ny : 0.0);
        double fn_R = fxR[c] * nx + (m.dim == 2 ? fyR[c] * ny : 0.0);
        out[c] = 0.5 * (fn_L + fn_R) - 0.5 * alpha * (uR[c] - uL[c]);
      }
      return;
    }
  }
  bad_kind();
}

void euler_prim_to_cons(const Model& m, const double* prim, double* cons) {
  if (m.kind == ModelKind::Euler1D) {
    double rho = prim[0], v = prim[1], p = prim[2];
    cons[0] = rho;
    cons[1] = rho * v;
    cons[2] = p / (m.gamma - 1.0) + 0.5 * rho * v * v;
    return;
  }
  if (m.kind == ModelKind::Euler2D) {
    double rho = prim[0], vx = prim[1], vy = prim[2], p = prim[3];
    cons[0] = rho;
    cons[1] = rho * vx;
    cons[2] = rho * vy;
    cons[3] = p / (m.gamma - 1.0) + 0.5 * rho * (vx * vx + vy * vy);
    return;
  }
  throw std::invalid_argument("euler_prim_to_cons: not an Euler model");
}

void euler_cons_to_prim(const Model& m, const double* cons, double* prim) {
  if (m.kind == ModelKind::Euler1D) {
    prim[0] = cons[0];
    prim[1] = cons[1] / cons[0];
    prim[2] = euler_pressure_1d(m, cons);
    return;
  }
  if (m.kind == ModelKind::Euler2D) {
    prim[0] = cons[0];
    prim[1] = cons[1] / cons[0];
    prim[2] = cons[2] / cons[0];
    prim[3] = euler_pressure_2d(m, cons);
    return;
  }
  throw std::invalid_argument("euler_cons_to_prim: not an Euler model");
}

double euler_pressure(const Model& m, const double* u) {
  if (m.kind == ModelKind::Euler1D) return euler_pressure_1d(m, u);
  if (m.kind == ModelKind::Euler2D) return euler_pressure_2d(m, u);
  throw std::invalid_argument("euler_pressure: not an Euler model");
}

}  // namespace oedg
