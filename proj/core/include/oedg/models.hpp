#pragma once

#include <stdexcept>
#include <string>

namespace oedg {

enum class ModelKind {
  Advection1D,
  Burgers1D,
  Lwr1D,
  Euler1D,
  Advection2D,
  Burgers2D,
  Euler2D,
};

enum class FluxKind { Upwind, LocalLaxFriedrichs };

/// Thrown when an Euler state with nonpositive density or pressure (or NaN)
/// is encountered while admissibility checking is enabled.
struct AdmissibilityError : std::runtime_error {
  AdmissibilityError(double rho, double p)
      : std::runtime_error("inadmissible state: rho = " + std::to_string(rho) +
                           ", p = " + std::to_string(p)),
        rho(rho),
        p(p) {}
  double rho, p;
};

/// Conservation law u_t + div f(u) = 0. The same struct describes every
/// supported law; `kind` selects the flux family and the remaining fields
/// parameterize it.
struct Model {
  ModelKind kind = ModelKind::Advection1D;
  int n_comp = 1;
  int dim = 1;
  double gamma = 1.4;           // Euler ratio of specific heats
  double advection_x = 1.0;     // advection velocity components
  double advection_y = 0.0;
  double flux_scale = 1.0;      // multiplies the flux (time-unit changes, f -> lambda f)
  double lwr_density_scale = 1.0;  // argument scale for the traffic flux (density-unit changes)
  bool check_admissibility = true;

  bool is_euler() const { return kind == ModelKind::Euler1D || kind == ModelKind::Euler2D; }
};

Model advection_model_1d(double speed);
Model burgers_model_1d();
Model lwr_model_1d(double density_scale = 1.0, double flux_scale = 1.0);
Model euler_model_1d(double gamma = 1.4);
Model advection_model_2d(double speed_x, double speed_y);
Model burgers_model_2d();
Model euler_model_2d(double gamma = 1.4);

/// Physical flux. For dim == 1 pass fy == nullptr; for dim == 2 both
/// components are filled. Output arrays hold n_comp values.
void physical_flux(const Model& m, const double* u, double* fx, double* fy);

/// Largest characteristic speed (in absolute value) in the +x / +y direction
/// at state u. At LWR branch breakpoints the max of the one-sided slopes is
/// returned. Euler states are admissibility-checked if enabled.
double max_wave_speed_x(const Model& m, const double* u);
double max_wave_speed_y(const Model& m, const double* u);

/// Riemann flux through a face with unit normal n = (nx, ny) (axis-aligned:
/// one of nx, ny is ±1, the other 0), uL on the side the normal points away
/// from. Writes n_comp values; `out` receives f_hat · n.
void numerical_flux(const Model& m, FluxKind flux, const double* uL, const double* uR, double nx,
                    double ny, double* out);

/// Euler primitive (rho, v..., p) <-> conservative (rho, m..., E).
/// E = p / (gamma - 1) + 0.5 rho |v|^2. Arrays hold n_comp values.
void euler_prim_to_cons(const Model& m, const double* prim, double* cons);
void euler_cons_to_prim(const Model& m, const double* cons, double* prim);

/// Pressure of a conservative Euler state; throws AdmissibilityError when
/// checking is enabled and the state is inadmissible.
double euler_pressure(const Model& m, const double* u);

}  // namespace oedg
