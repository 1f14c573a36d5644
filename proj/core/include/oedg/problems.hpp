#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "oedg/boundary.hpp"
#include "oedg/models.hpp"
#include "oedg/oe_filter.hpp"
#include "oedg/projections.hpp"
#include "oedg/time_integration.hpp"

namespace oedg {

/// User-adjustable knobs for a registered problem. Unset fields (zero /
/// negative / empty as documented per field) keep the problem's defaults.
struct ProblemParams {
  int k = 0;              // polynomial degree; 0 = default
  int n = 0;              // 1D cell count; 0 = default
  int nx = 0, ny = 0;     // 2D cell counts; 0 = default
  double t_final = -1.0;  // < 0 = default
  double cfl = 0.0;       // CFL number; 0 = default
  std::optional<RKKind> rk;
  std::optional<bool> oe;
  std::optional<DampingVariant> variant;
  double lambda = 1.0;  // initial-state scaling u0 -> lambda * u0
  double beta = 1.0;    // wave-speed scaling (advection problems)
  double gamma = 0.0;   // Euler heat-capacity ratio; 0 = problem default
  std::string units;    // lwr-freeway: "hours" (default) | "minutes" | "meters"
};

/// Recipe for the built-in finite-volume fallback reference (1D problems
/// without a closed-form solution). n_cells == 0 means none is defined.
struct ReferenceRecipe {
  int n_cells = 0;
  double cfl = 0.45;
};

/// A fully-bound, runnable problem: model, domain, discretization defaults,
/// initial/boundary data, and (when available) the exact solution.
struct ProblemSpec {
  std::string id;
  std::string summary;
  int dim = 1;
  Model model;
  FluxKind flux = FluxKind::LocalLaxFriedrichs;
  double x_lo = 0.0, x_hi = 1.0, y_lo = 0.0, y_hi = 1.0;
  int k = 2;
  int n = 0;            // 1D
  int nx = 0, ny = 0;   // 2D
  double t_final = 0.0;
  double cfl = 0.0;     // CFL number actually used by the step rule
  RKKind rk = RKKind::SspRk3;
  bool oe = true;
  DampingVariant variant = DampingVariant::ScaleInvariant;
  double lambda = 1.0, beta = 1.0;
  int error_component = 0;  // component measured by error/oscillation reports
  BCSet1D bcs1;
  BCSet2D bcs2;
  SpaceFn1D ic1;
  SpaceFn2D ic2;
  std::function<void(double x, double t, double* state)> exact1;
  std::function<void(double x, double y, double t, double* state)> exact2;
  ReferenceRecipe reference;

  bool has_exact() const {
    return dim == 1 ? static_cast<bool>(exact1) : static_cast<bool>(exact2);
  }
  /// Exact solution with the final time bound, for error reports.
  SpaceFn1D exact_at_1d(double t) const;
  SpaceFn2D exact_at_2d(double t) const;
};

struct ProblemInfo {
  std::string id;
  int dim = 1;
  std::string summary;
};

/// All registered problems, in registration order.
const std::vector<ProblemInfo>& problem_registry();
bool problem_exists(const std::string& id);

/// Builds a fully-bound problem. Throws std::invalid_argument for unknown
/// ids or inconsistent parameters (with a message naming the offender).
ProblemSpec make_problem(const std::string& id, const ProblemParams& params = {});

/// (k+1)th-order scheme for smooth runs, capped at the classic fourth-order
/// scheme; discontinuous problems default to the third-order SSP scheme.
RKKind default_rk_for_degree(int k);

}  // namespace oedg
