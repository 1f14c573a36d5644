#pragma once

#include <string>
#include <vector>

#include "oedg/run.hpp"

namespace oedg {

struct InvarianceRow {
  std::string label;
  double max_rel_deviation = 0.0;
  long long steps = 0;
};

struct InvarianceStudy {
  std::string problem;
  std::string kind;  // "scale" | "evolution" | "units"
  std::vector<InvarianceRow> rows;

  double worst() const;
};

/// Scaled-data runs u0 -> lambda*u0 replaying the base run's step sequence
/// (rescaled in time for quadratically homogeneous fluxes); reports the max
/// cell-average discrepancy of u^lambda / lambda against the base run,
/// relative to the base solution's magnitude.
InvarianceStudy scale_invariance_study(const std::string& id, const ProblemParams& base,
                                       const std::vector<double>& lambdas);

/// Flux-scaled runs f -> beta*f over time t/beta with steps tau/beta;
/// solutions should coincide with the base run.
InvarianceStudy evolution_invariance_study(const std::string& id, const ProblemParams& base,
                                           const std::vector<double>& betas);

/// The same freeway scenario posed in hour/km, minute/km, and hour/m units;
/// unit-unscaled density profiles should agree.
InvarianceStudy lwr_three_unit_study(const ProblemParams& base);

void print_invariance_study(const InvarianceStudy& study);

}  // namespace oedg
