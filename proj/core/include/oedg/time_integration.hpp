#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "oedg/dg_solution.hpp"
#include "oedg/oe_filter.hpp"
#include "oedg/spatial_operator.hpp"

namespace oedg {

enum class RKKind { Euler, SspRk2, SspRk3, Rk4Classic };

RKKind rk_kind_from_name(const std::string& name);  // "euler", "ssp-rk2", "ssp-rk3", "rk4-classic"
const char* rk_kind_name(RKKind kind);

// Explicit RK tableau in Shu-Osher form:
//   u^{l+1} = sum_m ( c[l][m] * u^m + tau * d[l][m] * L(u^m) ),  m = 0..l.
// Every c row sums to 1.
struct RKScheme {
  int order = 1;
  int stages = 1;
  std::vector<std::vector<double>> c, d;
};

RKScheme make_scheme(RKKind kind);

// Largest stable step from the CFL rule, using wave speeds at cell averages.
// 1D: tau = cfl * min_h / max_beta. 2D: tau = cfl / (bx/hx + by/hy).
// Throws when every wave speed is zero (supply a fixed step instead).
double compute_dt(const DGSolution1D& sol, const Model& model, double cfl);
double compute_dt(const DGSolution2D& sol, const Model& model, double cfl);

// One filtered RK step: after every stage the OE filter damps the stage
// solution over the full step tau. A null filter reproduces plain RKDG.
template <class Op, class Filter, class Sol>
class StepperT {
 public:
  StepperT(std::shared_ptr<Op> op, std::shared_ptr<const Filter> filter, RKScheme scheme,
           DampingVariant variant = DampingVariant::ScaleInvariant);

  // Advances sol in place from time t to t + tau.
  void step(Sol& sol, double tau, double t);

  const RKScheme& scheme() const { return scheme_; }
  Op& spatial_operator() { return *op_; }
  bool oe_enabled() const { return filter_ != nullptr; }

 private:
  std::shared_ptr<Op> op_;
  std::shared_ptr<const Filter> filter_;
  RKScheme scheme_;
  DampingVariant variant_;
  bool needs_residual_history_;
  std::vector<Sol> stage_u_;
  std::vector<Sol> stage_r_;
};

using Stepper1D = StepperT<Operator1D, OEFilter1D, DGSolution1D>;
using Stepper2D = StepperT<Operator2D, OEFilter2D, DGSolution2D>;

enum class ObserverDirective { Continue, Snapshot, Abort };

struct EvolveResult {
  long long steps = 0;
  double t_end = 0.0;
  bool stopped_by_observer = false;
};

// Runs steps until t_final. dt_fn proposes the step size; the driver clips the
// last step to land exactly on t_final, folding a trailing sliver (within 1e-8
// relative) into one final step so step counts stay stable under equivalent
// reformulations. The observer runs once at t0 with step index 0 and then
// after every step; returning Abort stops the run early.
template <class Stepper, class Sol>
EvolveResult evolve(Stepper& stepper, Sol& sol, double t0, double t_final,
                    const std::function<double(const Sol&, double)>& dt_fn,
                    const std::function<ObserverDirective(long long, double, const Sol&)>& observer);

extern template class StepperT<Operator1D, OEFilter1D, DGSolution1D>;
extern template class StepperT<Operator2D, OEFilter2D, DGSolution2D>;

extern template EvolveResult evolve<Stepper1D, DGSolution1D>(
    Stepper1D&, DGSolution1D&, double, double,
    const std::function<double(const DGSolution1D&, double)>&,
    const std::function<ObserverDirective(long long, double, const DGSolution1D&)>&);
extern template EvolveResult evolve<Stepper2D, DGSolution2D>(
    Stepper2D&, DGSolution2D&, double, double,
    const std::function<double(const DGSolution2D&, double)>&,
    const std::function<ObserverDirective(long long, double, const DGSolution2D&)>&);

}  // namespace oedg
