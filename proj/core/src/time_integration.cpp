#include "oedg/time_integration.hpp"

#include <cmath>
#include <sstream>

#include "abort_collector.hpp"
#include "oedg/parallel.hpp"

namespace oedg {

RKKind rk_kind_from_name(const std::string& name) {
  if (name == "euler") return RKKind::Euler;
  if (name == "ssp-rk2") return RKKind::SspRk2;
  if (name == "ssp-rk3") return RKKind::SspRk3;
  if (name == "rk4-classic") return RKKind::Rk4Classic;
  throw std::invalid_argument("unknown RK scheme: " + name);
}

const char* rk_kind_name(RKKind kind) {
  switch (kind) {
    case RKKind::Euler: return "euler";
    case RKKind::SspRk2: return "ssp-rk2";
    case RKKind::SspRk3: return "ssp-rk3";
    case RKKind::Rk4Classic: return "rk4-classic";
  }
  return "?";
}

RKScheme make_scheme(RKKind kind) {
  RKScheme s;
  switch (kind) {
    case RKKind::Euler:
      s.order = 1;
      s.c = {{1.0}};
      s.d = {{1.0}};
      break;
    case RKKind::SspRk2:
      s.order = 2;
      s.c = {{1.0}, {0.5, 0.5}};
      s.d = {{1.0}, {0.0, 0.5}};
      break;
    case RKKind::SspRk3:
      s.order = 3;
      s.c = {{1.0}, {0.75, 0.25}, {1.0 / 3.0, 0.0, 2.0 / 3.0}};
      s.d = {{1.0}, {0.0, 0.25}, {0.0, 0.0, 2.0 / 3.0}};
      break;
    case RKKind::Rk4Classic:
      s.order = 4;
      s.c = {{1.0}, {1.0, 0.0}, {1.0, 0.0, 0.0}, {1.0, 0.0, 0.0, 0.0}};
      s.d = {{0.5}, {0.0, 0.5}, {0.0, 0.0, 1.0}, {1.0 / 6.0, 1.0 / 3.0, 1.0 / 3.0, 1.0 / 6.0}};
      break;
  }
  s.stages = static_cast<int>(s.c.size());
  for (int l = 0; l < s.stages; ++l) {
    double row = 0.0;
    for (double v : s.c[l]) row += v;
    if (std::abs(row - 1.0) > 1e-14) throw std::logic_error("RK consistency violated");
  }
  return s;
}

namespace {

double max_beta_1d(const DGSolution1D& sol, const Model& model) {
  internal::AbortCollector abort;
  int nc = sol.n_comp;
  double beta = chunked_max(sol.mesh->num_cells(), [&](long long begin, long long end) {
    double ubar[8];
    double mx = 0.0;
    for (long long j = begin; j < end; ++j) {
      for (int c = 0; c < nc; ++c) ubar[c] = sol.at(static_cast<int>(j), c, 0);
      try {
        mx = std::max(mx, max_wave_speed_x(model, ubar));
      } catch (const std::exception& e) {
        abort.record(internal::cell_context_1d(static_cast<int>(j),
                                               sol.mesh->center(static_cast<int>(j)), 0.0,
                                               "wave speed") +
                     ": " + e.what());
        return mx;
      }
    }
    return mx;
  });
  abort.rethrow_if();
  return beta;
}

void max_beta_2d(const DGSolution2D& sol, const Model& model, double& bx_out, double& by_out) {
  internal::AbortCollector abort;
  int nc = sol.n_comp;
  int nx = sol.mesh->nx();
  long long n = static_cast<long long>(nx) * sol.mesh->ny();
  // Pack both directional maxima into one deterministic pass each.
  bx_out = chunked_max(n, [&](long long begin, long long end) {
    double ubar[8];
    double mx = 0.0;
    for (long long f = begin; f < end; ++f) {
      for (int c = 0; c < nc; ++c) ubar[c] = sol.at(static_cast<int>(f), c, 0);
      try {
        mx = std::max(mx, max_wave_speed_x(model, ubar));
      } catch (const std::exception& e) {
        abort.record(internal::cell_context_2d(static_cast<int>(f % nx), static_cast<int>(f / nx),
                                               0.0, 0.0, 0.0, "wave speed") +
                     ": " + e.what());
        return mx;
      }
    }
    return mx;
  });
  abort.rethrow_if();
  by_out = chunked_max(n, [&](long long begin, long long end) {
    double ubar[8];
    double mx = 0.0;
    for (long long f = begin; f < end; ++f) {
      for (int c = 0; c < nc; ++c) ubar[c] = sol.at(static_cast<int>(f), c, 0);
      mx = std::max(mx, max_wave_speed_y(model, ubar));
    }
    return mx;
  });
}

}  // namespace

double compute_dt(const DGSolution1D& sol, const Model& model, double cfl) {
  if (!(cfl > 0.0)) throw std::invalid_argument("compute_dt: CFL constant must be positive");
  double beta = max_beta_1d(sol, model);
  if (beta <= 0.0) {
    throw std::runtime_error(
        "compute_dt: every cell has zero wave speed; supply a fixed time step instead");
  }
  return cfl * sol.mesh->min_width() / beta;
}

double compute_dt(const DGSolution2D& sol, const Model& model, double cfl) {
  if (!(cfl > 0.0)) throw std::invalid_argument("compute_dt: CFL constant must be positive");
  double bx = 0.0, by = 0.0;
  max_beta_2d(sol, model, bx, by);
  if (bx <= 0.0 && by <= 0.0) {
    throw std::runtime_error(
        "compute_dt: every cell has zero wave speed; supply a fixed time step instead");
  }
  double hx = sol.mesh->hx(0), hy = sol.mesh->hy(0);
  for (int i = 1; i < sol.mesh->nx(); ++i) hx = std::min(hx, sol.mesh->hx(i));
  for (int j = 1; j < sol.mesh->ny(); ++j) hy = std::min(hy, sol.mesh->hy(j));
  return cfl / (bx / hx + by / hy);
}

template <class Op, class Filter, class Sol>
StepperT<Op, Filter, Sol>::StepperT(std::shared_ptr<Op> op, std::shared_ptr<const Filter> filter,
                                    RKScheme scheme, DampingVariant variant)
    : op_(std::move(op)), filter_(std::move(filter)), scheme_(std::move(scheme)), variant_(variant) {
  if (!op_) throw std::invalid_argument("Stepper: null spatial operator");
  if (scheme_.stages < 1) throw std::invalid_argument("Stepper: empty scheme");
  needs_residual_history_ = false;
  for (int l = 0; l < scheme_.stages; ++l) {
    for (int m = 0; m + 1 < static_cast<int>(scheme_.d[l].size()); ++m) {
      if (scheme_.d[l][m] != 0.0) needs_residual_history_ = true;
    }
  }
}

template <class Op, class Filter, class Sol>
void StepperT<Op, Filter, Sol>::step(Sol& sol, double tau, double t) {
  if (!(tau > 0.0) || !std::isfinite(tau)) {
    throw SolverAbort("step size must be positive and finite");
  }
  int s = scheme_.stages;
  size_t ncoef = sol.coeff.size();

  if (stage_u_.size() != static_cast<size_t>(s) + 1 || stage_u_.back().coeff.size() != ncoef) {
    stage_u_.assign(s + 1, sol);
  }
  int n_res = needs_residual_history_ ? s : 1;
  if (stage_r_.size() != static_cast<size_t>(n_res) || stage_r_.back().coeff.size() != ncoef) {
    stage_r_.assign(n_res, sol);
  }

  stage_u_[0] = sol;
  std::vector<double> t_stage(s + 1, t);

  for (int l = 0; l < s; ++l) {
    Sol& r = stage_r_[needs_residual_history_ ? l : 0];
    try {
      op_->residual(stage_u_[l], t_stage[l], r);
    } catch (const SolverAbort& e) {
      std::ostringstream os;
      os << "stage " << l << ": " << e.what();
      throw SolverAbort(os.str());
    }

    Sol& next = stage_u_[l + 1];
    const auto& crow = scheme_.c[l];
    const auto& drow = scheme_.d[l];
    // next = sum_m c[m]*u[m] + tau*d[m]*r[m]
    parallel_for(static_cast<long long>(ncoef), [&](long long begin, long long end) {
      for (long long i = begin; i < end; ++i) {
        double acc = 0.0;
        for (int m = 0; m <= l; ++m) {
          if (crow[m] != 0.0) acc += crow[m] * stage_u_[m].coeff[i];
          if (drow[m] != 0.0) {
            acc += tau * drow[m] * stage_r_[needs_residual_history_ ? m : 0].coeff[i];
          }
        }
        next.coeff[i] = acc;
      }
    });
    double ts = 0.0;
    for (int m = 0; m <= l; ++m) ts += crow[m] * t_stage[m] + tau * drow[m];
    t_stage[l + 1] = ts;

    if (filter_) {
      try {
        filter_->apply(next, tau, t_stage[l + 1], variant_);
      } catch (const SolverAbort& e) {
        std::ostringstream os;
        os << "filter after stage " << l << ": " << e.what();
        throw SolverAbort(os.str());
      }
    }

    if (has_nonfinite(next.coeff)) {
      size_t bad = 0;
      while (bad < ncoef && std::isfinite(next.coeff[bad])) ++bad;
      std::ostringstream os;
      os << "non-finite coefficient after stage " << l << " in cell "
         << bad / static_cast<size_t>(next.cell_stride());
      throw SolverAbort(os.str());
    }
  }
  sol = stage_u_[s];
}

template class StepperT<Operator1D, OEFilter1D, DGSolution1D>;
template class StepperT<Operator2D, OEFilter2D, DGSolution2D>;

template <class Stepper, class Sol>
EvolveResult evolve(Stepper& stepper, Sol& sol, double t0, double t_final,
                    const std::function<double(const Sol&, double)>& dt_fn,
                    const std::function<ObserverDirective(long long, double, const Sol&)>& observer) {
  if (!(t_final >= t0)) throw std::invalid_argument("evolve: final time precedes start time");
  EvolveResult res;
  double t = t0;
  if (observer && observer(0, t, sol) == ObserverDirective::Abort) {
    res.t_end = t;
    res.stopped_by_observer = true;
    return res;
  }
  while (t < t_final) {
    double tau = dt_fn(sol, t);
    if (!(tau > 0.0) || !std::isfinite(tau)) {
      std::ostringstream os;
      os << "step " << res.steps << ", t = " << t << ": proposed step " << tau << " is not usable";
      throw SolverAbort(os.str());
    }
    double remaining = t_final - t;
    bool last = remaining <= tau * (1.0 + 1e-8);
    if (last) tau = remaining;
    try {
      stepper.step(sol, tau, t);
    } catch (const SolverAbort& e) {
      std::ostringstream os;
      os << "step " << res.steps << ", t = " << t << ": " << e.what();
      throw SolverAbort(os.str());
    }
    t = last ? t_final : t + tau;
    ++res.steps;
    if (observer && observer(res.steps, t, sol) == ObserverDirective::Abort) {
      res.stopped_by_observer = true;
      break;
    }
  }
  res.t_end = t;
  return res;
}

template EvolveResult evolve<Stepper1D, DGSolution1D>(
    Stepper1D&, DGSolution1D&, double, double,
    const std::function<double(const DGSolution1D&, double)>&,
    const std::function<ObserverDirective(long long, double, const DGSolution1D&)>&);
template EvolveResult evolve<Stepper2D, DGSolution2D>(
    Stepper2D&, DGSolution2D&, double, double,
    const std::function<double(const DGSolution2D&, double)>&,
    const std::function<ObserverDirective(long long, double, const DGSolution2D&)>&);

}  // namespace oedg
