#include "oedg/run.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

namespace oedg {

namespace {

template <class Sol>
class ResidueTracker {
 public:
  void observe(long long step, double t, const Sol& sol,
               std::vector<std::pair<double, double>>& history) {
    const int cells = static_cast<int>(sol.coeff.size() / sol.cell_stride());
    const int nc = sol.n_comp;
    if (step == 0) {
      prev_avg_.resize(static_cast<size_t>(cells) * nc);
      snapshot(sol, cells, nc);
      prev_t_ = t;
      return;
    }
    const double tau = t - prev_t_;
    std::vector<double> next(prev_avg_.size());
    size_t idx = 0;
    for (int j = 0; j < cells; ++j)
      for (int c = 0; c < nc; ++c, ++idx) next[idx] = sol.cell_average(j, c);
    history.emplace_back(t, residue_rate(prev_avg_, next, tau));
    prev_avg_ = std::move(next);
    prev_t_ = t;
  }

 private:
  void snapshot(const Sol& sol, int cells, int nc) {
    size_t idx = 0;
    for (int j = 0; j < cells; ++j)
      for (int c = 0; c < nc; ++c, ++idx) prev_avg_[idx] = sol.cell_average(j, c);
  }
  std::vector<double> prev_avg_;
  double prev_t_ = 0.0;
};

template <class Sol>
std::function<double(const Sol&, double)> make_dt_fn(const ProblemSpec& spec,
                                                     const RunOptions& opts) {
  auto counter = std::make_shared<long long>(0);
  const Model model = spec.model;
  const double cfl = spec.cfl;
  auto override_fn = opts.dt_override;
  return [counter, model, cfl, override_fn](const Sol& sol, double t) {
    double base = -1.0;
    try {
      base = compute_dt(sol, model, cfl);
    } catch (const std::exception&) {
      if (!override_fn) throw;
    }
    double dt = base;
    if (override_fn) dt = override_fn((*counter), t, base);
    ++(*counter);
    if (!(dt > 0.0)) throw SolverAbort("nonpositive time step proposed");
    return dt;
  };
}

int cells_from_spacing(double lo, double hi, double h, const char* name) {
  const double cells = (hi - lo) / h;
  const long long n = std::llround(cells);
  if (n < 2 || n > 100000000 || std::abs(cells - static_cast<double>(n)) > 1e-9 * cells)
    throw std::invalid_argument(std::string(name) +
                                " must divide the domain extent into at least two cells");
  return static_cast<int>(n);
}

}  // namespace

ErrorReport RunResult::errors(int comp) const {
  if (!spec.has_exact())
    throw std::logic_error("problem '" + spec.id + "' has no exact solution to compare with");
  const int c = comp < 0 ? spec.error_component : comp;
  if (spec.dim == 1) return error_norms_1d(sol1, spec.exact_at_1d(t_end), c);
  return error_norms_2d(sol2, spec.exact_at_2d(t_end), c);
}

RunResult run_problem(const ProblemSpec& spec, const RunOptions& opts) {
  RunResult result;
  result.spec = spec;
  const auto wall_start = std::chrono::steady_clock::now();

  if (spec.dim == 1) {
    auto mesh = build_uniform_1d(
        spec.x_lo, spec.x_hi, spec.n,
        spec.bcs1.periodic() ? BoundaryKind::Periodic : BoundaryKind::Physical);
    auto sol = opts.superconvergent_init
                   ? gauss_radau_project_1d(mesh, spec.k, spec.model.n_comp, spec.ic1, opts.n_quad)
                   : l2_project_1d(mesh, spec.k, spec.model.n_comp, spec.ic1, opts.n_quad);
    auto op = std::make_shared<Operator1D>(mesh, spec.model, spec.bcs1, spec.flux, spec.k,
                                           opts.n_quad);
    std::shared_ptr<const OEFilter1D> filter;
    if (spec.oe) filter = std::make_shared<OEFilter1D>(mesh, spec.model, spec.bcs1, spec.k);
    Stepper1D stepper(op, filter, make_scheme(spec.rk), spec.variant);

    ResidueTracker<DGSolution1D> tracker;
    auto observer = [&](long long step, double t, const DGSolution1D& s) {
      if (opts.collect_residue) tracker.observe(step, t, s, result.residue_history);
      return opts.observer1 ? opts.observer1(step, t, s) : ObserverDirective::Continue;
    };
    const auto ev = evolve<Stepper1D, DGSolution1D>(stepper, sol, 0.0, spec.t_final,
                                                    make_dt_fn<DGSolution1D>(spec, opts),
                                                    observer);
    result.sol1 = std::move(sol);
    result.steps = ev.steps;
    result.t_end = ev.t_end;
  } else {
    if (opts.superconvergent_init)
      throw std::invalid_argument("superconvergent initialization is 1D only");
    std::array<BoundaryKind, 4> sides;
    for (int s = 0; s < 4; ++s)
      sides[s] = spec.bcs2.side[s].kind == BC2D::Kind::Periodic ? BoundaryKind::Periodic
                                                                : BoundaryKind::Physical;
    auto mesh = build_uniform_2d(spec.x_lo, spec.x_hi, spec.nx, spec.y_lo, spec.y_hi, spec.ny,
                                 sides);
    auto sol = l2_project_2d(mesh, spec.k, spec.model.n_comp, spec.ic2, opts.n_quad);
    auto op = std::make_shared<Operator2D>(mesh, spec.model, spec.bcs2, spec.flux, spec.k,
                                           opts.n_quad);
    std::shared_ptr<const OEFilter2D> filter;
    if (spec.oe) filter = std::make_shared<OEFilter2D>(mesh, spec.model, spec.bcs2, spec.k);
    Stepper2D stepper(op, filter, make_scheme(spec.rk), spec.variant);

    ResidueTracker<DGSolution2D> tracker;
    auto observer = [&](long long step, double t, const DGSolution2D& s) {
      if (opts.collect_residue) tracker.observe(step, t, s, result.residue_history);
      return opts.observer2 ? opts.observer2(step, t, s) : ObserverDirective::Continue;
    };
    const auto ev = evolve<Stepper2D, DGSolution2D>(stepper, sol, 0.0, spec.t_final,
                                                    make_dt_fn<DGSolution2D>(spec, opts),
                                                    observer);
    result.sol2 = std::move(sol);
    result.steps = ev.steps;
    result.t_end = ev.t_end;
  }

  result.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - wall_start).count();
  return result;
}

double residue_rate(const std::vector<double>& prev, const std::vector<double>& next, double tau) {
  if (prev.size() != next.size() || prev.empty())
    throw std::invalid_argument("residue_rate: snapshot sizes differ or are empty");
  if (!(tau > 0.0)) throw std::invalid_argument("residue_rate: step must be positive");
  double acc = 0.0;
  for (size_t i = 0; i < prev.size(); ++i) acc += std::abs(next[i] - prev[i]);
  return acc / (tau * static_cast<double>(prev.size()));
}

OscillationReport oscillation_metrics(const std::vector<double>& values, double ref_min,
                                      double ref_max) {
  if (values.empty()) throw std::invalid_argument("oscillation_metrics: no values");
  if (!(ref_max >= ref_min)) throw std::invalid_argument("oscillation_metrics: empty range");
  OscillationReport r;
  r.ref_min = ref_min;
  r.ref_max = ref_max;
  double mn = values[0], mx = values[0];
  for (const double v : values) {
    mn = std::min(mn, v);
    mx = std::max(mx, v);
  }
  r.min_value = mn;
  r.max_value = mx;
  const double range = ref_max - ref_min;
  const double guard = 1e-14 * std::max({1.0, std::abs(ref_min), std::abs(ref_max)});
  r.absolute = range <= guard;
  const double scale = r.absolute ? 1.0 : range;
  r.overshoot = std::max(0.0, mx - ref_max) / scale;
  r.undershoot = std::max(0.0, ref_min - mn) / scale;
  return r;
}

void resolve_resolution(const RunConfig& cfg, ProblemParams& params) {
  if (!cfg.hx && !cfg.hy) return;
  ProblemParams probe_params;
  probe_params.units = params.units;
  const ProblemSpec probe = make_problem(cfg.problem, probe_params);
  if (probe.dim == 1) {
    if (cfg.hy) throw std::invalid_argument("hy applies to 2D problems only");
    if (params.n > 0) throw std::invalid_argument("give n or hx, not both");
    params.n = cells_from_spacing(probe.x_lo, probe.x_hi, *cfg.hx, "hx");
  } else {
    if (params.nx > 0 || params.ny > 0)
      throw std::invalid_argument("give nx/ny or hx/hy, not both");
    const double hx = cfg.hx ? *cfg.hx : *cfg.hy;
    const double hy = cfg.hy ? *cfg.hy : *cfg.hx;
    params.nx = cells_from_spacing(probe.x_lo, probe.x_hi, hx, "hx");
    params.ny = cells_from_spacing(probe.y_lo, probe.y_hi, hy, "hy");
  }
}

ReferenceSolution problem_reference(const ProblemSpec& spec, const std::string& cache_dir,
                                    int n_cells) {
  if (spec.dim != 1)
    throw std::invalid_argument("finite-volume references exist for 1D problems only");
  const int n = n_cells > 0 ? n_cells : spec.reference.n_cells;
  if (n <= 0)
    throw std::invalid_argument("problem '" + spec.id + "' has no reference recipe");
  char key[192];
  std::snprintf(key, sizeof key, "%s_n%d_L%.12g_t%.12g_lam%.12g_g%.12g", spec.id.c_str(), n,
                spec.x_hi - spec.x_lo, spec.t_final, spec.lambda,
                spec.model.is_euler() ? spec.model.gamma : 0.0);
  return cached_reference(cache_dir, key, [&] {
    return fv_reference_1d(spec.model, spec.bcs1, spec.x_lo, spec.x_hi, n, spec.ic1, spec.t_final,
                           spec.reference.cfl);
  });
}

std::string resolution_string(const ProblemSpec& spec) {
  if (spec.dim == 1) return std::to_string(spec.n);
  return std::to_string(spec.nx) + "x" + std::to_string(spec.ny);
}

OutputMeta make_output_meta(const ProblemSpec& spec) {
  return {spec.id, spec.k, resolution_string(spec), spec.cfl};
}

int run_to_files(const RunConfig& cfg) {
  ProblemParams params = cfg.params;
  resolve_resolution(cfg, params);
  const ProblemSpec spec = make_problem(cfg.problem, params);

  RunOptions opts;
  opts.collect_residue = cfg.residue;
  const RunResult result = run_problem(spec, opts);

  const OutputMeta meta = make_output_meta(result.spec);
  const std::string base = cfg.out_dir + "/" + spec.id;

  if (cfg.cell_averages) {
    if (spec.dim == 1)
      write_cell_average_csv(base + "_averages.csv", meta, result.sol1);
    else
      write_cell_average_csv(base + "_averages.csv", meta, result.sol2);
  }
  if (cfg.point_samples && spec.dim == 1)
    write_point_samples_csv(base + "_points.csv", meta, result.sol1);
  if (cfg.contour && spec.dim == 2) write_contour_grid_csv(base + "_contour.csv", meta, result.sol2);
  if (cfg.error_report && spec.has_exact())
    write_error_report_csv(base + "_errors.csv", meta, result.errors());
  if (cfg.residue) write_residue_csv(base + "_residue.csv", meta, result.residue_history);
  if (cfg.reference) {
    const ReferenceSolution ref = problem_reference(spec, cfg.out_dir + "/.refcache");
    write_reference_csv(base + "_reference.csv", meta, ref);
  }

  std::printf("run %s: k=%d resolution=%s steps=%lld t_end=%.12g wall=%.3fs\n", spec.id.c_str(),
              spec.k, resolution_string(spec).c_str(), result.steps, result.t_end,
              result.wall_seconds);
  if (cfg.error_report && spec.has_exact()) {
    const ErrorReport e = result.errors();
    std::printf("errors: e1=%.6e e2=%.6e e3=%.6e e4=%.6e e5=%.6e\n", e.e1, e.e2, e.e3, e.e4, e.e5);
  }
  return 0;
}

}  // namespace oedg
