#include "oedg/invariance.hpp"

#include <cmath>
#include <cstdio>
#include <memory>
#include <stdexcept>

namespace oedg {

namespace {

int homogeneity_degree(const Model& m) {
  switch (m.kind) {
    case ModelKind::Advection1D:
    case ModelKind::Advection2D:
    case ModelKind::Euler1D:
    case ModelKind::Euler2D:
      return 1;
    case ModelKind::Burgers1D:
    case ModelKind::Burgers2D:
      return 2;
    default:
      return 0;
  }
}

std::vector<double> averages(const RunResult& r) {
  std::vector<double> out;
  if (r.spec.dim == 1) {
    const int n = r.sol1.mesh->num_cells();
    out.reserve(static_cast<size_t>(n) * r.sol1.n_comp);
    for (int j = 0; j < n; ++j)
      for (int c = 0; c < r.sol1.n_comp; ++c) out.push_back(r.sol1.cell_average(j, c));
  } else {
    const int n = r.sol2.mesh->num_cells();
    out.reserve(static_cast<size_t>(n) * r.sol2.n_comp);
    for (int j = 0; j < n; ++j)
      for (int c = 0; c < r.sol2.n_comp; ++c) out.push_back(r.sol2.cell_average(j, c));
  }
  return out;
}

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (const double x : v) m = std::max(m, std::abs(x));
  return m;
}

struct BaseRun {
  RunResult result;
  std::shared_ptr<std::vector<double>> taus;
};

BaseRun run_recording(const ProblemSpec& spec) {
  BaseRun b;
  b.taus = std::make_shared<std::vector<double>>();
  RunOptions opts;
  auto taus = b.taus;
  opts.dt_override = [taus](long long, double, double cfl_dt) {
    taus->push_back(cfl_dt);
    return cfl_dt;
  };
  b.result = run_problem(spec, opts);
  return b;
}

RunResult run_replaying(const ProblemSpec& spec, std::shared_ptr<const std::vector<double>> taus,
                        double tau_mult) {
  RunOptions opts;
  opts.dt_override = [taus, tau_mult](long long step, double, double) {
    const size_t i = std::min(static_cast<size_t>(step), taus->size() - 1);
    return (*taus)[i] * tau_mult;
  };
  return run_problem(spec, opts);
}

InvarianceRow compare_row(const std::string& label, const RunResult& variant,
                          const std::vector<double>& base_avg, double base_scale,
                          double unscale) {
  const std::vector<double> va = averages(variant);
  if (va.size() != base_avg.size())
    throw std::logic_error("invariance study: mismatched solution sizes");
  double dev = 0.0;
  for (size_t i = 0; i < va.size(); ++i)
    dev = std::max(dev, std::abs(va[i] * unscale - base_avg[i]));
  return {label, dev / std::max(base_scale, 1e-300), variant.steps};
}

char* fmt_label(char* buf, size_t n, const char* name, double v) {
  std::snprintf(buf, n, "%s=%.6g", name, v);
  return buf;
}

}  // namespace

double InvarianceStudy::worst() const {
  double w = 0.0;
  for (const auto& r : rows) w = std::max(w, r.max_rel_deviation);
  return w;
}

InvarianceStudy scale_invariance_study(const std::string& id, const ProblemParams& base,
                                       const std::vector<double>& lambdas) {
  InvarianceStudy study;
  study.problem = id;
  study.kind = "scale";

  ProblemParams pb = base;
  pb.lambda = 1.0;
  const ProblemSpec sb = make_problem(id, pb);
  const int q = homogeneity_degree(sb.model);
  if (q == 0)
    throw std::invalid_argument("problem '" + id + "' has no scale-invariant formulation");

  const BaseRun baseline = run_recording(sb);
  const std::vector<double> base_avg = averages(baseline.result);
  const double base_scale = max_abs(base_avg);

  char label[64];
  for (const double lam : lambdas) {
    if (!(lam > 0.0)) throw std::invalid_argument("lambda values must be positive");
    ProblemParams pv = base;
    pv.lambda = lam;
    const double tdiv = std::pow(lam, q - 1);
    pv.t_final = sb.t_final / tdiv;
    const ProblemSpec sv = make_problem(id, pv);
    const RunResult rv = run_replaying(sv, baseline.taus, 1.0 / tdiv);
    study.rows.push_back(
        compare_row(fmt_label(label, sizeof label, "lambda", lam), rv, base_avg, base_scale,
                    1.0 / lam));
  }
  return study;
}

InvarianceStudy evolution_invariance_study(const std::string& id, const ProblemParams& base,
                                           const std::vector<double>& betas) {
  InvarianceStudy study;
  study.problem = id;
  study.kind = "evolution";

  ProblemParams pb = base;
  pb.beta = 1.0;
  const ProblemSpec sb = make_problem(id, pb);
  if (homogeneity_degree(sb.model) == 0)
    throw std::invalid_argument("problem '" + id + "' has no evolution-invariant formulation");

  const BaseRun baseline = run_recording(sb);
  const std::vector<double> base_avg = averages(baseline.result);
  const double base_scale = max_abs(base_avg);

  char label[64];
  for (const double beta : betas) {
    if (!(beta > 0.0)) throw std::invalid_argument("beta values must be positive");
    ProblemParams pv = base;
    pv.beta = beta;
    pv.t_final = sb.t_final / beta;
    const ProblemSpec sv = make_problem(id, pv);
    const RunResult rv = run_replaying(sv, baseline.taus, 1.0 / beta);
    study.rows.push_back(
        compare_row(fmt_label(label, sizeof label, "beta", beta), rv, base_avg, base_scale, 1.0));
  }
  return study;
}

InvarianceStudy lwr_three_unit_study(const ProblemParams& base) {
  InvarianceStudy study;
  study.problem = "lwr-freeway";
  study.kind = "units";

  ProblemParams pb = base;
  pb.units = "hours";
  const ProblemSpec sb = make_problem(study.problem, pb);
  const BaseRun baseline = run_recording(sb);
  const std::vector<double> base_avg = averages(baseline.result);
  const double base_scale = max_abs(base_avg);

  struct Variant {
    const char* units;
    double time_mult;  // variant time units per base hour
    double unscale;    // multiplies variant densities back to the base units
  };
  const Variant variants[] = {{"minutes", 60.0, 1.0}, {"meters", 1.0, 1000.0}};
  for (const auto& v : variants) {
    ProblemParams pv = base;
    pv.units = v.units;
    pv.t_final = sb.t_final * v.time_mult;
    const ProblemSpec sv = make_problem(study.problem, pv);
    const RunResult rv = run_replaying(sv, baseline.taus, v.time_mult);
    study.rows.push_back(compare_row(v.units, rv, base_avg, base_scale, v.unscale));
  }
  return study;
}

void print_invariance_study(const InvarianceStudy& study) {
  std::printf("# %s %s invariance\n", study.problem.c_str(), study.kind.c_str());
  for (const auto& row : study.rows)
    std::printf("%-14s max_rel_deviation=%.3e steps=%lld\n", row.label.c_str(),
                row.max_rel_deviation, row.steps);
}

}  // namespace oedg
