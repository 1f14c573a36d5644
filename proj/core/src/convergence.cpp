#include "oedg/convergence.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

namespace oedg {

namespace {

double pair_rate(double e_coarse, double e_fine, double h_coarse, double h_fine) {
  if (!(e_coarse > 0.0) || !(e_fine > 0.0) || !(h_coarse > h_fine))
    return std::numeric_limits<double>::quiet_NaN();
  return std::log(e_coarse / e_fine) / std::log(h_coarse / h_fine);
}

// Fixed-step prefactors chosen inside the fourth-order scheme's stability
// region on the coarsest meshes used by the studies.
double superconv_prefactor(int k) {
  switch (k) {
    case 1: return 0.05;
    case 2: return 0.1;
    case 3: return 1.0 / 14.0;
    default: return 0.05;
  }
}

}  // namespace

ConvergenceTable convergence_study(const std::string& id, const ProblemParams& base,
                                   const std::vector<int>& resolutions, StudyMode mode) {
  if (resolutions.empty()) throw std::invalid_argument("convergence study needs resolutions");

  ProblemParams probe_params = base;
  probe_params.n = probe_params.nx = probe_params.ny = 0;
  const ProblemSpec probe = make_problem(id, probe_params);
  if (!probe.has_exact())
    throw std::invalid_argument("problem '" + id + "' has no exact solution for a rate study");
  if (mode == StudyMode::Superconvergence &&
      (probe.dim != 1 || probe.model.kind != ModelKind::Advection1D))
    throw std::invalid_argument("superconvergence study requires 1D linear advection");

  ConvergenceTable table;
  table.problem = id;
  table.k = probe.k;
  table.mode = mode;

  for (const int res : resolutions) {
    ProblemParams p = base;
    if (probe.dim == 1) {
      p.n = res;
    } else {
      p.nx = res;
      const long long ny = static_cast<long long>(res) * probe.ny / probe.nx;
      if (ny * probe.nx != static_cast<long long>(res) * probe.ny || ny < 2)
        throw std::invalid_argument("resolution " + std::to_string(res) +
                                    " does not preserve the problem's aspect ratio");
      p.ny = static_cast<int>(ny);
    }
    if (mode == StudyMode::Superconvergence) p.rk = RKKind::Rk4Classic;

    const ProblemSpec spec = make_problem(id, p);
    RunOptions opts;
    if (mode == StudyMode::Superconvergence) {
      opts.superconvergent_init = true;
      const double h = (spec.x_hi - spec.x_lo) / spec.n;
      const double speed = std::abs(spec.model.advection_x * spec.model.flux_scale);
      const double tau =
          superconv_prefactor(spec.k) * std::pow(h, (spec.k + 2.0) / 4.0) / speed;
      opts.dt_override = [tau](long long, double, double) { return tau; };
    } else if (spec.k >= 4) {
      // Keep the fourth-order time error below the spatial order by
      // shrinking the CFL step with the mesh.
      const double h = spec.dim == 1 ? (spec.x_hi - spec.x_lo) / spec.n
                                     : std::max((spec.x_hi - spec.x_lo) / spec.nx,
                                                (spec.y_hi - spec.y_lo) / spec.ny);
      const double factor = std::pow(h, (spec.k - 3.0) / 4.0);
      opts.dt_override = [factor](long long, double, double cfl_dt) { return cfl_dt * factor; };
    }

    const RunResult result = run_problem(spec, opts);
    ConvergenceRow row;
    if (spec.dim == 1) {
      row.n = spec.n;
      row.h = (spec.x_hi - spec.x_lo) / spec.n;
    } else {
      row.nx = spec.nx;
      row.ny = spec.ny;
      row.h = std::max((spec.x_hi - spec.x_lo) / spec.nx, (spec.y_hi - spec.y_lo) / spec.ny);
    }
    row.errors = result.errors();
    row.steps = result.steps;
    row.wall_seconds = result.wall_seconds;

    const double cur[5] = {row.errors.e1, row.errors.e2, row.errors.e3, row.errors.e4,
                           row.errors.e5};
    if (table.rows.empty()) {
      for (double& r : row.rates) r = std::numeric_limits<double>::quiet_NaN();
    } else {
      const ConvergenceRow& prev = table.rows.back();
      const double before[5] = {prev.errors.e1, prev.errors.e2, prev.errors.e3, prev.errors.e4,
                                prev.errors.e5};
      for (int i = 0; i < 5; ++i) row.rates[i] = pair_rate(before[i], cur[i], prev.h, row.h);
    }
    table.rows.push_back(row);
  }
  return table;
}

double finest_pair_rate(const ConvergenceTable& table, int which) {
  if (table.rows.size() < 2 || which < 0 || which > 4)
    return std::numeric_limits<double>::quiet_NaN();
  return table.rows.back().rates[which];
}

void print_convergence_table(const ConvergenceTable& table) {
  std::printf("# %s k=%d%s\n", table.problem.c_str(), table.k,
              table.mode == StudyMode::Superconvergence ? " (superconvergence)" : "");
  std::printf("%-11s %-10s %5s  %-10s %5s  %-10s %5s  %-10s %5s  %-10s %5s\n", "cells", "e1",
              "r1", "e2", "r2", "e3", "r3", "e4", "r4", "e5", "r5");
  for (const auto& row : table.rows) {
    char cells[32];
    if (row.n > 0)
      std::snprintf(cells, sizeof cells, "%d", row.n);
    else
      std::snprintf(cells, sizeof cells, "%dx%d", row.nx, row.ny);
    const double e[5] = {row.errors.e1, row.errors.e2, row.errors.e3, row.errors.e4,
                         row.errors.e5};
    std::printf("%-11s", cells);
    for (int i = 0; i < 5; ++i) {
      if (std::isnan(row.rates[i]))
        std::printf(" %-10.3e %5s ", e[i], "-");
      else
        std::printf(" %-10.3e %5.2f ", e[i], row.rates[i]);
    }
    std::printf("\n");
  }
}

void write_convergence_csv(const std::string& path, const ConvergenceTable& table) {
  OutputMeta meta{table.problem, table.k, "study", 0.0};
  std::string out = csv_header_comment(meta);
  out += "n,nx,ny,h,e1,rate1,e2,rate2,e3,rate3,e4,rate4,e5,rate5,steps,wall_seconds\n";
  char buf[512];
  for (const auto& row : table.rows) {
    std::snprintf(buf, sizeof buf,
                  "%d,%d,%d,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,"
                  "%lld,%.17g\n",
                  row.n, row.nx, row.ny, row.h, row.errors.e1, row.rates[0], row.errors.e2,
                  row.rates[1], row.errors.e3, row.rates[2], row.errors.e4, row.rates[3],
                  row.errors.e5, row.rates[4], row.steps, row.wall_seconds);
    out += buf;
  }
  write_file_atomic(path, out);
}

}  // namespace oedg
