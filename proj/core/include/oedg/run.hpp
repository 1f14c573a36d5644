#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "oedg/config.hpp"
#include "oedg/error_norms.hpp"
#include "oedg/outputs.hpp"
#include "oedg/problems.hpp"
#include "oedg/reference_fv.hpp"
#include "oedg/time_integration.hpp"

namespace oedg {

struct RunOptions {
  /// Replaces the CFL step rule. Receives (step index, time, CFL step); the
  /// CFL step is -1 when no wave speed is available. The returned value is
  /// still clipped to land on t_final.
  std::function<double(long long, double, double)> dt_override;
  bool collect_residue = false;
  /// Extra observers with evolve() semantics (called at t0 and after every
  /// step; Abort stops the run).
  std::function<ObserverDirective(long long, double, const DGSolution1D&)> observer1;
  std::function<ObserverDirective(long long, double, const DGSolution2D&)> observer2;
  /// Initialize with the downwind-interpolating projection (1D only).
  bool superconvergent_init = false;
  int n_quad = 0;
};

struct RunResult {
  ProblemSpec spec;
  DGSolution1D sol1;  // dim == 1
  DGSolution2D sol2;  // dim == 2
  long long steps = 0;
  double t_end = 0.0;
  double wall_seconds = 0.0;
  /// (t, residue) after each step when collect_residue was set. The residue
  /// is the mean |change of cell average| per component per unit time.
  std::vector<std::pair<double, double>> residue_history;

  /// Error norms against the problem's exact solution at t_end.
  /// comp < 0 selects the problem's reporting component.
  ErrorReport errors(int comp = -1) const;
};

/// Projects the initial data and advances it to spec.t_final.
RunResult run_problem(const ProblemSpec& spec, const RunOptions& opts = {});

/// Over/undershoot of sampled values against a reference range, normalized
/// by the range width. A degenerate range switches to absolute differences.
struct OscillationReport {
  double overshoot = 0.0;
  double undershoot = 0.0;
  bool absolute = false;
  double min_value = 0.0, max_value = 0.0;
  double ref_min = 0.0, ref_max = 0.0;
};

OscillationReport oscillation_metrics(const std::vector<double>& values, double ref_min,
                                      double ref_max);

/// Mean |cell-average change| per component per unit time between two
/// snapshots laid out [cell * n_comp + comp]. Used by the residue history.
double residue_rate(const std::vector<double>& prev, const std::vector<double>& next, double tau);

/// Fills params.n (1D) or params.nx/ny (2D) from cfg.hx/hy. Throws if the
/// spacing does not evenly divide the domain or conflicts with given counts.
void resolve_resolution(const RunConfig& cfg, ProblemParams& params);

/// The finite-volume reference for a 1D problem, generated on first use and
/// cached under cache_dir. n_cells == 0 uses the problem's recipe.
ReferenceSolution problem_reference(const ProblemSpec& spec, const std::string& cache_dir,
                                    int n_cells = 0);

OutputMeta make_output_meta(const ProblemSpec& spec);
std::string resolution_string(const ProblemSpec& spec);

/// Config-driven run writing the requested CSV outputs under cfg.out_dir.
/// Returns 0; configuration and solver failures propagate as exceptions.
int run_to_files(const RunConfig& cfg);

}  // namespace oedg
