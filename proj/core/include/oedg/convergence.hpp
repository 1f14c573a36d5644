#pragma once

#include <string>
#include <vector>

#include "oedg/run.hpp"

namespace oedg {

/// Superconvergence mode pairs the downwind-interpolating initialization
/// with a fixed step tau ~ h^((k+2)/4), which keeps the fourth-order time
/// error below the k+2 spatial superconvergence order.
enum class StudyMode { Standard, Superconvergence };

struct ConvergenceRow {
  int n = 0;            // 1D cells (0 for 2D rows)
  int nx = 0, ny = 0;   // 2D cells (0 for 1D rows)
  double h = 0.0;       // cell width (1D) or max(hx, hy) (2D)
  ErrorReport errors{};
  double rates[5] = {0, 0, 0, 0, 0};  // e1..e5 vs the previous row; NaN on row 0
  long long steps = 0;
  double wall_seconds = 0.0;
};

struct ConvergenceTable {
  std::string problem;
  int k = 0;
  StudyMode mode = StudyMode::Standard;
  std::vector<ConvergenceRow> rows;
};

/// Runs the problem at each resolution (1D: cell counts; 2D: nx values with
/// ny scaled to preserve the default aspect ratio) and tabulates error norms
/// with observed convergence rates.
ConvergenceTable convergence_study(const std::string& id, const ProblemParams& base,
                                   const std::vector<int>& resolutions,
                                   StudyMode mode = StudyMode::Standard);

/// Observed rate between the two finest rows for error norm `which` (0-based
/// index into e1..e5). NaN if fewer than two rows.
double finest_pair_rate(const ConvergenceTable& table, int which = 0);

void print_convergence_table(const ConvergenceTable& table);
void write_convergence_csv(const std::string& path, const ConvergenceTable& table);

}  // namespace oedg
