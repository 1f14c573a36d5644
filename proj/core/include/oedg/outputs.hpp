#pragma once

#include <string>
#include <utility>
#include <vector>

#include "oedg/dg_solution.hpp"
#include "oedg/error_norms.hpp"
#include "oedg/reference_fv.hpp"

namespace oedg {

/// Run identification written as a comment line at the top of every CSV.
struct OutputMeta {
  std::string problem;
  int k = 0;
  std::string resolution;  // "256" or "320x320"
  double cfl = 0.0;
};

std::string csv_header_comment(const OutputMeta& meta);

/// Writes content to path via a temp file and an atomic rename, creating
/// parent directories as needed.
void write_file_atomic(const std::string& path, const std::string& content);

/// One row per cell: centroid coordinates, then per-component cell averages.
void write_cell_average_csv(const std::string& path, const OutputMeta& meta,
                            const DGSolution1D& sol);
void write_cell_average_csv(const std::string& path, const OutputMeta& meta,
                            const DGSolution2D& sol);

/// Eight equispaced samples per cell, endpoints included, so cell-interface
/// jumps stay visible in line plots.
void write_point_samples_csv(const std::string& path, const OutputMeta& meta,
                             const DGSolution1D& sol);

/// Dense plotting grid with four interior samples per cell per direction.
void write_contour_grid_csv(const std::string& path, const OutputMeta& meta,
                            const DGSolution2D& sol);

/// Single-row error report. e5 is written as nan for 2D runs.
void write_error_report_csv(const std::string& path, const OutputMeta& meta,
                            const ErrorReport& report);

/// Per-step residue history: columns t, residue.
void write_residue_csv(const std::string& path, const OutputMeta& meta,
                       const std::vector<std::pair<double, double>>& history);

/// Cell averages of a finite-volume reference run.
void write_reference_csv(const std::string& path, const OutputMeta& meta,
                         const ReferenceSolution& ref);

}  // namespace oedg
