#pragma once

#include <functional>
#include <string>
#include <vector>

#include "oedg/boundary.hpp"
#include "oedg/models.hpp"
#include "oedg/projections.hpp"

namespace oedg {

/// Cell averages of a fine-mesh 1D run, used as a plotting/comparison
/// reference for problems without a closed-form solution.
struct ReferenceSolution {
  double x_lo = 0.0, x_hi = 1.0;
  int n_cells = 0;
  int n_comp = 1;
  double t_final = 0.0;
  std::vector<double> values;  // [cell * n_comp + comp]

  double h() const { return (x_hi - x_lo) / n_cells; }
  double x_center(int j) const { return x_lo + (j + 0.5) * h(); }
  double at(int j, int c) const { return values[static_cast<size_t>(j) * n_comp + c]; }
};

/// First-order finite-volume solve with the local Lax-Friedrichs flux.
/// Initial cell averages come from per-cell Gauss quadrature of u0. The step
/// size is cfl * h / (global max wave speed), clipped to land on t_final.
ReferenceSolution fv_reference_1d(const Model& model, const BCSet1D& bcs, double x_lo, double x_hi,
                                  int n_cells, const SpaceFn1D& u0, double t_final,
                                  double cfl = 0.45);

/// Binary cache. load returns false when the file is missing/corrupt or its
/// shape does not match the expectation recorded in it.
bool load_reference(const std::string& path, ReferenceSolution& out);
void save_reference(const std::string& path, const ReferenceSolution& ref);

/// Loads <cache_dir>/<key>.ref or generates and saves it. The key must
/// uniquely encode the generating recipe (problem, resolution, time).
ReferenceSolution cached_reference(const std::string& cache_dir, const std::string& key,
                                   const std::function<ReferenceSolution()>& generate);

}  // namespace oedg
