#pragma once

#include <functional>

#include "oedg/dg_solution.hpp"

namespace oedg {

/// Exact solutions evaluated at a fixed time (state vector out).
using ExactFn1D = std::function<void(double x, double* state)>;
using ExactFn2D = std::function<void(double x, double y, double* state)>;

/// Discretization error of one solution component in five norms.
///  e1  L1        cell-by-cell Gauss quadrature of |u - u_h|
///  e2  L2        same quadrature of (u - u_h)^2
///  e3  Linf      max over quadrature nodes plus cell endpoints
///  e4  avg-l2    sqrt(measure * sum over cells of |cell-average error|^2)
///  e5  point-l2  sqrt(h * sum_j |u(x_{j+1/2}) - u_h(x_{j+1/2}^-)|^2),
///                1D only (downwind edge for a rightward wind); NaN in 2D.
struct ErrorReport {
  double e1 = 0.0, e2 = 0.0, e3 = 0.0, e4 = 0.0, e5 = 0.0;
};

/// n_quad == 0 selects k+3 Gauss points per cell (per direction in 2D).
ErrorReport error_norms_1d(const DGSolution1D& sol, const ExactFn1D& exact, int comp,
                           int n_quad = 0, bool with_downwind_points = true);

ErrorReport error_norms_2d(const DGSolution2D& sol, const ExactFn2D& exact, int comp,
                           int n_quad = 0);

}  // namespace oedg
