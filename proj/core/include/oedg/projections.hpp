#pragma once

#include <functional>

#include "oedg/dg_solution.hpp"

namespace oedg {

/// Pointwise state functions used for initialization and exact solutions.
using SpaceFn1D = std::function<void(double x, double* state)>;
using SpaceFn2D = std::function<void(double x, double y, double* state)>;

/// L2 projection onto the degree-k space, cell by cell via Gauss quadrature
/// (n_quad == 0 selects the k+2 point default). Exact for polynomial data of
/// degree <= 2*n_quad - 1 - k.
DGSolution1D l2_project_1d(std::shared_ptr<const Mesh1D> mesh, int k, int n_comp,
                           const SpaceFn1D& fn, int n_quad = 0);

/// Gauss-Radau-type projection: moments against polynomials of degree < k are
/// matched and the value at each cell's right edge is interpolated. Used for
/// superconvergent initialization.
DGSolution1D gauss_radau_project_1d(std::shared_ptr<const Mesh1D> mesh, int k, int n_comp,
                                    const SpaceFn1D& fn, int n_quad = 0);

DGSolution2D l2_project_2d(std::shared_ptr<const Mesh2D> mesh, int k, int n_comp,
                           const SpaceFn2D& fn, int n_quad = 0);

}  // namespace oedg
