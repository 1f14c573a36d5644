#pragma once

#include <memory>
#include <stdexcept>
#include <vector>

#include "oedg/basis.hpp"
#include "oedg/mesh.hpp"

namespace oedg {

/// Raised when a run must stop (inadmissible state, non-finite data, ...).
/// The message carries the diagnostic context (cell, position, time).
struct SolverAbort : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Modal coefficients of a piecewise-polynomial vector function on a 1D mesh.
/// Layout: coeff[(cell * n_comp + comp) * (k+1) + mode]. Mode 0 carries the
/// cell average (the higher modes integrate to zero over the cell).
struct DGSolution1D {
  std::shared_ptr<const Mesh1D> mesh;
  int degree = 0;
  int n_comp = 1;
  std::vector<double> coeff;

  int n_modes() const { return degree + 1; }
  int cell_stride() const { return n_comp * n_modes(); }
  double* cell_ptr(int j) { return coeff.data() + static_cast<size_t>(j) * cell_stride(); }
  const double* cell_ptr(int j) const {
    return coeff.data() + static_cast<size_t>(j) * cell_stride();
  }
  double& at(int cell, int comp, int mode) {
    return coeff[(static_cast<size_t>(cell) * n_comp + comp) * n_modes() + mode];
  }
  double at(int cell, int comp, int mode) const {
    return coeff[(static_cast<size_t>(cell) * n_comp + comp) * n_modes() + mode];
  }
  double cell_average(int cell, int comp) const { return at(cell, comp, 0); }
};

DGSolution1D make_solution_1d(std::shared_ptr<const Mesh1D> mesh, int k, int n_comp);

/// 2D counterpart on a Cartesian mesh; modes follow ModeSet2D::get(degree).
/// Layout: coeff[(cell * n_comp + comp) * n_modes + mode], cell = j * nx + i.
struct DGSolution2D {
  std::shared_ptr<const Mesh2D> mesh;
  int degree = 0;
  int n_comp = 1;
  std::vector<double> coeff;

  int n_modes() const { return (degree + 1) * (degree + 2) / 2; }
  int cell_stride() const { return n_comp * n_modes(); }
  double* cell_ptr(int c) { return coeff.data() + static_cast<size_t>(c) * cell_stride(); }
  const double* cell_ptr(int c) const {
    return coeff.data() + static_cast<size_t>(c) * cell_stride();
  }
  double& at(int cell, int comp, int mode) {
    return coeff[(static_cast<size_t>(cell) * n_comp + comp) * n_modes() + mode];
  }
  double at(int cell, int comp, int mode) const {
    return coeff[(static_cast<size_t>(cell) * n_comp + comp) * n_modes() + mode];
  }
  double cell_average(int cell, int comp) const { return at(cell, comp, 0); }
};

DGSolution2D make_solution_2d(std::shared_ptr<const Mesh2D> mesh, int k, int n_comp);

/// Pointwise evaluation of the solution (or a derivative) inside a cell at
/// local coordinate xi in [-1/2, 1/2]. Derivative orders above the degree are
/// rejected.
double evaluate_1d(const DGSolution1D& sol, int cell, int comp, double xi, int deriv = 0);
void evaluate_state_1d(const DGSolution1D& sol, int cell, double xi, double* out);

double evaluate_2d(const DGSolution2D& sol, int cell, int comp, double xi, double eta, int d1 = 0,
                   int d2 = 0);
void evaluate_state_2d(const DGSolution2D& sol, int cell, double xi, double eta, double* out);

/// Integral of component comp over the whole domain (sum of h_j * mode0).
double total_mass_1d(const DGSolution1D& sol, int comp);
double total_mass_2d(const DGSolution2D& sol, int comp);

bool has_nonfinite(const std::vector<double>& coeff);

}  // namespace oedg
