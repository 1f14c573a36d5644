#include "oedg/dg_solution.hpp"

#include <cmath>

namespace oedg {

DGSolution1D make_solution_1d(std::shared_ptr<const Mesh1D> mesh, int k, int n_comp) {
  if (!mesh) throw std::invalid_argument("make_solution_1d: null mesh");
  if (k < 0 || k > kMaxBasisDegree) throw std::invalid_argument("make_solution_1d: bad degree");
  if (n_comp < 1) throw std::invalid_argument("make_solution_1d: bad component count");
  DGSolution1D s;
  s.mesh = std::move(mesh);
  s.degree = k;
  s.n_comp = n_comp;
  s.coeff.assign(static_cast<size_t>(s.mesh->num_cells()) * s.cell_stride(), 0.0);
  return s;
}

DGSolution2D make_solution_2d(std::shared_ptr<const Mesh2D> mesh, int k, int n_comp) {
  if (!mesh) throw std::invalid_argument("make_solution_2d: null mesh");
  if (k < 0 || k > kMaxBasisDegree) throw std::invalid_argument("make_solution_2d: bad degree");
  if (n_comp < 1) throw std::invalid_argument("make_solution_2d: bad component count");
  DGSolution2D s;
  s.mesh = std::move(mesh);
  s.degree = k;
  s.n_comp = n_comp;
  s.coeff.assign(static_cast<size_t>(s.mesh->num_cells()) * s.cell_stride(), 0.0);
  return s;
}

double evaluate_1d(const DGSolution1D& sol, int cell, int comp, double xi, int deriv) {
  if (deriv < 0 || deriv > sol.degree) {
    throw std::invalid_argument("evaluate_1d: derivative order outside [0, degree]");
  }
  double h = sol.mesh->width(cell);
  double v = 0.0;
  for (int m = deriv; m <= sol.degree; ++m) {
    v += sol.at(cell, comp, m) * basis_value_ref(m, deriv, xi);
  }
  for (int t = 0; t < deriv; ++t) v /= h;
  return v;
}

void evaluate_state_1d(const DGSolution1D& sol, int cell, double xi, double* out) {
  for (int c = 0; c < sol.n_comp; ++c) out[c] = evaluate_1d(sol, cell, c, xi, 0);
}

double evaluate_2d(const DGSolution2D& sol, int cell, int comp, double xi, double eta, int d1,
                   int d2) {
  if (d1 < 0 || d2 < 0 || d1 > sol.degree || d2 > sol.degree) {
    throw std::invalid_argument("evaluate_2d: derivative order outside [0, degree]");
  }
  const ModeSet2D& set = ModeSet2D::get(sol.degree);
  CellIndex2D ij = sol.mesh->unflat(cell);
  double hx = sol.mesh->hx(ij.i), hy = sol.mesh->hy(ij.j);
  double v = 0.0;
  for (int m = 0; m < set.size(); ++m) {
    const auto& mode = set.modes[m];
    if (mode.a1 < d1 || mode.a2 < d2) continue;
    v += sol.at(cell, comp, m) * basis_value_ref(mode.a1, d1, xi) * basis_value_ref(mode.a2, d2, eta);
  }
  for (int t = 0; t < d1; ++t) v /= hx;
  for (int t = 0; t < d2; ++t) v /= hy;
  return v;
}

void evaluate_state_2d(const DGSolution2D& sol, int cell, double xi, double eta, double* out) {
  for (int c = 0; c < sol.n_comp; ++c) out[c] = evaluate_2d(sol, cell, c, xi, eta, 0, 0);
}

double total_mass_1d(const DGSolution1D& sol, int comp) {
  double mass = 0.0;
  for (int j = 0; j < sol.mesh->num_cells(); ++j) {
    mass += sol.mesh->width(j) * sol.at(j, comp, 0);
  }
  return mass;
}

double total_mass_2d(const DGSolution2D& sol, int comp) {
  double mass = 0.0;
  for (int c = 0; c < sol.mesh->num_cells(); ++c) {
    CellIndex2D ij = sol.mesh->unflat(c);
    mass += sol.mesh->hx(ij.i) * sol.mesh->hy(ij.j) * sol.at(c, comp, 0);
  }
  return mass;
}

bool has_nonfinite(const std::vector<double>& coeff) {
  for (double v : coeff) {
    if (!std::isfinite(v)) return true;
  }
  return false;
}

}  // namespace oedg
