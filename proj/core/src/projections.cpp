#include "oedg/projections.hpp"

#include <vector>

#include "oedg/parallel.hpp"
#include "oedg/quadrature.hpp"

namespace oedg {

namespace {

int default_quad(int k, int n_quad) {
  if (n_quad == 0) n_quad = k + 2;
  if (n_quad < 1 || n_quad > kMaxQuadraturePoints) {
    throw std::invalid_argument("projection: quadrature point count out of range");
  }
  return n_quad;
}

}  // namespace

DGSolution1D l2_project_1d(std::shared_ptr<const Mesh1D> mesh, int k, int n_comp,
                           const SpaceFn1D& fn, int n_quad) {
  n_quad = default_quad(k, n_quad);
  DGSolution1D sol = make_solution_1d(std::move(mesh), k, n_comp);
  const QuadratureRule& rule = gauss_legendre(n_quad);
  // Basis values at the quadrature nodes.
  std::vector<double> B(static_cast<size_t>(n_quad) * (k + 1));
  for (int q = 0; q < n_quad; ++q)
    for (int m = 0; m <= k; ++m) B[q * (k + 1) + m] = basis_value_ref(m, 0, rule.nodes[q]);

  const Mesh1D& msh = *sol.mesh;
  parallel_for(msh.num_cells(), [&](long long begin, long long end) {
    std::vector<double> state(n_comp);
    for (long long j = begin; j < end; ++j) {
      double xc = msh.center(j), h = msh.width(j);
      double* cell = sol.cell_ptr(static_cast<int>(j));
      for (int q = 0; q < n_quad; ++q) {
        fn(xc + rule.nodes[q] * h, state.data());
        for (int c = 0; c < n_comp; ++c) {
          double wv = rule.weights[q] * state[c];
          for (int m = 0; m <= k; ++m) cell[c * (k + 1) + m] += wv * B[q * (k + 1) + m];
        }
      }
      // Divide by the reference norms: coeff = <u, phi> / ||phi||^2 with the
      // h factors cancelling between numerator and denominator.
      for (int c = 0; c < n_comp; ++c)
        for (int m = 0; m <= k; ++m) cell[c * (k + 1) + m] /= basis_norm2_ref(m);
    }
  });
  return sol;
}

DGSolution1D gauss_radau_project_1d(std::shared_ptr<const Mesh1D> mesh, int k, int n_comp,
                                    const SpaceFn1D& fn, int n_quad) {
  if (k < 1) throw std::invalid_argument("gauss_radau_project_1d: degree must be >= 1");
  DGSolution1D sol = l2_project_1d(std::move(mesh), k, n_comp, fn, n_quad);
  // Keep moments 0..k-1 (identical to the L2 projection in an orthogonal
  // basis) and fix mode k by matching the right-edge value.
  std::vector<double> edge(k + 1);
  for (int m = 0; m <= k; ++m) edge[m] = basis_value_ref(m, 0, 0.5);
  const Mesh1D& msh = *sol.mesh;
  parallel_for(msh.num_cells(), [&](long long begin, long long end) {
    std::vector<double> state(n_comp);
    for (long long j = begin; j < end; ++j) {
      fn(msh.edge(static_cast<int>(j) + 1), state.data());
      double* cell = sol.cell_ptr(static_cast<int>(j));
      for (int c = 0; c < n_comp; ++c) {
        double partial = 0.0;
        for (int m = 0; m < k; ++m) partial += cell[c * (k + 1) + m] * edge[m];
        cell[c * (k + 1) + k] = (state[c] - partial) / edge[k];
      }
    }
  });
  return sol;
}

DGSolution2D l2_project_2d(std::shared_ptr<const Mesh2D> mesh, int k, int n_comp,
                           const SpaceFn2D& fn, int n_quad) {
  n_quad = default_quad(k, n_quad);
  DGSolution2D sol = make_solution_2d(std::move(mesh), k, n_comp);
  const QuadratureRule& rule = gauss_legendre(n_quad);
  const ModeSet2D& set = ModeSet2D::get(k);
  int n_modes = set.size();
  // Tensor basis values and reference norms per 2D mode.
  std::vector<double> B1(static_cast<size_t>(n_quad) * (k + 1));
  for (int q = 0; q < n_quad; ++q)
    for (int m = 0; m <= k; ++m) B1[q * (k + 1) + m] = basis_value_ref(m, 0, rule.nodes[q]);
  std::vector<double> norm2(n_modes);
  for (int m = 0; m < n_modes; ++m)
    norm2[m] = basis_norm2_ref(set.modes[m].a1) * basis_norm2_ref(set.modes[m].a2);

  const Mesh2D& msh = *sol.mesh;
  parallel_for(msh.num_cells(), [&](long long begin, long long end) {
    std::vector<double> state(n_comp);
    for (long long cflat = begin; cflat < end; ++cflat) {
      CellIndex2D ij = msh.unflat(static_cast<int>(cflat));
      double xc = msh.x_center(ij.i), yc = msh.y_center(ij.j);
      double hx = msh.hx(ij.i), hy = msh.hy(ij.j);
      double* cell = sol.cell_ptr(static_cast<int>(cflat));
      for (int qx = 0; qx < n_quad; ++qx) {
        for (int qy = 0; qy < n_quad; ++qy) {
          fn(xc + rule.nodes[qx] * hx, yc + rule.nodes[qy] * hy, state.data());
          double w = rule.weights[qx] * rule.weights[qy];
          for (int c = 0; c < n_comp; ++c) {
            double wv = w * state[c];
            for (int m = 0; m < n_modes; ++m) {
              cell[c * n_modes + m] +=
                  wv * B1[qx * (k + 1) + set.modes[m].a1] * B1[qy * (k + 1) + set.modes[m].a2];
            }
          }
        }
      }
      for (int c = 0; c < n_comp; ++c)
        for (int m = 0; m < n_modes; ++m) cell[c * n_modes + m] /= norm2[m];
    }
  });
  return sol;
}

}  // namespace oedg
