#include "oedg/error_norms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "oedg/parallel.hpp"
#include "oedg/quadrature.hpp"

namespace oedg {

namespace {

int pick_quad(int k, int n_quad) {
  int n = n_quad > 0 ? n_quad : k + 3;
  if (n > kMaxQuadraturePoints) n = kMaxQuadraturePoints;
  return n;
}

}  // namespace

ErrorReport error_norms_1d(const DGSolution1D& sol, const ExactFn1D& exact, int comp, int n_quad,
                           bool with_downwind_points) {
  if (!exact) throw std::invalid_argument("error_norms_1d: exact function required");
  if (comp < 0 || comp >= sol.n_comp) throw std::invalid_argument("error_norms_1d: bad component");
  const Mesh1D& mesh = *sol.mesh;
  const int n = mesh.num_cells();
  const int k = sol.degree;
  const int nq = pick_quad(k, n_quad);
  const QuadratureRule& rule = gauss_legendre(nq);
  const int nc = sol.n_comp;

  // Quadrature-node errors, accumulated per cell: L1, L2, cell-average error.
  double sum1 = ordered_sum(n, [&](long long b, long long e) {
    std::vector<double> st(nc);
    double acc = 0.0;
    for (long long j = b; j < e; ++j) {
      const double xc = mesh.center(static_cast<int>(j));
      const double h = mesh.width(static_cast<int>(j));
      double cell = 0.0;
      for (int q = 0; q < nq; ++q) {
        exact(xc + rule.nodes[q] * h, st.data());
        const double err = st[comp] - evaluate_1d(sol, static_cast<int>(j), comp, rule.nodes[q]);
        cell += rule.weights[q] * std::abs(err);
      }
      acc += h * cell;
    }
    return acc;
  });

  double sum2 = ordered_sum(n, [&](long long b, long long e) {
    std::vector<double> st(nc);
    double acc = 0.0;
    for (long long j = b; j < e; ++j) {
      const double xc = mesh.center(static_cast<int>(j));
      const double h = mesh.width(static_cast<int>(j));
      double cell = 0.0;
      for (int q = 0; q < nq; ++q) {
        exact(xc + rule.nodes[q] * h, st.data());
        const double err = st[comp] - evaluate_1d(sol, static_cast<int>(j), comp, rule.nodes[q]);
        cell += rule.weights[q] * err * err;
      }
      acc += h * cell;
    }
    return acc;
  });

  double emax = chunked_max(n, [&](long long b, long long e) {
    std::vector<double> st(nc);
    double m = 0.0;
    for (long long j = b; j < e; ++j) {
      const double xc = mesh.center(static_cast<int>(j));
      const double h = mesh.width(static_cast<int>(j));
      auto sample = [&](double xi) {
        exact(xc + xi * h, st.data());
        const double err = st[comp] - evaluate_1d(sol, static_cast<int>(j), comp, xi);
        m = std::max(m, std::abs(err));
      };
      for (int q = 0; q < nq; ++q) sample(rule.nodes[q]);
      sample(-0.5);
      sample(0.5);
    }
    return m;
  });

  // Cell-average error: exact average via the same quadrature (weights sum
  // to 1, so the weighted node sum is the cell mean).
  double sum4 = ordered_sum(n, [&](long long b, long long e) {
    std::vector<double> st(nc);
    double acc = 0.0;
    for (long long j = b; j < e; ++j) {
      const double xc = mesh.center(static_cast<int>(j));
      const double h = mesh.width(static_cast<int>(j));
      double mean = 0.0;
      for (int q = 0; q < nq; ++q) {
        exact(xc + rule.nodes[q] * h, st.data());
        mean += rule.weights[q] * st[comp];
      }
      const double err = mean - sol.cell_average(static_cast<int>(j), comp);
      acc += h * err * err;
    }
    return acc;
  });

  double sum5 = 0.0;
  if (with_downwind_points) {
    sum5 = ordered_sum(n, [&](long long b, long long e) {
      std::vector<double> st(nc);
      double acc = 0.0;
      for (long long j = b; j < e; ++j) {
        exact(mesh.edge(static_cast<int>(j) + 1), st.data());
        const double err = st[comp] - evaluate_1d(sol, static_cast<int>(j), comp, 0.5);
        acc += mesh.width(static_cast<int>(j)) * err * err;
      }
      return acc;
    });
  }

  ErrorReport r;
  r.e1 = sum1;
  r.e2 = std::sqrt(sum2);
  r.e3 = emax;
  r.e4 = std::sqrt(sum4);
  r.e5 = with_downwind_points ? std::sqrt(sum5) : std::numeric_limits<double>::quiet_NaN();
  return r;
}

ErrorReport error_norms_2d(const DGSolution2D& sol, const ExactFn2D& exact, int comp, int n_quad) {
  if (!exact) throw std::invalid_argument("error_norms_2d: exact function required");
  if (comp < 0 || comp >= sol.n_comp) throw std::invalid_argument("error_norms_2d: bad component");
  const Mesh2D& mesh = *sol.mesh;
  const int n = mesh.num_cells();
  const int k = sol.degree;
  const int nq = pick_quad(k, n_quad);
  const QuadratureRule& rule = gauss_legendre(nq);
  const int nc = sol.n_comp;

  double sum1 = ordered_sum(n, [&](long long b, long long e) {
    std::vector<double> st(nc);
    double acc = 0.0;
    for (long long c = b; c < e; ++c) {
      const auto ij = mesh.unflat(static_cast<int>(c));
      const double xc = mesh.x_center(ij.i), yc = mesh.y_center(ij.j);
      const double hx = mesh.hx(ij.i), hy = mesh.hy(ij.j);
      double cell = 0.0;
      for (int qx = 0; qx < nq; ++qx)
        for (int qy = 0; qy < nq; ++qy) {
          exact(xc + rule.nodes[qx] * hx, yc + rule.nodes[qy] * hy, st.data());
          const double err = st[comp] - evaluate_2d(sol, static_cast<int>(c), comp,
                                                    rule.nodes[qx], rule.nodes[qy]);
          cell += rule.weights[qx] * rule.weights[qy] * std::abs(err);
        }
      acc += hx * hy * cell;
    }
    return acc;
  });

  double sum2 = ordered_sum(n, [&](long long b, long long e) {
    std::vector<double> st(nc);
    double acc = 0.0;
    for (long long c = b; c < e; ++c) {
      const auto ij = mesh.unflat(static_cast<int>(c));
      const double xc = mesh.x_center(ij.i), yc = mesh.y_center(ij.j);
      const double hx = mesh.hx(ij.i), hy = mesh.hy(ij.j);
      double cell = 0.0;
      for (int qx = 0; qx < nq; ++qx)
        for (int qy = 0; qy < nq; ++qy) {
          exact(xc + rule.nodes[qx] * hx, yc + rule.nodes[qy] * hy, st.data());
          const double err = st[comp] - evaluate_2d(sol, static_cast<int>(c), comp,
                                                    rule.nodes[qx], rule.nodes[qy]);
          cell += rule.weights[qx] * rule.weights[qy] * err * err;
        }
      acc += hx * hy * cell;
    }
    return acc;
  });

  double emax = chunked_max(n, [&](long long b, long long e) {
    std::vector<double> st(nc);
    double m = 0.0;
    // Endpoint coverage: tensor grid of quadrature nodes plus +-1/2 per axis.
    std::vector<double> pts(rule.nodes);
    pts.push_back(-0.5);
    pts.push_back(0.5);
    for (long long c = b; c < e; ++c) {
      const auto ij = mesh.unflat(static_cast<int>(c));
      const double xc = mesh.x_center(ij.i), yc = mesh.y_center(ij.j);
      const double hx = mesh.hx(ij.i), hy = mesh.hy(ij.j);
      for (double xi : pts)
        for (double eta : pts) {
          exact(xc + xi * hx, yc + eta * hy, st.data());
          const double err = st[comp] - evaluate_2d(sol, static_cast<int>(c), comp, xi, eta);
          m = std::max(m, std::abs(err));
        }
    }
    return m;
  });

  double sum4 = ordered_sum(n, [&](long long b, long long e) {
    std::vector<double> st(nc);
    double acc = 0.0;
    for (long long c = b; c < e; ++c) {
      const auto ij = mesh.unflat(static_cast<int>(c));
      const double xc = mesh.x_center(ij.i), yc = mesh.y_center(ij.j);
      const double hx = mesh.hx(ij.i), hy = mesh.hy(ij.j);
      double mean = 0.0;
      for (int qx = 0; qx < nq; ++qx)
        for (int qy = 0; qy < nq; ++qy) {
          exact(xc + rule.nodes[qx] * hx, yc + rule.nodes[qy] * hy, st.data());
          mean += rule.weights[qx] * rule.weights[qy] * st[comp];
        }
      const double err = mean - sol.cell_average(static_cast<int>(c), comp);
      acc += hx * hy * err * err;
    }
    return acc;
  });

  ErrorReport r;
  r.e1 = sum1;
  r.e2 = std::sqrt(sum2);
  r.e3 = emax;
  r.e4 = std::sqrt(sum4);
  r.e5 = std::numeric_limits<double>::quiet_NaN();
  return r;
}

}  // namespace oedg
