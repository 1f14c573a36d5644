#pragma once

#include <vector>

namespace oedg {

/// Gauss-Legendre rule on the reference cell [-1/2, 1/2].
/// Weights sum to 1, so physical integrals are h * sum(w_q * f(x_j + xi_q * h)).
struct QuadratureRule {
  std::vector<double> nodes;    // ascending, in (-1/2, 1/2)
  std::vector<double> weights;  // positive, sum to 1
  int size() const { return static_cast<int>(nodes.size()); }
};

/// Returns the cached n-point rule. n must be in [1, 16]; an n-point rule
/// integrates polynomials of degree 2n-1 exactly.
const QuadratureRule& gauss_legendre(int n_points);

inline constexpr int kMaxQuadraturePoints = 16;

}  // namespace oedg
