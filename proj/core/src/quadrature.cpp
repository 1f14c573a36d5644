#include "oedg/quadrature.hpp"

#include <array>
#include <cmath>
#include <mutex>
#include <stdexcept>
#include <string>

namespace oedg {

namespace {

// Evaluates the standard Legendre polynomial P_n and its derivative at x
// on [-1, 1] via the three-term recurrence.
void legendre(int n, double x, double& p, double& dp) {
  double p0 = 1.0, p1 = x;
  if (n == 0) {
    p = 1.0;
    dp = 0.0;
    return;
  }
  for (int j = 2; j <= n; ++j) {
    double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
    p0 = p1;
    p1 = p2;
  }
  p = p1;
  dp = n * (x * p1 - p0) / (x * x - 1.0);
}

QuadratureRule build_rule(int n) {
  QuadratureRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    // Newton iteration from the Chebyshev-like initial guess.
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double p = 0.0, dp = 1.0;
    for (int it = 0; it < 100; ++it) {
      legendre(n, x, p, dp);
      double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    legendre(n, x, p, dp);
    double w = 2.0 / ((1.0 - x * x) * dp * dp);
    // Map [-1, 1] -> [-1/2, 1/2]; total weight 2 -> 1. The cosine guess
    // enumerates roots in descending order.
    rule.nodes[n - 1 - i] = 0.5 * x;
    rule.weights[n - 1 - i] = 0.5 * w;
  }
  return rule;
}

}  // namespace

const QuadratureRule& gauss_legendre(int n_points) {
  if (n_points < 1 || n_points > kMaxQuadraturePoints) {
    throw std::invalid_argument("gauss_legendre: point count " + std::to_string(n_points) +
                                " outside [1, " + std::to_string(kMaxQuadraturePoints) + "]");
  }
  static std::array<QuadratureRule, kMaxQuadraturePoints> cache;
  static std::once_flag once;
  std::call_once(once, [] {
    for (int n = 1; n <= kMaxQuadraturePoints; ++n) cache[n - 1] = build_rule(n);
  });
  return cache[n_points - 1];
}

}  // namespace oedg
