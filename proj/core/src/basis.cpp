#include "oedg/basis.hpp"

#include <array>
#include <mutex>
#include <stdexcept>
#include <string>

namespace oedg {

namespace {

// Monomial coefficients of phi_m in xi, low power first.
// phi_2 = 12 xi^2 - 1; for m >= 3, phi_m = P_m(2 xi) expanded in xi.
constexpr double kCoeff[kMaxBasisDegree + 1][kMaxBasisDegree + 1] = {
    {1.0, 0, 0, 0, 0, 0, 0},
    {0, 1.0, 0, 0, 0, 0, 0},
    {-1.0, 0, 12.0, 0, 0, 0, 0},
    {0, -3.0, 0, 20.0, 0, 0, 0},
    {0.375, 0, -15.0, 0, 70.0, 0, 0},
    {0, 3.75, 0, -70.0, 0, 252.0, 0},
    {-0.3125, 0, 26.25, 0, -315.0, 0, 924.0},
};

// Exact reference norms: 1, 1/12, 4/5, then 1/(2m+1) for the P_m(2 xi) modes.
constexpr double kNorm2[kMaxBasisDegree + 1] = {
    1.0, 1.0 / 12.0, 4.0 / 5.0, 1.0 / 7.0, 1.0 / 9.0, 1.0 / 11.0, 1.0 / 13.0,
};

void check_mode(int mode) {
  if (mode < 0 || mode > kMaxBasisDegree) {
    throw std::invalid_argument("basis: mode " + std::to_string(mode) + " outside [0, " +
                                std::to_string(kMaxBasisDegree) + "]");
  }
}

}  // namespace

double basis_value_ref(int mode, int deriv, double xi) {
  check_mode(mode);
  if (deriv < 0) throw std::invalid_argument("basis: negative derivative order");
  if (deriv > mode) return 0.0;
  // Horner evaluation of the deriv-th derivative of the monomial expansion.
  double v = 0.0;
  for (int p = mode; p >= deriv; --p) {
    double c = kCoeff[mode][p];
    double fall = 1.0;  // p * (p-1) * ... * (p-deriv+1)
    for (int t = 0; t < deriv; ++t) fall *= static_cast<double>(p - t);
    v = v * xi + c * fall;
  }
  return v;
}

double basis_norm2_ref(int mode) {
  check_mode(mode);
  return kNorm2[mode];
}

double eval_basis_1d(int k, int mode, int deriv_order, double xi, double h) {
  if (k < 0 || k > kMaxBasisDegree) {
    throw std::invalid_argument("eval_basis_1d: degree " + std::to_string(k) + " outside [0, " +
                                std::to_string(kMaxBasisDegree) + "]");
  }
  if (mode > k) {
    throw std::invalid_argument("eval_basis_1d: mode " + std::to_string(mode) +
                                " exceeds degree " + std::to_string(k));
  }
  if (deriv_order > k) {
    throw std::invalid_argument("eval_basis_1d: derivative order " + std::to_string(deriv_order) +
                                " exceeds degree " + std::to_string(k));
  }
  if (h <= 0.0) throw std::invalid_argument("eval_basis_1d: nonpositive cell width");
  double v = basis_value_ref(mode, deriv_order, xi);
  for (int t = 0; t < deriv_order; ++t) v /= h;
  return v;
}

int ModeSet2D::index(int a1, int a2) const {
  if (a1 < 0 || a2 < 0 || a1 + a2 > degree) {
    throw std::invalid_argument("ModeSet2D::index: mode (" + std::to_string(a1) + "," +
                                std::to_string(a2) + ") outside total degree " +
                                std::to_string(degree));
  }
  int d = a1 + a2;
  return d * (d + 1) / 2 + a1;
}

const ModeSet2D& ModeSet2D::get(int k) {
  if (k < 0 || k > kMaxBasisDegree) {
    throw std::invalid_argument("ModeSet2D: degree " + std::to_string(k) + " outside [0, " +
                                std::to_string(kMaxBasisDegree) + "]");
  }
  static std::array<ModeSet2D, kMaxBasisDegree + 1> cache;
  static std::once_flag once;
  std::call_once(once, [] {
    for (int deg = 0; deg <= kMaxBasisDegree; ++deg) {
      ModeSet2D set;
      set.degree = deg;
      for (int d = 0; d <= deg; ++d)
        for (int a1 = 0; a1 <= d; ++a1) set.modes.push_back({a1, d - a1});
      cache[deg] = std::move(set);
    }
  });
  return cache[k];
}

double eval_basis_2d(int k, int a1, int a2, int d1, int d2, double xi, double eta, double hx,
                     double hy) {
  if (k < 0 || k > kMaxBasisDegree) {
    throw std::invalid_argument("eval_basis_2d: degree out of range");
  }
  if (a1 < 0 || a2 < 0 || a1 + a2 > k) {
    throw std::invalid_argument("eval_basis_2d: mode (" + std::to_string(a1) + "," +
                                std::to_string(a2) + ") outside total degree " +
                                std::to_string(k));
  }
  if (d1 > k || d2 > k || d1 < 0 || d2 < 0) {
    throw std::invalid_argument("eval_basis_2d: derivative order out of range");
  }
  if (hx <= 0.0 || hy <= 0.0) throw std::invalid_argument("eval_basis_2d: nonpositive cell size");
  double vx = basis_value_ref(a1, d1, xi);
  double vy = basis_value_ref(a2, d2, eta);
  for (int t = 0; t < d1; ++t) vx /= hx;
  for (int t = 0; t < d2; ++t) vy /= hy;
  return vx * vy;
}

}  // namespace oedg
