#pragma once

#include <vector>

namespace oedg {

/// Modal basis on the reference cell [-1/2, 1/2] in the local coordinate
/// xi = (x - x_center) / h. The modes are orthogonal (unnormalized) Legendre
/// polynomials:
///   phi_0 = 1,  phi_1 = xi,  phi_2 = 12 xi^2 - 1,
///   phi_m = P_m(2 xi) for m >= 3 (P_m the standard Legendre polynomial).
/// Physical derivatives pick up one factor 1/h per order.
inline constexpr int kMaxBasisDegree = 6;

/// d^deriv phi_mode / dxi^deriv evaluated at xi (reference derivative).
double basis_value_ref(int mode, int deriv, double xi);

/// Squared L2 norm of phi_mode over the reference cell; the physical norm on
/// a cell of width h is h * basis_norm2_ref(mode).
double basis_norm2_ref(int mode);

/// Physical evaluation d^deriv phi_mode / dx^deriv at x = x_center + xi * h
/// for a degree-k space. Rejects mode > k, deriv_order > k, and k out of
/// [0, kMaxBasisDegree].
double eval_basis_1d(int k, int mode, int deriv_order, double xi, double h);

/// Tensor-product modes of total degree <= k on a reference rectangle,
/// enumerated in graded lexicographic order on (|alpha|, alpha_1):
/// (0,0), (0,1), (1,0), (0,2), (1,1), (2,0), ...
struct ModeSet2D {
  struct Mode {
    int a1, a2;  // degrees in xi and eta
  };
  int degree = 0;
  std::vector<Mode> modes;

  int size() const { return static_cast<int>(modes.size()); }
  /// Index of (a1, a2); rejects pairs outside the set.
  int index(int a1, int a2) const;
  static const ModeSet2D& get(int k);
};

/// Physical mixed derivative of the tensor mode phi_{a1}(xi) * phi_{a2}(eta):
/// d^{d1+d2} / dx^{d1} dy^{d2}, with 1/hx^{d1} * 1/hy^{d2} factors.
/// Rejects a1 + a2 > k and derivative orders > k.
double eval_basis_2d(int k, int a1, int a2, int d1, int d2, double xi, double eta, double hx,
                     double hy);

}  // namespace oedg
