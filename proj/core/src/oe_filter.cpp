#include "oedg/oe_filter.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>
#include <unordered_set>

#include "abort_collector.hpp"
#include "oedg/parallel.hpp"
#include "oedg/quadrature.hpp"
#include "wall_faces.hpp"

namespace oedg {

using internal::AbortCollector;

namespace {

constexpr int kMaxComp = 4;
// A component is treated as globally constant when its sampled deviation is
// at this level relative to max(1, |avg|); avoids 0/0 on machine-constant data.
constexpr double kConstGuard = 1e-14;

double factorial(int m) {
  double f = 1.0;
  for (int i = 2; i <= m; ++i) f *= i;
  return f;
}

// Deviation-norm sample points: (k+2)-point Gauss nodes plus both endpoints.
std::vector<double> norm_sample_points(int k) {
  const QuadratureRule& g = gauss_legendre(k + 2);
  std::vector<double> s;
  s.reserve(g.size() + 2);
  s.push_back(-0.5);
  s.insert(s.end(), g.nodes.begin(), g.nodes.end());
  s.push_back(0.5);
  return s;
}

// Sign the mirrored ghost applies to component c at a reflective face.
double mirror_sign(const Model& m, int c, bool x_normal) {
  if (!m.is_euler()) return 1.0;
  if (m.dim == 1) return c == 1 ? -1.0 : 1.0;
  if (x_normal) return c == 1 ? -1.0 : 1.0;
  return c == 2 ? -1.0 : 1.0;
}

bool component_constant(const DeviationStats& d) {
  return d.norm <= kConstGuard * std::max(1.0, std::abs(d.avg));
}

}  // namespace

OEFilter1D::OEFilter1D(std::shared_ptr<const Mesh1D> mesh, Model model, BCSet1D bcs, int k)
    : mesh_(std::move(mesh)), model_(model), bcs_(bcs), k_(k) {
  if (!mesh_) throw std::invalid_argument("OEFilter1D: null mesh");
  if (model_.dim != 1) throw std::invalid_argument("OEFilter1D: model is not one-dimensional");
  if (k_ < 1 || k_ > kMaxBasisDegree) {
    throw std::invalid_argument("OEFilter1D: filter requires 1 <= degree <= 6 (degree 0 has no modes to damp)");
  }
  if (model_.n_comp > kMaxComp) throw std::invalid_argument("OEFilter1D: too many components");
  bool bc_l = bcs_.left.kind == BC1D::Kind::Periodic;
  bool bc_r = bcs_.right.kind == BC1D::Kind::Periodic;
  if (bc_l != bc_r) throw std::invalid_argument("OEFilter1D: periodic requires both ends periodic");
  if (bc_l != mesh_->periodic()) {
    throw std::invalid_argument("OEFilter1D: boundary conditions disagree with the mesh kinds");
  }
  for (const BC1D* bc : {&bcs_.left, &bcs_.right}) {
    if (bc->kind == BC1D::Kind::Reflective && !model_.is_euler()) {
      throw std::invalid_argument("OEFilter1D: reflective walls require the Euler model");
    }
    if (bc->kind == BC1D::Kind::Inflow && !bc->inflow) {
      throw std::invalid_argument("OEFilter1D: inflow boundary lacks a state function");
    }
  }

  h_global_ = mesh_->max_width();
  sample_xi_ = norm_sample_points(k_);
  int ns = static_cast<int>(sample_xi_.size());
  sample_basis_.resize(static_cast<size_t>(ns) * (k_ + 1));
  for (int s = 0; s < ns; ++s) {
    for (int m = 0; m <= k_; ++m) {
      sample_basis_[s * (k_ + 1) + m] = basis_value_ref(m, 0, sample_xi_[s]);
    }
  }
  edge_lo_.resize(static_cast<size_t>(k_ + 1) * (k_ + 1));
  edge_hi_.resize(edge_lo_.size());
  for (int d = 0; d <= k_; ++d) {
    for (int m = 0; m <= k_; ++m) {
      edge_lo_[d * (k_ + 1) + m] = basis_value_ref(m, d, -0.5);
      edge_hi_[d * (k_ + 1) + m] = basis_value_ref(m, d, 0.5);
    }
  }
  pre_.resize(k_ + 1);
  for (int m = 0; m <= k_; ++m) {
    pre_[m] = (2.0 * m + 1.0) / ((2.0 * k_ - 1.0) * factorial(m));
  }
}

DeviationStats OEFilter1D::deviation(const DGSolution1D& sol, int comp) const {
  if (sol.degree != k_ || sol.mesh.get() != mesh_.get()) {
    throw std::invalid_argument("OEFilter1D::deviation: solution shape mismatch");
  }
  if (comp < 0 || comp >= sol.n_comp) throw std::invalid_argument("deviation: bad component");
  int n = mesh_->num_cells();
  int nm = k_ + 1;
  double length = mesh_->x_hi() - mesh_->x_lo();

  DeviationStats st;
  st.avg = ordered_sum(n, [&](long long begin, long long end) {
    double acc = 0.0;
    for (long long j = begin; j < end; ++j) {
      acc += mesh_->width(static_cast<int>(j)) * sol.at(static_cast<int>(j), comp, 0);
    }
    return acc;
  }) / length;

  int ns = static_cast<int>(sample_xi_.size());
  double avg = st.avg;
  st.norm = chunked_max(n, [&](long long begin, long long end) {
    double mx = 0.0;
    for (long long j = begin; j < end; ++j) {
      const double* cm = sol.cell_ptr(static_cast<int>(j)) + static_cast<size_t>(comp) * nm;
      for (int s = 0; s < ns; ++s) {
        const double* bs = &sample_basis_[static_cast<size_t>(s) * nm];
        double v = 0.0;
        for (int m = 0; m < nm; ++m) v += cm[m] * bs[m];
        mx = std::max(mx, std::abs(v - avg));
      }
    }
    return mx;
  });
  return st;
}

void OEFilter1D::interface_jumps(const DGSolution1D& sol, double t,
                                 std::vector<double>& jumps) const {
  int n = mesh_->num_cells();
  int nc = sol.n_comp;
  int nm = k_ + 1;
  bool periodic = bcs_.periodic();
  int n_faces = periodic ? n : n + 1;
  jumps.assign(static_cast<size_t>(n_faces) * nc * nm, 0.0);

  parallel_for(n_faces, [&](long long begin, long long end) {
    double gval[kMaxComp];
    for (long long f = begin; f < end; ++f) {
      double* out = &jumps[static_cast<size_t>(f) * nc * nm];
      int jl, jr;
      if (periodic) {
        jl = static_cast<int>((f + n - 1) % n);
        jr = static_cast<int>(f);
      } else {
        jl = static_cast<int>(f) - 1;
        jr = f == n ? -1 : static_cast<int>(f);
      }

      if (jl >= 0 && jr >= 0) {
        const double* cl = sol.cell_ptr(jl);
        const double* cr = sol.cell_ptr(jr);
        double inv_l = 1.0, inv_r = 1.0;
        for (int m = 0; m <= k_; ++m) {
          const double* ehi = &edge_hi_[static_cast<size_t>(m) * nm];
          const double* elo = &edge_lo_[static_cast<size_t>(m) * nm];
          for (int c = 0; c < nc; ++c) {
            double dl = 0.0, dr = 0.0;
            for (int i = 0; i <= k_; ++i) {
              dl += cl[c * nm + i] * ehi[i];
              dr += cr[c * nm + i] * elo[i];
            }
            out[c * nm + m] = std::abs(dr * inv_r - dl * inv_l);
          }
          inv_l /= mesh_->width(jl);
          inv_r /= mesh_->width(jr);
        }
        continue;
      }

      // Physical boundary. The interior cell and its trace table:
      bool left_boundary = jl < 0;
      int jc = left_boundary ? jr : jl;
      const BC1D& bc = left_boundary ? bcs_.left : bcs_.right;
      const std::vector<double>& etab = left_boundary ? edge_lo_ : edge_hi_;
      const double* cc = sol.cell_ptr(jc);
      double h = mesh_->width(jc);
      switch (bc.kind) {
        case BC1D::Kind::Outflow:
          break;  // smooth extension, all jumps zero
        case BC1D::Kind::Reflective: {
          // Mirrored polynomial: ghost d-th derivative = sign * (-1)^d * interior.
          double inv_h = 1.0;
          for (int m = 0; m <= k_; ++m) {
            const double* em = &etab[static_cast<size_t>(m) * nm];
            double parity = (m % 2 == 0) ? 1.0 : -1.0;
            for (int c = 0; c < nc; ++c) {
              double d = 0.0;
              for (int i = 0; i <= k_; ++i) d += cc[c * nm + i] * em[i];
              d *= inv_h;
              out[c * nm + m] = std::abs((mirror_sign(model_, c, true) * parity - 1.0) * d);
            }
            inv_h /= h;
          }
          break;
        }
        case BC1D::Kind::Inflow: {
          // Prescribed state: value jump only; derivatives extend smoothly.
          double xb = left_boundary ? mesh_->x_lo() : mesh_->x_hi();
          bc.inflow(xb, t, gval);
          const double* e0 = etab.data();
          for (int c = 0; c < nc; ++c) {
            double v = 0.0;
            for (int i = 0; i <= k_; ++i) v += cc[c * nm + i] * e0[i];
            out[c * nm + 0] = std::abs(v - gval[c]);
          }
          break;
        }
        default:
          break;
      }
    }
  });
}

void OEFilter1D::compute_profile(const DGSolution1D& sol, double t, DampingVariant variant,
                                 std::vector<double>& sigma, std::vector<double>& beta) const {
  if (sol.degree != k_ || sol.n_comp != model_.n_comp || sol.mesh.get() != mesh_.get()) {
    throw std::invalid_argument("OEFilter1D: solution shape mismatch");
  }
  int n = mesh_->num_cells();
  int nc = sol.n_comp;
  int nm = k_ + 1;

  DeviationStats dev[kMaxComp];
  bool constant[kMaxComp] = {};
  if (variant == DampingVariant::ScaleInvariant) {
    for (int c = 0; c < nc; ++c) {
      dev[c] = deviation(sol, c);
      constant[c] = component_constant(dev[c]);
    }
  }

  std::vector<double> jumps;
  interface_jumps(sol, t, jumps);

  sigma.assign(static_cast<size_t>(n) * nm, 0.0);
  beta.assign(n, 0.0);
  bool periodic = bcs_.periodic();

  AbortCollector abort;
  parallel_for(n, [&](long long begin, long long end) {
    double ubar[kMaxComp];
    for (long long j = begin; j < end; ++j) {
      for (int c = 0; c < nc; ++c) ubar[c] = sol.at(static_cast<int>(j), c, 0);
      try {
        beta[j] = max_wave_speed_x(model_, ubar);
      } catch (const std::exception& e) {
        abort.record(internal::cell_context_1d(static_cast<int>(j),
                                               mesh_->center(static_cast<int>(j)), t,
                                               "filter wave speed") +
                     ": " + e.what());
        return;
      }
      int fl = static_cast<int>(j);
      int fr = periodic ? static_cast<int>((j + 1) % n) : static_cast<int>(j) + 1;
      const double* JL = &jumps[static_cast<size_t>(fl) * nc * nm];
      const double* JR = &jumps[static_cast<size_t>(fr) * nc * nm];
      double h = mesh_->width(static_cast<int>(j));
      double hpow = 1.0, hgpow = 1.0;
      for (int m = 0; m <= k_; ++m) {
        double smax = 0.0;
        for (int c = 0; c < nc; ++c) {
          double jl = JL[c * nm + m], jr = JR[c * nm + m];
          double s;
          if (variant == DampingVariant::ScaleInvariant) {
            if (constant[c]) continue;
            s = pre_[m] * hpow * (jl + jr) / (2.0 * dev[c].norm);
          } else {
            s = 2.0 * pre_[m] * hgpow * std::sqrt(jl * jl + jr * jr);
          }
          smax = std::max(smax, s);
        }
        sigma[j * nm + m] = smax;
        hpow *= h;
        hgpow *= h_global_;
      }
    }
  });
  abort.rethrow_if();
}

void OEFilter1D::apply(DGSolution1D& sol, double tau, double t, DampingVariant variant) const {
  if (!(tau > 0.0)) throw std::invalid_argument("OEFilter1D::apply: step must be positive");
  std::vector<double> sigma, beta;
  compute_profile(sol, t, variant, sigma, beta);

  int n = mesh_->num_cells();
  int nc = sol.n_comp;
  int nm = k_ + 1;
  parallel_for(n, [&](long long begin, long long end) {
    for (long long j = begin; j < end; ++j) {
      double scale = beta[j] * tau / mesh_->width(static_cast<int>(j));
      double cum = sigma[j * nm + 0];
      double* cell = sol.cell_ptr(static_cast<int>(j));
      for (int i = 1; i <= k_; ++i) {
        cum += sigma[j * nm + i];
        double fac = std::exp(-scale * cum);
        for (int c = 0; c < nc; ++c) cell[c * nm + i] *= fac;
      }
    }
  });
}

OEFilter2D::OEFilter2D(std::shared_ptr<const Mesh2D> mesh, Model model, BCSet2D bcs, int k)
    : mesh_(std::move(mesh)), model_(model), bcs_(bcs), k_(k) {
  if (!mesh_) throw std::invalid_argument("OEFilter2D: null mesh");
  if (model_.dim != 2) throw std::invalid_argument("OEFilter2D: model is not two-dimensional");
  if (k_ < 1 || k_ > kMaxBasisDegree) {
    throw std::invalid_argument("OEFilter2D: filter requires 1 <= degree <= 6 (degree 0 has no modes to damp)");
  }
  if (model_.n_comp > kMaxComp) throw std::invalid_argument("OEFilter2D: too many components");
  for (Side s : {kLeft, kRight, kBottom, kTop}) {
    bool bc_p = bcs_.side[s].kind == BC2D::Kind::Periodic;
    if (bc_p != (mesh_->side_kind(s) == BoundaryKind::Periodic)) {
      throw std::invalid_argument("OEFilter2D: boundary conditions disagree with the mesh kinds");
    }
    if (bcs_.side[s].kind == BC2D::Kind::Reflective && !model_.is_euler()) {
      throw std::invalid_argument("OEFilter2D: reflective walls require the Euler model");
    }
    bool needs_fn = bcs_.side[s].kind == BC2D::Kind::Inflow || bcs_.side[s].kind == BC2D::Kind::Custom;
    if (needs_fn && !bcs_.side[s].ghost_fn) {
      throw std::invalid_argument("OEFilter2D: inflow/custom boundary lacks a ghost function");
    }
  }
  if (!bcs_.walls.empty() && !model_.is_euler()) {
    throw std::invalid_argument("OEFilter2D: interior walls require the Euler model");
  }
  std::unordered_set<int> wx, wy;
  internal::resolve_wall_faces(*mesh_, bcs_.walls, wx, wy);
  wall_x_faces_.assign(wx.begin(), wx.end());
  wall_y_faces_.assign(wy.begin(), wy.end());
  std::sort(wall_x_faces_.begin(), wall_x_faces_.end());
  std::sort(wall_y_faces_.begin(), wall_y_faces_.end());

  hx_global_ = 0.0;
  hy_global_ = 0.0;
  for (int i = 0; i < mesh_->nx(); ++i) hx_global_ = std::max(hx_global_, mesh_->hx(i));
  for (int j = 0; j < mesh_->ny(); ++j) hy_global_ = std::max(hy_global_, mesh_->hy(j));

  sample_s_ = norm_sample_points(k_);
  int ns = static_cast<int>(sample_s_.size());
  sample_basis_.resize(static_cast<size_t>(ns) * (k_ + 1));
  for (int s = 0; s < ns; ++s) {
    for (int m = 0; m <= k_; ++m) {
      sample_basis_[s * (k_ + 1) + m] = basis_value_ref(m, 0, sample_s_[s]);
    }
  }
  edge_table_.resize(static_cast<size_t>(k_ + 1) * (k_ + 1) * 2);
  for (int d = 0; d <= k_; ++d) {
    for (int a = 0; a <= k_; ++a) {
      edge_table_[(d * (k_ + 1) + a) * 2 + 0] = basis_value_ref(a, d, -0.5);
      edge_table_[(d * (k_ + 1) + a) * 2 + 1] = basis_value_ref(a, d, 0.5);
    }
  }
  pre_.resize(k_ + 1);
  for (int m = 0; m <= k_; ++m) {
    pre_[m] = (2.0 * m + 1.0) / ((2.0 * k_ - 1.0) * factorial(m));
  }
}

DeviationStats OEFilter2D::deviation(const DGSolution2D& sol, int comp) const {
  if (sol.degree != k_ || sol.mesh.get() != mesh_.get()) {
    throw std::invalid_argument("OEFilter2D::deviation: solution shape mismatch");
  }
  if (comp < 0 || comp >= sol.n_comp) throw std::invalid_argument("deviation: bad component");
  int nx = mesh_->nx(), ny = mesh_->ny();
  long long n = static_cast<long long>(nx) * ny;
  int nm = sol.n_modes();
  double area = (mesh_->x_edge(nx) - mesh_->x_edge(0)) * (mesh_->y_edge(ny) - mesh_->y_edge(0));

  DeviationStats st;
  st.avg = ordered_sum(n, [&](long long begin, long long end) {
    double acc = 0.0;
    for (long long cflat = begin; cflat < end; ++cflat) {
      int i = static_cast<int>(cflat % nx), j = static_cast<int>(cflat / nx);
      acc += mesh_->hx(i) * mesh_->hy(j) * sol.at(static_cast<int>(cflat), comp, 0);
    }
    return acc;
  }) / area;

  const ModeSet2D& set = ModeSet2D::get(k_);
  int ns = static_cast<int>(sample_s_.size());
  double avg = st.avg;
  st.norm = chunked_max(n, [&](long long begin, long long end) {
    double mx = 0.0;
    std::vector<double> tmp(static_cast<size_t>(k_ + 1) * ns);
    for (long long cflat = begin; cflat < end; ++cflat) {
      const double* cm = sol.cell_ptr(static_cast<int>(cflat)) + static_cast<size_t>(comp) * nm;
      for (int a1 = 0; a1 <= k_; ++a1) {
        for (int sj = 0; sj < ns; ++sj) {
          double v = 0.0;
          for (int a2 = 0; a2 + a1 <= k_; ++a2) {
            v += cm[set.index(a1, a2)] * sample_basis_[sj * (k_ + 1) + a2];
          }
          tmp[a1 * ns + sj] = v;
        }
      }
      for (int si = 0; si < ns; ++si) {
        for (int sj = 0; sj < ns; ++sj) {
          double v = 0.0;
          for (int a1 = 0; a1 <= k_; ++a1) {
            v += tmp[a1 * ns + sj] * sample_basis_[si * (k_ + 1) + a1];
          }
          mx = std::max(mx, std::abs(v - avg));
        }
      }
    }
    return mx;
  });
  return st;
}

namespace {

// Scratch for the derivative traces of one cell side at the two edge
// endpoints: dt[corner][c][(d1)*(k+1)+d2].
struct CornerDerivs {
  double v[2][kMaxComp][(kMaxBasisDegree + 1) * (kMaxBasisDegree + 1)];
};

}  // namespace

// Computes the damping contributions of every vertical face. out holds the
// h-free per-component face sums: pre[m] * sum_{|a|=m} mean|jump d^a u| / (2 norm)
// for the scale-invariant variant, or 2 pre[m] * sum mean|jump| for the legacy
// one. The owning cell multiplies by its own h^m when assembling delta.
void OEFilter2D::face_sigmas_x(const DGSolution2D& sol, double t, DampingVariant variant,
                               const std::vector<DeviationStats>& dev,
                               std::vector<double>& out) const {
  int nx = mesh_->nx(), ny = mesh_->ny(), nc = sol.n_comp;
  int nmode = sol.n_modes();
  int nm = k_ + 1;
  bool periodic = mesh_->periodic_x();
  const ModeSet2D& set = ModeSet2D::get(k_);
  out.assign(static_cast<size_t>(nx + 1) * ny * nc * nm, 0.0);

  bool constant[kMaxComp] = {};
  for (int c = 0; c < nc && variant == DampingVariant::ScaleInvariant; ++c) {
    constant[c] = component_constant(dev[c]);
  }

  auto et = [&](int d, int a, int s) { return edge_table_[(d * (k_ + 1) + a) * 2 + s]; };

  parallel_for(static_cast<long long>(nx + 1) * ny, [&](long long begin, long long end) {
    CornerDerivs dl, dr;
    double ghost[kMaxComp];
    for (long long f = begin; f < end; ++f) {
      int j = static_cast<int>(f / (nx + 1));
      int fi = static_cast<int>(f % (nx + 1));
      if (periodic && fi == nx) continue;
      double* face_out = &out[static_cast<size_t>(f) * nc * nm];
      int lc = fi > 0 ? mesh_->flat(fi - 1, j) : (periodic ? mesh_->flat(nx - 1, j) : -1);
      int rc = fi < nx ? mesh_->flat(fi, j) : (periodic ? mesh_->flat(0, j) : -1);
      bool is_wall =
          fi > 0 && fi < nx && std::binary_search(wall_x_faces_.begin(), wall_x_faces_.end(), static_cast<int>(f));
      double hy = mesh_->hy(j);

      // Derivative traces at the two face endpoints from each present side.
      auto fill = [&](int cell, int sx, CornerDerivs& dt) {
        const double* cp = sol.cell_ptr(cell);
        double hx = mesh_->hx(cell % nx);
        for (int corner = 0; corner < 2; ++corner) {
          for (int c = 0; c < nc; ++c) {
            const double* cm = cp + static_cast<size_t>(c) * nmode;
            double inv_hx = 1.0;
            for (int d1 = 0; d1 + 0 <= k_; ++d1) {
              double inv_hy = 1.0;
              for (int d2 = 0; d1 + d2 <= k_; ++d2) {
                double v = 0.0;
                for (int mo = 0; mo < nmode; ++mo) {
                  v += cm[mo] * et(d1, set.modes[mo].a1, sx) * et(d2, set.modes[mo].a2, corner);
                }
                dt.v[corner][c][d1 * nm + d2] = v * inv_hx * inv_hy;
                inv_hy /= hy;
              }
              inv_hx /= hx;
            }
          }
        }
      };
      if (lc >= 0) fill(lc, 1, dl);
      if (rc >= 0) fill(rc, 0, dr);

      // |jump| per (corner, c, d1, d2), folding in the boundary policy.
      auto jump_at = [&](int corner, int c, int d1, int d2) -> double {
        if (is_wall) {
          // Each side sees its own mirror; the shared face value takes the
          // larger of the two side-local jumps.
          double parity = (d1 % 2 == 0) ? 1.0 : -1.0;
          double scale = std::abs(mirror_sign(model_, c, true) * parity - 1.0);
          return scale * std::max(std::abs(dl.v[corner][c][d1 * nm + d2]),
                                  std::abs(dr.v[corner][c][d1 * nm + d2]));
        }
        if (lc >= 0 && rc >= 0) {
          return std::abs(dr.v[corner][c][d1 * nm + d2] - dl.v[corner][c][d1 * nm + d2]);
        }
        const BC2D& bc = lc < 0 ? bcs_.side[kLeft] : bcs_.side[kRight];
        const CornerDerivs& in = lc < 0 ? dr : dl;
        switch (bc.kind) {
          case BC2D::Kind::Outflow:
            return 0.0;
          case BC2D::Kind::Reflective: {
            double parity = (d1 % 2 == 0) ? 1.0 : -1.0;
            return std::abs((mirror_sign(model_, c, true) * parity - 1.0) * in.v[corner][c][d1 * nm + d2]);
          }
          default: {
            if (d1 + d2 > 0) return 0.0;
            double x = mesh_->x_edge(fi);
            double y = corner == 0 ? mesh_->y_edge(j) : mesh_->y_edge(j + 1);
            double interior[kMaxComp];
            for (int cc = 0; cc < nc; ++cc) interior[cc] = in.v[corner][cc][0];
            double nxn = lc < 0 ? -1.0 : 1.0;
            bc.ghost_fn(x, y, t, interior, nxn, 0.0, ghost);
            return std::abs(ghost[c] - interior[c]);
          }
        }
      };

      for (int c = 0; c < nc; ++c) {
        if (variant == DampingVariant::ScaleInvariant && constant[c]) continue;
        for (int m = 0; m <= k_; ++m) {
          double s = 0.0;
          for (int d1 = 0; d1 <= m; ++d1) {
            int d2 = m - d1;
            s += 0.5 * (jump_at(0, c, d1, d2) + jump_at(1, c, d1, d2));
          }
          if (variant == DampingVariant::ScaleInvariant) {
            face_out[c * nm + m] = pre_[m] * s / (2.0 * dev[c].norm);
          } else {
            face_out[c * nm + m] = 2.0 * pre_[m] * s;
          }
        }
      }
    }
  });
}

void OEFilter2D::face_sigmas_y(const DGSolution2D& sol, double t, DampingVariant variant,
                               const std::vector<DeviationStats>& dev,
                               std::vector<double>& out) const {
  int nx = mesh_->nx(), ny = mesh_->ny(), nc = sol.n_comp;
  int nmode = sol.n_modes();
  int nm = k_ + 1;
  bool periodic = mesh_->periodic_y();
  const ModeSet2D& set = ModeSet2D::get(k_);
  out.assign(static_cast<size_t>(nx) * (ny + 1) * nc * nm, 0.0);

  bool constant[kMaxComp] = {};
  for (int c = 0; c < nc && variant == DampingVariant::ScaleInvariant; ++c) {
    constant[c] = component_constant(dev[c]);
  }

  auto et = [&](int d, int a, int s) { return edge_table_[(d * (k_ + 1) + a) * 2 + s]; };

  parallel_for(static_cast<long long>(nx) * (ny + 1), [&](long long begin, long long end) {
    CornerDerivs db, dtp;
    double ghost[kMaxComp];
    for (long long f = begin; f < end; ++f) {
      int fj = static_cast<int>(f / nx);
      int i = static_cast<int>(f % nx);
      if (periodic && fj == ny) continue;
      double* face_out = &out[static_cast<size_t>(f) * nc * nm];
      int bc_cell = fj > 0 ? mesh_->flat(i, fj - 1) : (periodic ? mesh_->flat(i, ny - 1) : -1);
      int tc_cell = fj < ny ? mesh_->flat(i, fj) : (periodic ? mesh_->flat(i, 0) : -1);
      bool is_wall =
          fj > 0 && fj < ny && std::binary_search(wall_y_faces_.begin(), wall_y_faces_.end(), static_cast<int>(f));
      double hx = mesh_->hx(i);

      // corner 0: left endpoint (xi=-1/2), corner 1: right endpoint.
      auto fill = [&](int cell, int sy, CornerDerivs& dt) {
        const double* cp = sol.cell_ptr(cell);
        double hy = mesh_->hy(cell / nx);
        for (int corner = 0; corner < 2; ++corner) {
          for (int c = 0; c < nc; ++c) {
            const double* cm = cp + static_cast<size_t>(c) * nmode;
            double inv_hx = 1.0;
            for (int d1 = 0; d1 <= k_; ++d1) {
              double inv_hy = 1.0;
              for (int d2 = 0; d1 + d2 <= k_; ++d2) {
                double v = 0.0;
                for (int mo = 0; mo < nmode; ++mo) {
                  v += cm[mo] * et(d1, set.modes[mo].a1, corner) * et(d2, set.modes[mo].a2, sy);
                }
                dt.v[corner][c][d1 * nm + d2] = v * inv_hx * inv_hy;
                inv_hy /= hy;
              }
              inv_hx /= hx;
            }
          }
        }
      };
      if (bc_cell >= 0) fill(bc_cell, 1, db);
      if (tc_cell >= 0) fill(tc_cell, 0, dtp);

      auto jump_at = [&](int corner, int c, int d1, int d2) -> double {
        if (is_wall) {
          double parity = (d2 % 2 == 0) ? 1.0 : -1.0;
          double scale = std::abs(mirror_sign(model_, c, false) * parity - 1.0);
          return scale * std::max(std::abs(db.v[corner][c][d1 * nm + d2]),
                                  std::abs(dtp.v[corner][c][d1 * nm + d2]));
        }
        if (bc_cell >= 0 && tc_cell >= 0) {
          return std::abs(dtp.v[corner][c][d1 * nm + d2] - db.v[corner][c][d1 * nm + d2]);
        }
        const BC2D& bc = bc_cell < 0 ? bcs_.side[kBottom] : bcs_.side[kTop];
        const CornerDerivs& in = bc_cell < 0 ? dtp : db;
        switch (bc.kind) {
          case BC2D::Kind::Outflow:
            return 0.0;
          case BC2D::Kind::Reflective: {
            double parity = (d2 % 2 == 0) ? 1.0 : -1.0;
            return std::abs((mirror_sign(model_, c, false) * parity - 1.0) * in.v[corner][c][d1 * nm + d2]);
          }
          default: {
            if (d1 + d2 > 0) return 0.0;
            double x = corner == 0 ? mesh_->x_edge(i) : mesh_->x_edge(i + 1);
            double y = mesh_->y_edge(fj);
            double interior[kMaxComp];
            for (int cc = 0; cc < nc; ++cc) interior[cc] = in.v[corner][cc][0];
            double nyn = bc_cell < 0 ? -1.0 : 1.0;
            bc.ghost_fn(x, y, t, interior, 0.0, nyn, ghost);
            return std::abs(ghost[c] - interior[c]);
          }
        }
      };

      for (int c = 0; c < nc; ++c) {
        if (variant == DampingVariant::ScaleInvariant && constant[c]) continue;
        for (int m = 0; m <= k_; ++m) {
          double s = 0.0;
          for (int d2 = 0; d2 <= m; ++d2) {
            int d1 = m - d2;
            s += 0.5 * (jump_at(0, c, d1, d2) + jump_at(1, c, d1, d2));
          }
          if (variant == DampingVariant::ScaleInvariant) {
            face_out[c * nm + m] = pre_[m] * s / (2.0 * dev[c].norm);
          } else {
            face_out[c * nm + m] = 2.0 * pre_[m] * s;
          }
        }
      }
    }
  });
}

void OEFilter2D::compute_profile(const DGSolution2D& sol, double t, DampingVariant variant,
                                 std::vector<double>& delta) const {
  if (sol.degree != k_ || sol.n_comp != model_.n_comp || sol.mesh.get() != mesh_.get()) {
    throw std::invalid_argument("OEFilter2D: solution shape mismatch");
  }
  int nx = mesh_->nx(), ny = mesh_->ny(), nc = sol.n_comp;
  int nm = k_ + 1;

  std::vector<DeviationStats> dev(nc);
  if (variant == DampingVariant::ScaleInvariant) {
    for (int c = 0; c < nc; ++c) dev[c] = deviation(sol, c);
  }

  std::vector<double> sx, sy;
  face_sigmas_x(sol, t, variant, dev, sx);
  face_sigmas_y(sol, t, variant, dev, sy);

  delta.assign(static_cast<size_t>(nx) * ny * nm, 0.0);
  bool legacy = variant == DampingVariant::Legacy;

  AbortCollector abort;
  parallel_for(static_cast<long long>(nx) * ny, [&](long long begin, long long end) {
    double ubar[kMaxComp];
    for (long long cflat = begin; cflat < end; ++cflat) {
      int i = static_cast<int>(cflat % nx), j = static_cast<int>(cflat / nx);
      for (int c = 0; c < nc; ++c) ubar[c] = sol.at(static_cast<int>(cflat), c, 0);
      double bx, by;
      try {
        bx = max_wave_speed_x(model_, ubar);
        by = max_wave_speed_y(model_, ubar);
      } catch (const std::exception& e) {
        abort.record(internal::cell_context_2d(i, j, mesh_->x_center(i), mesh_->y_center(j), t,
                                               "filter wave speed") +
                     ": " + e.what());
        return;
      }
      double hx = mesh_->hx(i), hy = mesh_->hy(j);
      int fW = x_face_index(i, j);
      int fE = (mesh_->periodic_x() && i == nx - 1) ? x_face_index(0, j) : x_face_index(i + 1, j);
      int fS = y_face_index(i, j);
      int fN = (mesh_->periodic_y() && j == ny - 1) ? y_face_index(i, 0) : y_face_index(i, j + 1);
      const double* sW = &sx[static_cast<size_t>(fW) * nc * nm];
      const double* sE = &sx[static_cast<size_t>(fE) * nc * nm];
      const double* sS = &sy[static_cast<size_t>(fS) * nc * nm];
      const double* sN = &sy[static_cast<size_t>(fN) * nc * nm];
      double hxp = 1.0, hyp = 1.0;
      for (int m = 0; m <= k_; ++m) {
        double dmax = 0.0;
        for (int c = 0; c < nc; ++c) {
          double d = bx * hxp * (sE[c * nm + m] + sW[c * nm + m]) / hx +
                     by * hyp * (sN[c * nm + m] + sS[c * nm + m]) / hy;
          dmax = std::max(dmax, d);
        }
        delta[cflat * nm + m] = dmax;
        hxp *= legacy ? hx_global_ : hx;
        hyp *= legacy ? hy_global_ : hy;
      }
    }
  });
  abort.rethrow_if();
}

void OEFilter2D::apply(DGSolution2D& sol, double tau, double t, DampingVariant variant) const {
  if (!(tau > 0.0)) throw std::invalid_argument("OEFilter2D::apply: step must be positive");
  std::vector<double> delta;
  compute_profile(sol, t, variant, delta);

  int nc = sol.n_comp;
  int nmode = sol.n_modes();
  int nm = k_ + 1;
  const ModeSet2D& set = ModeSet2D::get(k_);
  long long n = static_cast<long long>(mesh_->nx()) * mesh_->ny();
  parallel_for(n, [&](long long begin, long long end) {
    double fac[kMaxBasisDegree + 1];
    for (long long cflat = begin; cflat < end; ++cflat) {
      double cum = delta[cflat * nm + 0];
      fac[0] = 1.0;
      for (int d = 1; d <= k_; ++d) {
        cum += delta[cflat * nm + d];
        fac[d] = std::exp(-tau * cum);
      }
      double* cell = sol.cell_ptr(static_cast<int>(cflat));
      for (int c = 0; c < nc; ++c) {
        for (int mo = 0; mo < nmode; ++mo) {
          int deg = set.modes[mo].a1 + set.modes[mo].a2;
          cell[c * nmode + mo] *= fac[deg];
        }
      }
    }
  });
}

}  // namespace oedg
