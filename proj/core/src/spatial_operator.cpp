#include "oedg/spatial_operator.hpp"

#include <cmath>
#include <cstring>

#include "abort_collector.hpp"
#include "oedg/parallel.hpp"
#include "oedg/quadrature.hpp"
#include "wall_faces.hpp"

namespace oedg {

using internal::AbortCollector;
using internal::cell_context_1d;
using internal::cell_context_2d;

namespace {

constexpr int kMaxComp = 4;

int resolve_quad(int k, int n_quad) {
  if (n_quad == 0) n_quad = k + 2;
  if (n_quad < 1 || n_quad > kMaxQuadraturePoints) {
    throw std::invalid_argument("operator: quadrature point count out of range");
  }
  return n_quad;
}

void mirror_state_1d(const Model& m, const double* u, double* ghost) {
  ghost[0] = u[0];
  ghost[1] = -u[1];
  ghost[2] = u[2];
  (void)m;
}

// Mirrors the momentum component normal to the face (nx, ny axis-aligned).
void mirror_state_2d(const double* u, double nx, double* ghost) {
  ghost[0] = u[0];
  if (nx != 0.0) {
    ghost[1] = -u[1];
    ghost[2] = u[2];
  } else {
    ghost[1] = u[1];
    ghost[2] = -u[2];
  }
  ghost[3] = u[3];
}

}  // namespace

Operator1D::Operator1D(std::shared_ptr<const Mesh1D> mesh, Model model, BCSet1D bcs, FluxKind flux,
                       int k, int n_quad)
    : mesh_(std::move(mesh)), model_(model), bcs_(bcs), flux_(flux), k_(k) {
  if (!mesh_) throw std::invalid_argument("Operator1D: null mesh");
  if (model_.dim != 1) throw std::invalid_argument("Operator1D: model is not one-dimensional");
  if (k_ < 0 || k_ > kMaxBasisDegree) throw std::invalid_argument("Operator1D: bad degree");
  if (model_.n_comp > kMaxComp) throw std::invalid_argument("Operator1D: too many components");
  n_quad_ = resolve_quad(k_, n_quad);
  bool bc_periodic = bcs_.left.kind == BC1D::Kind::Periodic;
  bool bc_periodic_r = bcs_.right.kind == BC1D::Kind::Periodic;
  if (bc_periodic != bc_periodic_r) {
    throw std::invalid_argument("Operator1D: periodic requires both ends periodic");
  }
  if (bc_periodic != mesh_->periodic()) {
    throw std::invalid_argument("Operator1D: boundary conditions disagree with the mesh kinds");
  }
  for (const BC1D* bc : {&bcs_.left, &bcs_.right}) {
    if (bc->kind == BC1D::Kind::Reflective && !model_.is_euler()) {
      throw std::invalid_argument("Operator1D: reflective walls require the Euler model");
    }
  }

  const QuadratureRule& rule = gauss_legendre(n_quad_);
  nodes_ = rule.nodes;
  weights_ = rule.weights;
  B_.resize(static_cast<size_t>(n_quad_) * (k_ + 1));
  D_.resize(B_.size());
  for (int q = 0; q < n_quad_; ++q) {
    for (int m = 0; m <= k_; ++m) {
      B_[q * (k_ + 1) + m] = basis_value_ref(m, 0, nodes_[q]);
      D_[q * (k_ + 1) + m] = basis_value_ref(m, 1, nodes_[q]);
    }
  }
  edgeL_.resize(k_ + 1);
  edgeR_.resize(k_ + 1);
  inv_norm2_.resize(k_ + 1);
  for (int m = 0; m <= k_; ++m) {
    edgeL_[m] = basis_value_ref(m, 0, -0.5);
    edgeR_[m] = basis_value_ref(m, 0, 0.5);
    inv_norm2_[m] = 1.0 / basis_norm2_ref(m);
  }
}

void Operator1D::residual(const DGSolution1D& sol, double t, DGSolution1D& out) {
  if (sol.degree != k_ || sol.n_comp != model_.n_comp || sol.mesh.get() != mesh_.get()) {
    throw std::invalid_argument("Operator1D::residual: solution shape mismatch");
  }
  int n = mesh_->num_cells();
  int nc = model_.n_comp;
  int nm = k_ + 1;
  if (out.coeff.size() != sol.coeff.size()) out = sol;

  traceL_.assign(static_cast<size_t>(n) * nc, 0.0);
  traceR_.assign(static_cast<size_t>(n) * nc, 0.0);
  face_flux_.assign(static_cast<size_t>(n + 1) * nc, 0.0);

  // Interior traces at both cell edges.
  parallel_for(n, [&](long long begin, long long end) {
    for (long long j = begin; j < end; ++j) {
      const double* cell = sol.cell_ptr(static_cast<int>(j));
      for (int c = 0; c < nc; ++c) {
        double vl = 0.0, vr = 0.0;
        for (int m = 0; m <= k_; ++m) {
          vl += cell[c * nm + m] * edgeL_[m];
          vr += cell[c * nm + m] * edgeR_[m];
        }
        traceL_[j * nc + c] = vl;
        traceR_[j * nc + c] = vr;
      }
    }
  });

  AbortCollector abort;
  bool periodic = bcs_.periodic();
  int n_faces = periodic ? n : n + 1;
  parallel_for(n_faces, [&](long long begin, long long end) {
    double ghost[kMaxComp];
    for (long long f = begin; f < end; ++f) {
      const double* uL = nullptr;
      const double* uR = nullptr;
      if (periodic) {
        uL = &traceR_[((f + n - 1) % n) * nc];
        uR = &traceL_[f * nc];
      } else if (f == 0) {
        uR = &traceL_[0];
        switch (bcs_.left.kind) {
          case BC1D::Kind::Outflow:
            uL = uR;
            break;
          case BC1D::Kind::Reflective:
            mirror_state_1d(model_, uR, ghost);
            uL = ghost;
            break;
          case BC1D::Kind::Inflow:
            bcs_.left.inflow(mesh_->x_lo(), t, ghost);
            uL = ghost;
            break;
          default:
            break;
        }
      } else if (f == n) {
        uL = &traceR_[(n - 1) * nc];
        switch (bcs_.right.kind) {
          case BC1D::Kind::Outflow:
            uR = uL;
            break;
          case BC1D::Kind::Reflective:
            mirror_state_1d(model_, uL, ghost);
            uR = ghost;
            break;
          case BC1D::Kind::Inflow:
            bcs_.right.inflow(mesh_->x_hi(), t, ghost);
            uR = ghost;
            break;
          default:
            break;
        }
      } else {
        uL = &traceR_[(f - 1) * nc];
        uR = &traceL_[f * nc];
      }
      try {
        numerical_flux(model_, flux_, uL, uR, 1.0, 0.0, &face_flux_[f * nc]);
      } catch (const std::exception& e) {
        abort.record(cell_context_1d(static_cast<int>(f), mesh_->edge(static_cast<int>(f)), t,
                                     "face flux") +
                     ": " + e.what());
        return;
      }
    }
  });
  abort.rethrow_if();

  parallel_for(n, [&](long long begin, long long end) {
    double u[kMaxComp], fx[kMaxComp];
    std::vector<double> acc(static_cast<size_t>(nc) * nm);
    for (long long j = begin; j < end; ++j) {
      const double* cell = sol.cell_ptr(static_cast<int>(j));
      double h = mesh_->width(static_cast<int>(j));
      std::fill(acc.begin(), acc.end(), 0.0);
      for (int q = 0; q < n_quad_; ++q) {
        const double* bq = &B_[q * nm];
        const double* dq = &D_[q * nm];
        for (int c = 0; c < nc; ++c) {
          double v = 0.0;
          for (int m = 0; m <= k_; ++m) v += cell[c * nm + m] * bq[m];
          u[c] = v;
        }
        try {
          physical_flux(model_, u, fx, nullptr);
        } catch (const std::exception& e) {
          abort.record(cell_context_1d(static_cast<int>(j),
                                       mesh_->center(static_cast<int>(j)) + nodes_[q] * h, t,
                                       "volume flux") +
                       ": " + e.what());
          return;
        }
        for (int c = 0; c < nc; ++c) {
          double wf = weights_[q] * fx[c];
          for (int m = 0; m <= k_; ++m) acc[c * nm + m] += wf * dq[m];
        }
      }
      const double* fL = &face_flux_[j * nc];
      const double* fR = periodic && j == n - 1 ? &face_flux_[0] : &face_flux_[(j + 1) * nc];
      double* dst = out.cell_ptr(static_cast<int>(j));
      for (int c = 0; c < nc; ++c) {
        for (int m = 0; m <= k_; ++m) {
          dst[c * nm + m] =
              (acc[c * nm + m] - fR[c] * edgeR_[m] + fL[c] * edgeL_[m]) * inv_norm2_[m] / h;
        }
      }
    }
  });
  abort.rethrow_if();
}

Operator2D::Operator2D(std::shared_ptr<const Mesh2D> mesh, Model model, BCSet2D bcs, FluxKind flux,
                       int k, int n_quad)
    : mesh_(std::move(mesh)), model_(model), bcs_(bcs), flux_(flux), k_(k) {
  if (!mesh_) throw std::invalid_argument("Operator2D: null mesh");
  if (model_.dim != 2) throw std::invalid_argument("Operator2D: model is not two-dimensional");
  if (k_ < 0 || k_ > kMaxBasisDegree) throw std::invalid_argument("Operator2D: bad degree");
  if (model_.n_comp > kMaxComp) throw std::invalid_argument("Operator2D: too many components");
  n_quad_ = resolve_quad(k_, n_quad);

  for (Side s : {kLeft, kRight, kBottom, kTop}) {
    bool bc_p = bcs_.side[s].kind == BC2D::Kind::Periodic;
    bool mesh_p = mesh_->side_kind(s) == BoundaryKind::Periodic;
    if (bc_p != mesh_p) {
      throw std::invalid_argument("Operator2D: boundary conditions disagree with the mesh kinds");
    }
    if (bcs_.side[s].kind == BC2D::Kind::Reflective && !model_.is_euler()) {
      throw std::invalid_argument("Operator2D: reflective walls require the Euler model");
    }
  }
  if (!bcs_.walls.empty() && !model_.is_euler()) {
    throw std::invalid_argument("Operator2D: interior walls require the Euler model");
  }

  internal::resolve_wall_faces(*mesh_, bcs_.walls, wall_x_, wall_y_);

  const ModeSet2D& set = ModeSet2D::get(k_);
  n_modes_ = set.size();
  const QuadratureRule& rule = gauss_legendre(n_quad_);
  nodes_ = rule.nodes;
  weights_ = rule.weights;
  b1_.resize(static_cast<size_t>(n_quad_) * (k_ + 1));
  d1_.resize(b1_.size());
  for (int q = 0; q < n_quad_; ++q) {
    for (int m = 0; m <= k_; ++m) {
      b1_[q * (k_ + 1) + m] = basis_value_ref(m, 0, nodes_[q]);
      d1_[q * (k_ + 1) + m] = basis_value_ref(m, 1, nodes_[q]);
    }
  }
  e_lo_.resize(k_ + 1);
  e_hi_.resize(k_ + 1);
  for (int m = 0; m <= k_; ++m) {
    e_lo_[m] = basis_value_ref(m, 0, -0.5);
    e_hi_[m] = basis_value_ref(m, 0, 0.5);
  }
  int nq2 = n_quad_ * n_quad_;
  V_.resize(static_cast<size_t>(nq2) * n_modes_);
  GX_.resize(V_.size());
  GY_.resize(V_.size());
  for (int qx = 0; qx < n_quad_; ++qx) {
    for (int qy = 0; qy < n_quad_; ++qy) {
      int q2 = qx * n_quad_ + qy;
      for (int m = 0; m < n_modes_; ++m) {
        int a1 = set.modes[m].a1, a2 = set.modes[m].a2;
        V_[static_cast<size_t>(q2) * n_modes_ + m] = b1_[qx * (k_ + 1) + a1] * b1_[qy * (k_ + 1) + a2];
        GX_[static_cast<size_t>(q2) * n_modes_ + m] = d1_[qx * (k_ + 1) + a1] * b1_[qy * (k_ + 1) + a2];
        GY_[static_cast<size_t>(q2) * n_modes_ + m] = b1_[qx * (k_ + 1) + a1] * d1_[qy * (k_ + 1) + a2];
      }
    }
  }
  FXlo_.resize(static_cast<size_t>(n_quad_) * n_modes_);
  FXhi_.resize(FXlo_.size());
  FYlo_.resize(FXlo_.size());
  FYhi_.resize(FXlo_.size());
  for (int q = 0; q < n_quad_; ++q) {
    for (int m = 0; m < n_modes_; ++m) {
      int a1 = set.modes[m].a1, a2 = set.modes[m].a2;
      FXlo_[static_cast<size_t>(q) * n_modes_ + m] = e_lo_[a1] * b1_[q * (k_ + 1) + a2];
      FXhi_[static_cast<size_t>(q) * n_modes_ + m] = e_hi_[a1] * b1_[q * (k_ + 1) + a2];
      FYlo_[static_cast<size_t>(q) * n_modes_ + m] = b1_[q * (k_ + 1) + a1] * e_lo_[a2];
      FYhi_[static_cast<size_t>(q) * n_modes_ + m] = b1_[q * (k_ + 1) + a1] * e_hi_[a2];
    }
  }
  inv_norm2_.resize(n_modes_);
  for (int m = 0; m < n_modes_; ++m) {
    inv_norm2_[m] = 1.0 / (basis_norm2_ref(set.modes[m].a1) * basis_norm2_ref(set.modes[m].a2));
  }

  // Pre-size the wall flux buffers so the face loops never mutate the maps
  // from worker threads.
  for (int f : wall_x_) wall_x_right_[f].resize(static_cast<size_t>(n_quad_) * model_.n_comp);
  for (int f : wall_y_) wall_y_right_[f].resize(static_cast<size_t>(n_quad_) * model_.n_comp);
}

namespace {

// Evaluates the trace of all components on one face of a cell at the face
// quadrature points. `face_table` is FXlo/FXhi/FYlo/FYhi.
inline void cell_face_trace(const double* cell, const double* face_table, int n_quad, int n_comp,
                            int n_modes, double* out) {
  for (int q = 0; q < n_quad; ++q) {
    const double* ft = face_table + static_cast<size_t>(q) * n_modes;
    for (int c = 0; c < n_comp; ++c) {
      const double* cm = cell + static_cast<size_t>(c) * n_modes;
      double v = 0.0;
      for (int m = 0; m < n_modes; ++m) v += cm[m] * ft[m];
      out[q * n_comp + c] = v;
    }
  }
}

}  // namespace

void Operator2D::compute_x_fluxes(const DGSolution2D& sol, double t) {
  int nx = mesh_->nx(), ny = mesh_->ny(), nc = model_.n_comp;
  bool periodic = mesh_->periodic_x();
  int faces_per_row = nx + 1;
  AbortCollector abort;

  parallel_for(static_cast<long long>(faces_per_row) * ny, [&](long long begin, long long end) {
    std::vector<double> trL(static_cast<size_t>(n_quad_) * nc);
    std::vector<double> trR(trL.size());
    double ghost[kMaxComp];
    for (long long f = begin; f < end; ++f) {
      int j = static_cast<int>(f / faces_per_row);
      int fi = static_cast<int>(f % faces_per_row);
      if (periodic && fi == nx) continue;  // duplicate of face 0
      double x = mesh_->x_edge(fi);
      double* dst = &flux_x_[static_cast<size_t>(f) * n_quad_ * nc];
      int left_cell = fi > 0 ? mesh_->flat(fi - 1, j) : (periodic ? mesh_->flat(nx - 1, j) : -1);
      int right_cell = fi < nx ? mesh_->flat(fi, j) : (periodic ? mesh_->flat(0, j) : -1);
      if (left_cell >= 0) cell_face_trace(sol.cell_ptr(left_cell), FXhi_.data(), n_quad_, nc, n_modes_, trL.data());
      if (right_cell >= 0) cell_face_trace(sol.cell_ptr(right_cell), FXlo_.data(), n_quad_, nc, n_modes_, trR.data());

      bool wall = fi > 0 && fi < nx && wall_x_.count(static_cast<int>(f)) > 0;
      try {
        for (int q = 0; q < n_quad_; ++q) {
          double y = mesh_->y_center(j) + nodes_[q] * mesh_->hy(j);
          const double* uL = &trL[q * nc];
          const double* uR = &trR[q * nc];
          if (wall) {
            // Slip wall between the two cells: each side sees its own mirror.
            mirror_state_2d(uL, 1.0, ghost);
            numerical_flux(model_, flux_, uL, ghost, 1.0, 0.0, &dst[q * nc]);
            std::vector<double>& right = wall_x_right_.find(static_cast<int>(f))->second;
            mirror_state_2d(uR, 1.0, ghost);
            numerical_flux(model_, flux_, ghost, uR, 1.0, 0.0, &right[q * nc]);
            continue;
          }
          if (left_cell < 0) {
            const BC2D& bc = bcs_.side[kLeft];
            switch (bc.kind) {
              case BC2D::Kind::Outflow:
                uL = uR;
                break;
              case BC2D::Kind::Reflective:
                mirror_state_2d(uR, 1.0, ghost);
                uL = ghost;
                break;
              default:
                bc.ghost_fn(x, y, t, uR, -1.0, 0.0, ghost);
                uL = ghost;
                break;
            }
          } else if (right_cell < 0) {
            const BC2D& bc = bcs_.side[kRight];
            switch (bc.kind) {
              case BC2D::Kind::Outflow:
                uR = uL;
                break;
              case BC2D::Kind::Reflective:
                mirror_state_2d(uL, 1.0, ghost);
                uR = ghost;
                break;
              default:
                bc.ghost_fn(x, y, t, uL, 1.0, 0.0, ghost);
                uR = ghost;
                break;
            }
          }
          numerical_flux(model_, flux_, uL, uR, 1.0, 0.0, &dst[q * nc]);
        }
      } catch (const std::exception& e) {
        abort.record(cell_context_2d(fi, j, x, mesh_->y_center(j), t, "x-face flux") + ": " +
                     e.what());
        return;
      }
    }
  });
  abort.rethrow_if();
}

void Operator2D::compute_y_fluxes(const DGSolution2D& sol, double t) {
  int nx = mesh_->nx(), ny = mesh_->ny(), nc = model_.n_comp;
  bool periodic = mesh_->periodic_y();
  AbortCollector abort;

  parallel_for(static_cast<long long>(nx) * (ny + 1), [&](long long begin, long long end) {
    std::vector<double> trL(static_cast<size_t>(n_quad_) * nc);
    std::vector<double> trR(trL.size());
    double ghost[kMaxComp];
    for (long long f = begin; f < end; ++f) {
      int fj = static_cast<int>(f / nx);
      int i = static_cast<int>(f % nx);
      if (periodic && fj == ny) continue;
      double y = mesh_->y_edge(fj);
      double* dst = &flux_y_[static_cast<size_t>(f) * n_quad_ * nc];
      int bot_cell = fj > 0 ? mesh_->flat(i, fj - 1) : (periodic ? mesh_->flat(i, ny - 1) : -1);
      int top_cell = fj < ny ? mesh_->flat(i, fj) : (periodic ? mesh_->flat(i, 0) : -1);
      if (bot_cell >= 0) cell_face_trace(sol.cell_ptr(bot_cell), FYhi_.data(), n_quad_, nc, n_modes_, trL.data());
      if (top_cell >= 0) cell_face_trace(sol.cell_ptr(top_cell), FYlo_.data(), n_quad_, nc, n_modes_, trR.data());

      bool wall = fj > 0 && fj < ny && wall_y_.count(static_cast<int>(f)) > 0;
      try {
        for (int q = 0; q < n_quad_; ++q) {
          double x = mesh_->x_center(i) + nodes_[q] * mesh_->hx(i);
          const double* uL = &trL[q * nc];
          const double* uR = &trR[q * nc];
          if (wall) {
            mirror_state_2d(uL, 0.0, ghost);
            numerical_flux(model_, flux_, uL, ghost, 0.0, 1.0, &dst[q * nc]);
            std::vector<double>& top = wall_y_right_.find(static_cast<int>(f))->second;
            mirror_state_2d(uR, 0.0, ghost);
            numerical_flux(model_, flux_, ghost, uR, 0.0, 1.0, &top[q * nc]);
            continue;
          }
          if (bot_cell < 0) {
            const BC2D& bc = bcs_.side[kBottom];
            switch (bc.kind) {
              case BC2D::Kind::Outflow:
                uL = uR;
                break;
              case BC2D::Kind::Reflective:
                mirror_state_2d(uR, 0.0, ghost);
                uL = ghost;
                break;
              default:
                bc.ghost_fn(x, y, t, uR, 0.0, -1.0, ghost);
                uL = ghost;
                break;
            }
          } else if (top_cell < 0) {
            const BC2D& bc = bcs_.side[kTop];
            switch (bc.kind) {
              case BC2D::Kind::Outflow:
                uR = uL;
                break;
              case BC2D::Kind::Reflective:
                mirror_state_2d(uL, 0.0, ghost);
                uR = ghost;
                break;
              default:
                bc.ghost_fn(x, y, t, uL, 0.0, 1.0, ghost);
                uR = ghost;
                break;
            }
          }
          numerical_flux(model_, flux_, uL, uR, 0.0, 1.0, &dst[q * nc]);
        }
      } catch (const std::exception& e) {
        abort.record(cell_context_2d(i, fj, mesh_->x_center(i), y, t, "y-face flux") + ": " +
                     e.what());
        return;
      }
    }
  });
  abort.rethrow_if();
}

void Operator2D::residual(const DGSolution2D& sol, double t, DGSolution2D& out) {
  if (sol.degree != k_ || sol.n_comp != model_.n_comp || sol.mesh.get() != mesh_.get()) {
    throw std::invalid_argument("Operator2D::residual: solution shape mismatch");
  }
  int nx = mesh_->nx(), ny = mesh_->ny(), nc = model_.n_comp;
  int nm = n_modes_;
  if (out.coeff.size() != sol.coeff.size()) out = sol;

  flux_x_.assign(static_cast<size_t>(nx + 1) * ny * n_quad_ * nc, 0.0);
  flux_y_.assign(static_cast<size_t>(nx) * (ny + 1) * n_quad_ * nc, 0.0);
  compute_x_fluxes(sol, t);
  compute_y_fluxes(sol, t);

  AbortCollector abort;
  parallel_for(static_cast<long long>(nx) * ny, [&](long long begin, long long end) {
    double u[kMaxComp], fx[kMaxComp], fy[kMaxComp];
    std::vector<double> accx(static_cast<size_t>(nc) * nm), accy(accx.size());
    for (long long cflat = begin; cflat < end; ++cflat) {
      int i = static_cast<int>(cflat) % nx;
      int j = static_cast<int>(cflat) / nx;
      const double* cell = sol.cell_ptr(static_cast<int>(cflat));
      double hx = mesh_->hx(i), hy = mesh_->hy(j);
      std::fill(accx.begin(), accx.end(), 0.0);
      std::fill(accy.begin(), accy.end(), 0.0);

      for (int qx = 0; qx < n_quad_; ++qx) {
        for (int qy = 0; qy < n_quad_; ++qy) {
          int q2 = qx * n_quad_ + qy;
          const double* vq = &V_[static_cast<size_t>(q2) * nm];
          const double* gx = &GX_[static_cast<size_t>(q2) * nm];
          const double* gy = &GY_[static_cast<size_t>(q2) * nm];
          for (int c = 0; c < nc; ++c) {
            const double* cm = cell + static_cast<size_t>(c) * nm;
            double v = 0.0;
            for (int m = 0; m < nm; ++m) v += cm[m] * vq[m];
            u[c] = v;
          }
          try {
            physical_flux(model_, u, fx, fy);
          } catch (const std::exception& e) {
            abort.record(cell_context_2d(i, j, mesh_->x_center(i) + nodes_[qx] * hx,
                                         mesh_->y_center(j) + nodes_[qy] * hy, t, "volume flux") +
                         ": " + e.what());
            return;
          }
          double w = weights_[qx] * weights_[qy];
          for (int c = 0; c < nc; ++c) {
            double wfx = w * fx[c], wfy = w * fy[c];
            double* ax = &accx[static_cast<size_t>(c) * nm];
            double* ay = &accy[static_cast<size_t>(c) * nm];
            for (int m = 0; m < nm; ++m) {
              ax[m] += wfx * gx[m];
              ay[m] += wfy * gy[m];
            }
          }
        }
      }

      // Face contributions. Wall faces read the side-specific flux.
      int fxl = x_face_index(i, j), fxr = x_face_index(i + 1, j);
      int fyb = y_face_index(i, j), fyt = y_face_index(i, j + 1);
      const double* flux_left = &flux_x_[static_cast<size_t>(fxl) * n_quad_ * nc];
      if (wall_x_.count(fxl) > 0) {
        auto it = wall_x_right_.find(fxl);
        flux_left = it->second.data();
      }
      if (mesh_->periodic_x() && i == nx - 1) {
        // face nx duplicates face 0 of the same row
        fxr = x_face_index(0, j);
      }
      const double* flux_right = &flux_x_[static_cast<size_t>(fxr) * n_quad_ * nc];
      const double* flux_bot = &flux_y_[static_cast<size_t>(fyb) * n_quad_ * nc];
      if (wall_y_.count(fyb) > 0) {
        auto it = wall_y_right_.find(fyb);
        flux_bot = it->second.data();
      }
      if (mesh_->periodic_y() && j == ny - 1) {
        fyt = y_face_index(i, 0);
      }
      const double* flux_top = &flux_y_[static_cast<size_t>(fyt) * n_quad_ * nc];

      double* dst = out.cell_ptr(static_cast<int>(cflat));
      for (int c = 0; c < nc; ++c) {
        double* ax = &accx[static_cast<size_t>(c) * nm];
        double* ay = &accy[static_cast<size_t>(c) * nm];
        for (int q = 0; q < n_quad_; ++q) {
          double wq = weights_[q];
          double fr = flux_right[q * nc + c] * wq;
          double fl = flux_left[q * nc + c] * wq;
          double ft = flux_top[q * nc + c] * wq;
          double fb = flux_bot[q * nc + c] * wq;
          const double* xlo = &FXlo_[static_cast<size_t>(q) * nm];
          const double* xhi = &FXhi_[static_cast<size_t>(q) * nm];
          const double* ylo = &FYlo_[static_cast<size_t>(q) * nm];
          const double* yhi = &FYhi_[static_cast<size_t>(q) * nm];
          for (int m = 0; m < nm; ++m) {
            ax[m] += fl * xlo[m] - fr * xhi[m];
            ay[m] += fb * ylo[m] - ft * yhi[m];
          }
        }
        for (int m = 0; m < nm; ++m) {
          dst[c * nm + m] = (ax[m] / hx + ay[m] / hy) * inv_norm2_[m];
        }
      }
    }
  });
  abort.rethrow_if();
}

}  // namespace oedg
