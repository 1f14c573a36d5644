#pragma once

#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "oedg/boundary.hpp"
#include "oedg/dg_solution.hpp"
#include "oedg/models.hpp"

namespace oedg {

/// Semi-discrete DG operator: residual() fills `out` with the modal
/// coefficient rates of u_t = L(u) for the given law, numerical flux, and
/// boundary conditions. Instances hold precomputed basis tables and scratch
/// buffers; one instance must not be used from multiple threads at once
/// (internally the loops are parallel over cells and faces).
class Operator1D {
 public:
  Operator1D(std::shared_ptr<const Mesh1D> mesh, Model model, BCSet1D bcs, FluxKind flux, int k,
             int n_quad = 0);

  void residual(const DGSolution1D& sol, double t, DGSolution1D& out);

  const Model& model() const { return model_; }
  const BCSet1D& bcs() const { return bcs_; }
  const std::shared_ptr<const Mesh1D>& mesh() const { return mesh_; }
  int degree() const { return k_; }

 private:
  std::shared_ptr<const Mesh1D> mesh_;
  Model model_;
  BCSet1D bcs_;
  FluxKind flux_;
  int k_, n_quad_;
  std::vector<double> nodes_, weights_;
  std::vector<double> B_, D_;          // [q * (k+1) + m] values and xi-derivatives
  std::vector<double> edgeL_, edgeR_;  // phi_m(∓1/2)
  std::vector<double> inv_norm2_;
  std::vector<double> traceL_, traceR_, face_flux_;  // scratch
};

/// 2D Cartesian counterpart. Interior wall segments (slip walls) from the
/// BC set are resolved to mesh faces at construction.
class Operator2D {
 public:
  Operator2D(std::shared_ptr<const Mesh2D> mesh, Model model, BCSet2D bcs, FluxKind flux, int k,
             int n_quad = 0);

  void residual(const DGSolution2D& sol, double t, DGSolution2D& out);

  const Model& model() const { return model_; }
  const BCSet2D& bcs() const { return bcs_; }
  const std::shared_ptr<const Mesh2D>& mesh() const { return mesh_; }
  int degree() const { return k_; }

  /// Face index helpers (x-faces: fi in [0, nx], row j; y-faces: column i,
  /// fj in [0, ny]).
  int x_face_index(int fi, int j) const { return j * (mesh_->nx() + 1) + fi; }
  int y_face_index(int i, int fj) const { return fj * mesh_->nx() + i; }
  bool is_wall_x_face(int fi, int j) const { return wall_x_.count(x_face_index(fi, j)) > 0; }
  bool is_wall_y_face(int i, int fj) const { return wall_y_.count(y_face_index(i, fj)) > 0; }

 private:
  void compute_x_fluxes(const DGSolution2D& sol, double t);
  void compute_y_fluxes(const DGSolution2D& sol, double t);

  std::shared_ptr<const Mesh2D> mesh_;
  Model model_;
  BCSet2D bcs_;
  FluxKind flux_;
  int k_, n_quad_, n_modes_;
  std::vector<double> nodes_, weights_;
  std::vector<double> b1_, d1_;        // 1D tables [q * (k+1) + m]
  std::vector<double> e_lo_, e_hi_;    // phi_m(∓1/2), m <= k
  // 2D mode tables, flattened [q2 * n_modes + m] (q2 = qx * n_quad + qy).
  std::vector<double> V_, GX_, GY_;
  // Face tables [q * n_modes + m].
  std::vector<double> FXlo_, FXhi_, FYlo_, FYhi_;
  std::vector<double> inv_norm2_;
  std::unordered_set<int> wall_x_, wall_y_;
  std::unordered_map<int, std::vector<double>> wall_x_right_, wall_y_right_;
  std::vector<double> flux_x_, flux_y_;  // [face * n_quad * n_comp]
};

}  // namespace oedg
