#pragma once

#include <memory>
#include <vector>

#include "oedg/basis.hpp"
#include "oedg/boundary.hpp"
#include "oedg/dg_solution.hpp"
#include "oedg/mesh.hpp"
#include "oedg/models.hpp"

namespace oedg {

// Which damping coefficient drives the exponential modal filter.
//   ScaleInvariant: interface jumps of all derivative orders, divided by the
//     global deviation norm of the solution, so the damping is unchanged
//     under u -> lambda*u + mu.
//   Legacy: the older jump-energy coefficient with a global mesh width and no
//     normalization; kept as a comparison tool, not scale-invariant.
enum class DampingVariant { ScaleInvariant, Legacy };

struct DeviationStats {
  double avg = 0.0;   // mean of the component over the whole domain
  double norm = 0.0;  // max |u - avg| over the fixed per-cell sample set
};

// Post-stage oscillation filter. Damps modes 1..k of each cell by exact
// exponential factors built from interface jumps; mode 0 (the cell average)
// is never touched, so the filter conserves mass exactly.
class OEFilter1D {
 public:
  OEFilter1D(std::shared_ptr<const Mesh1D> mesh, Model model, BCSet1D bcs, int k);

  // Damps sol in place over one full step tau. t is the stage time, used
  // only to evaluate inflow boundary states.
  void apply(DGSolution1D& sol, double tau, double t, DampingVariant variant) const;

  // Domain average and sampled max deviation of one component.
  DeviationStats deviation(const DGSolution1D& sol, int comp) const;

  // sigma: [cell*(k+1) + m], already maximized over components.
  // beta: [cell], wave speed at the cell-average state.
  void compute_profile(const DGSolution1D& sol, double t, DampingVariant variant,
                       std::vector<double>& sigma, std::vector<double>& beta) const;

  int degree() const { return k_; }

 private:
  void interface_jumps(const DGSolution1D& sol, double t, std::vector<double>& jumps) const;

  std::shared_ptr<const Mesh1D> mesh_;
  Model model_;
  BCSet1D bcs_;
  int k_;
  double h_global_;
  std::vector<double> sample_xi_;      // deviation-norm sample points
  std::vector<double> sample_basis_;   // [sample*(k+1) + m]
  std::vector<double> edge_lo_;        // [d*(k+1) + m] = d-th ref derivative at xi=-1/2
  std::vector<double> edge_hi_;        // [d*(k+1) + m] at xi=+1/2
  std::vector<double> pre_;            // (2m+1)/((2k-1) m!)
};

class OEFilter2D {
 public:
  OEFilter2D(std::shared_ptr<const Mesh2D> mesh, Model model, BCSet2D bcs, int k);

  void apply(DGSolution2D& sol, double tau, double t, DampingVariant variant) const;

  DeviationStats deviation(const DGSolution2D& sol, int comp) const;

  // delta: [cell*(k+1) + m], units 1/time, already maximized over components.
  void compute_profile(const DGSolution2D& sol, double t, DampingVariant variant,
                       std::vector<double>& delta) const;

  int degree() const { return k_; }

 private:
  // Per-face damping contributions, per component: [face*nc*(k+1) + c*(k+1) + m].
  void face_sigmas_x(const DGSolution2D& sol, double t, DampingVariant variant,
                     const std::vector<DeviationStats>& dev, std::vector<double>& out) const;
  void face_sigmas_y(const DGSolution2D& sol, double t, DampingVariant variant,
                     const std::vector<DeviationStats>& dev, std::vector<double>& out) const;

  int x_face_index(int fi, int j) const { return j * (mesh_->nx() + 1) + fi; }
  int y_face_index(int i, int fj) const { return fj * mesh_->nx() + i; }

  std::shared_ptr<const Mesh2D> mesh_;
  Model model_;
  BCSet2D bcs_;
  int k_;
  double hx_global_, hy_global_;
  std::vector<double> sample_s_;      // 1D sample points, tensorized for the norm
  std::vector<double> sample_basis_;  // [sample*(k+1) + m]
  std::vector<double> edge_table_;    // [(d*(k+1) + m)*2 + s]: d-th deriv at s=0:-1/2, s=1:+1/2
  std::vector<double> pre_;           // (2m+1)/((2k-1) m!)
  std::vector<int> wall_x_faces_, wall_y_faces_;  // sorted interior wall faces
};

}  // namespace oedg
