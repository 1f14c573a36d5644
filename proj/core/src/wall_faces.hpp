#pragma once

#include <cmath>
#include <stdexcept>
#include <unordered_set>
#include <vector>

#include "oedg/boundary.hpp"
#include "oedg/mesh.hpp"

namespace oedg::internal {

// Resolves interior wall segments to face indices. Segments must lie on mesh
// lines; a face is a wall face when it falls inside the segment's span.
// Face numbering: vertical face (fi, j) -> j*(nx+1)+fi, horizontal face
// (i, fj) -> fj*nx+i.
inline void resolve_wall_faces(const Mesh2D& mesh, const std::vector<InteriorWallSegment>& walls,
                               std::unordered_set<int>& wall_x, std::unordered_set<int>& wall_y) {
  for (const InteriorWallSegment& w : walls) {
    if (w.normal_axis == 0) {
      double tol = 1e-9 * mesh.hx(0);
      int fi = -1;
      for (int i = 1; i < mesh.nx(); ++i) {
        if (std::abs(mesh.x_edge(i) - w.position) < tol) fi = i;
      }
      if (fi < 0) throw std::invalid_argument("wall segment x not on a mesh line");
      for (int j = 0; j < mesh.ny(); ++j) {
        if (mesh.y_edge(j) >= w.lo - tol && mesh.y_edge(j + 1) <= w.hi + tol) {
          wall_x.insert(j * (mesh.nx() + 1) + fi);
        }
      }
    } else if (w.normal_axis == 1) {
      double tol = 1e-9 * mesh.hy(0);
      int fj = -1;
      for (int j = 1; j < mesh.ny(); ++j) {
        if (std::abs(mesh.y_edge(j) - w.position) < tol) fj = j;
      }
      if (fj < 0) throw std::invalid_argument("wall segment y not on a mesh line");
      for (int i = 0; i < mesh.nx(); ++i) {
        if (mesh.x_edge(i) >= w.lo - tol && mesh.x_edge(i + 1) <= w.hi + tol) {
          wall_y.insert(fj * mesh.nx() + i);
        }
      }
    } else {
      throw std::invalid_argument("wall normal_axis must be 0 or 1");
    }
  }
}

}  // namespace oedg::internal
