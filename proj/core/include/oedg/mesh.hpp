#pragma once

#include <array>
#include <memory>
#include <vector>

namespace oedg {

enum class BoundaryKind { Periodic, Physical };

/// Immutable 1D interval mesh. Cells are I_j = [edges[j], edges[j+1]].
class Mesh1D {
 public:
  Mesh1D(std::vector<double> edges, BoundaryKind left, BoundaryKind right);

  int num_cells() const { return static_cast<int>(widths_.size()); }
  double x_lo() const { return edges_.front(); }
  double x_hi() const { return edges_.back(); }
  double length() const { return x_hi() - x_lo(); }
  double edge(int i) const { return edges_[i]; }
  double width(int j) const { return widths_[j]; }
  double min_width() const { return min_width_; }
  double max_width() const { return max_width_; }
  double center(int j) const { return 0.5 * (edges_[j] + edges_[j + 1]); }
  BoundaryKind left_kind() const { return left_; }
  BoundaryKind right_kind() const { return right_; }
  bool periodic() const { return left_ == BoundaryKind::Periodic; }

  /// Neighbor cell in direction dir (-1 left, +1 right). Periodic meshes
  /// wrap; physical boundaries return -1.
  int neighbor(int j, int dir) const;

 private:
  std::vector<double> edges_;
  std::vector<double> widths_;
  double min_width_ = 0.0, max_width_ = 0.0;
  BoundaryKind left_, right_;
};

std::shared_ptr<const Mesh1D> build_uniform_1d(double x_lo, double x_hi, int n,
                                               BoundaryKind kind = BoundaryKind::Periodic);
std::shared_ptr<const Mesh1D> build_uniform_1d(double x_lo, double x_hi, int n, BoundaryKind left,
                                               BoundaryKind right);

/// Side order used for 2D boundary arrays.
enum Side : int { kLeft = 0, kRight = 1, kBottom = 2, kTop = 3 };

struct CellIndex2D {
  int i = 0, j = 0;  // column (x) and row (y)
};

/// Immutable tensor-product rectangular mesh. Cell (i, j) covers
/// [x_edges[i], x_edges[i+1]] x [y_edges[j], y_edges[j+1]] and has flat index
/// j * nx + i.
class Mesh2D {
 public:
  Mesh2D(std::vector<double> x_edges, std::vector<double> y_edges,
         std::array<BoundaryKind, 4> sides);

  int nx() const { return static_cast<int>(hx_.size()); }
  int ny() const { return static_cast<int>(hy_.size()); }
  int num_cells() const { return nx() * ny(); }
  double x_lo() const { return x_edges_.front(); }
  double x_hi() const { return x_edges_.back(); }
  double y_lo() const { return y_edges_.front(); }
  double y_hi() const { return y_edges_.back(); }
  double area() const { return (x_hi() - x_lo()) * (y_hi() - y_lo()); }
  double x_edge(int i) const { return x_edges_[i]; }
  double y_edge(int j) const { return y_edges_[j]; }
  double hx(int i) const { return hx_[i]; }
  double hy(int j) const { return hy_[j]; }
  double x_center(int i) const { return 0.5 * (x_edges_[i] + x_edges_[i + 1]); }
  double y_center(int j) const { return 0.5 * (y_edges_[j] + y_edges_[j + 1]); }
  BoundaryKind side_kind(Side s) const { return sides_[s]; }
  bool periodic_x() const { return sides_[kLeft] == BoundaryKind::Periodic; }
  bool periodic_y() const { return sides_[kBottom] == BoundaryKind::Periodic; }

  int flat(int i, int j) const { return j * nx() + i; }
  CellIndex2D unflat(int c) const { return {c % nx(), c / nx()}; }

  /// Neighbor in x (dir = ±1) or y; periodic wrap, -1 at physical sides.
  int neighbor_x(int i, int j, int dir) const;
  int neighbor_y(int i, int j, int dir) const;

 private:
  std::vector<double> x_edges_, y_edges_;
  std::vector<double> hx_, hy_;
  std::array<BoundaryKind, 4> sides_;
};

std::shared_ptr<const Mesh2D> build_uniform_2d(double x_lo, double x_hi, int nx, double y_lo,
                                               double y_hi, int ny,
                                               std::array<BoundaryKind, 4> sides);
std::shared_ptr<const Mesh2D> build_uniform_2d(double x_lo, double x_hi, int nx, double y_lo,
                                               double y_hi, int ny,
                                               BoundaryKind all = BoundaryKind::Periodic);

}  // namespace oedg
