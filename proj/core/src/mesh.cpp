#include "oedg/mesh.hpp"

#include <stdexcept>
#include <string>

namespace oedg {

namespace {

std::vector<double> uniform_edges(double lo, double hi, int n, const char* what) {
  if (n < 2) {
    throw std::invalid_argument(std::string(what) + ": need at least 2 cells, got " +
                                std::to_string(n));
  }
  if (!(hi > lo)) {
    throw std::invalid_argument(std::string(what) + ": empty interval [" + std::to_string(lo) +
                                ", " + std::to_string(hi) + "]");
  }
  std::vector<double> edges(n + 1);
  double h = (hi - lo) / n;
  for (int i = 0; i <= n; ++i) edges[i] = lo + i * h;
  edges[n] = hi;  // land exactly on the right end
  return edges;
}

void check_edges(const std::vector<double>& edges, const char* what) {
  if (edges.size() < 3) {
    throw std::invalid_argument(std::string(what) + ": need at least 2 cells");
  }
  for (size_t i = 0; i + 1 < edges.size(); ++i) {
    if (!(edges[i + 1] > edges[i])) {
      throw std::invalid_argument(std::string(what) + ": edges not strictly ascending at index " +
                                  std::to_string(i));
    }
  }
}

}  // namespace

Mesh1D::Mesh1D(std::vector<double> edges, BoundaryKind left, BoundaryKind right)
    : edges_(std::move(edges)), left_(left), right_(right) {
  check_edges(edges_, "Mesh1D");
  if ((left_ == BoundaryKind::Periodic) != (right_ == BoundaryKind::Periodic)) {
    throw std::invalid_argument("Mesh1D: periodic requires both ends periodic");
  }
  widths_.resize(edges_.size() - 1);
  min_width_ = max_width_ = edges_[1] - edges_[0];
  for (size_t j = 0; j + 1 < edges_.size(); ++j) {
    widths_[j] = edges_[j + 1] - edges_[j];
    min_width_ = std::min(min_width_, widths_[j]);
    max_width_ = std::max(max_width_, widths_[j]);
  }
}

int Mesh1D::neighbor(int j, int dir) const {
  int n = num_cells();
  if (j < 0 || j >= n) throw std::out_of_range("Mesh1D::neighbor: cell out of range");
  if (dir != 1 && dir != -1) throw std::invalid_argument("Mesh1D::neighbor: dir must be ±1");
  int t = j + dir;
  if (t >= 0 && t < n) return t;
  return periodic() ? (t + n) % n : -1;
}

std::shared_ptr<const Mesh1D> build_uniform_1d(double x_lo, double x_hi, int n, BoundaryKind left,
                                               BoundaryKind right) {
  return std::make_shared<const Mesh1D>(uniform_edges(x_lo, x_hi, n, "build_uniform_1d"), left,
                                        right);
}

std::shared_ptr<const Mesh1D> build_uniform_1d(double x_lo, double x_hi, int n,
                                               BoundaryKind kind) {
  return build_uniform_1d(x_lo, x_hi, n, kind, kind);
}

Mesh2D::Mesh2D(std::vector<double> x_edges, std::vector<double> y_edges,
               std::array<BoundaryKind, 4> sides)
    : x_edges_(std::move(x_edges)), y_edges_(std::move(y_edges)), sides_(sides) {
  check_edges(x_edges_, "Mesh2D(x)");
  check_edges(y_edges_, "Mesh2D(y)");
  if ((sides_[kLeft] == BoundaryKind::Periodic) != (sides_[kRight] == BoundaryKind::Periodic)) {
    throw std::invalid_argument("Mesh2D: periodic in x requires both left and right periodic");
  }
  if ((sides_[kBottom] == BoundaryKind::Periodic) != (sides_[kTop] == BoundaryKind::Periodic)) {
    throw std::invalid_argument("Mesh2D: periodic in y requires both bottom and top periodic");
  }
  hx_.resize(x_edges_.size() - 1);
  for (size_t i = 0; i + 1 < x_edges_.size(); ++i) hx_[i] = x_edges_[i + 1] - x_edges_[i];
  hy_.resize(y_edges_.size() - 1);
  for (size_t j = 0; j + 1 < y_edges_.size(); ++j) hy_[j] = y_edges_[j + 1] - y_edges_[j];
}

int Mesh2D::neighbor_x(int i, int j, int dir) const {
  if (i < 0 || i >= nx() || j < 0 || j >= ny()) {
    throw std::out_of_range("Mesh2D::neighbor_x: cell out of range");
  }
  if (dir != 1 && dir != -1) throw std::invalid_argument("Mesh2D::neighbor_x: dir must be ±1");
  int t = i + dir;
  if (t >= 0 && t < nx()) return flat(t, j);
  return periodic_x() ? flat((t + nx()) % nx(), j) : -1;
}

int Mesh2D::neighbor_y(int i, int j, int dir) const {
  if (i < 0 || i >= nx() || j < 0 || j >= ny()) {
    throw std::out_of_range("Mesh2D::neighbor_y: cell out of range");
  }
  if (dir != 1 && dir != -1) throw std::invalid_argument("Mesh2D::neighbor_y: dir must be ±1");
  int t = j + dir;
  if (t >= 0 && t < ny()) return flat(i, t);
  return periodic_y() ? flat(i, (t + ny()) % ny()) : -1;
}

std::shared_ptr<const Mesh2D> build_uniform_2d(double x_lo, double x_hi, int nx, double y_lo,
                                               double y_hi, int ny,
                                               std::array<BoundaryKind, 4> sides) {
  return std::make_shared<const Mesh2D>(uniform_edges(x_lo, x_hi, nx, "build_uniform_2d(x)"),
                                        uniform_edges(y_lo, y_hi, ny, "build_uniform_2d(y)"),
                                        sides);
}

std::shared_ptr<const Mesh2D> build_uniform_2d(double x_lo, double x_hi, int nx, double y_lo,
                                               double y_hi, int ny, BoundaryKind all) {
  return build_uniform_2d(x_lo, x_hi, nx, y_lo, y_hi, ny, std::array<BoundaryKind, 4>{all, all, all, all});
}

}  // namespace oedg
