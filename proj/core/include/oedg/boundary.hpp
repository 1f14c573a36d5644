#pragma once

#include <array>
#include <functional>
#include <stdexcept>
#include <vector>

#include "oedg/mesh.hpp"

namespace oedg {

/// Boundary treatment at one end of a 1D domain.
///  - Periodic: both ends must be periodic and the mesh periodic.
///  - Outflow: constant ghost equal to the interior trace at the face.
///  - Reflective: solid wall for Euler; mirrors the normal momentum.
///  - Inflow: prescribed conservative state as a function of (x, t).
struct BC1D {
  enum class Kind { Periodic, Outflow, Reflective, Inflow };
  Kind kind = Kind::Periodic;
  std::function<void(double x, double t, double* state)> inflow;

  static BC1D periodic() { return {}; }
  static BC1D outflow() { return {Kind::Outflow, nullptr}; }
  static BC1D reflective() { return {Kind::Reflective, nullptr}; }
  static BC1D make_inflow(std::function<void(double, double, double*)> fn) {
    if (!fn) throw std::invalid_argument("BC1D: inflow requires a state function");
    return {Kind::Inflow, std::move(fn)};
  }
};

struct BCSet1D {
  BC1D left, right;
  bool periodic() const { return left.kind == BC1D::Kind::Periodic; }
  static BCSet1D all_periodic() { return {BC1D::periodic(), BC1D::periodic()}; }
  static BCSet1D all_outflow() { return {BC1D::outflow(), BC1D::outflow()}; }
  static BCSet1D all_reflective() { return {BC1D::reflective(), BC1D::reflective()}; }
};

/// Boundary treatment on one side of a 2D rectangle. Custom receives the
/// interior trace and the outward normal and fills the ghost state; it covers
/// mixed boundaries (for example an inflow segment inside an outflow side).
struct BC2D {
  enum class Kind { Periodic, Outflow, Reflective, Inflow, Custom };
  Kind kind = Kind::Periodic;
  /// Inflow: (x, y, t) -> ghost (interior/normal ignored).
  /// Custom: full control over the ghost state.
  std::function<void(double x, double y, double t, const double* interior, double nx, double ny,
                     double* ghost)>
      ghost_fn;

  static BC2D periodic() { return {}; }
  static BC2D outflow() { return {Kind::Outflow, nullptr}; }
  static BC2D reflective() { return {Kind::Reflective, nullptr}; }
  static BC2D make_inflow(std::function<void(double, double, double, double*)> fn) {
    if (!fn) throw std::invalid_argument("BC2D: inflow requires a state function");
    BC2D bc;
    bc.kind = Kind::Inflow;
    bc.ghost_fn = [fn = std::move(fn)](double x, double y, double t, const double*, double,
                                       double, double* ghost) { fn(x, y, t, ghost); };
    return bc;
  }
  static BC2D custom(std::function<void(double, double, double, const double*, double, double,
                                        double*)>
                         fn) {
    if (!fn) throw std::invalid_argument("BC2D: custom requires a ghost function");
    BC2D bc;
    bc.kind = Kind::Custom;
    bc.ghost_fn = std::move(fn);
    return bc;
  }
};

/// Axis-aligned slip-wall segment inside the domain (for example a plate).
/// normal_axis 0 means the wall is a vertical line x = position spanning
/// y in [lo, hi]; normal_axis 1 a horizontal line y = position, x in [lo, hi].
/// The segment must lie on mesh lines; faces on it are treated as reflective
/// walls from both sides.
struct InteriorWallSegment {
  int normal_axis = 0;
  double position = 0.0;
  double lo = 0.0, hi = 0.0;
};

struct BCSet2D {
  std::array<BC2D, 4> side;  // indexed by Side
  std::vector<InteriorWallSegment> walls;

  static BCSet2D all_periodic() { return {}; }
  static BCSet2D all_outflow() {
    BCSet2D b;
    for (auto& s : b.side) s = BC2D::outflow();
    return b;
  }
};

}  // namespace oedg
