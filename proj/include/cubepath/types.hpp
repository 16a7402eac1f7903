#pragma once

#include <algorithm>
#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>

#include <Eigen/Core>
#include <Eigen/Geometry>

namespace cubepath {

template <typename Scalar>
using Point3 = Eigen::Matrix<Scalar, 3, 1>;

using Point3d = Point3<double>;

/// Lattice coordinates; also used for grid-vertex origins of edges.
using Lattice3 = Eigen::Matrix<std::int64_t, 3, 1>;

/// Boundary band for floating-point containment tests, in grid units.
struct Tolerance {
  double tau = 1e-9;

  Tolerance() = default;
  explicit Tolerance(double t) : tau(t) {
    if (!(t > 0.0) || !(t < 0.5)) throw std::invalid_argument("tolerance tau must lie in (0, 0.5)");
  }
};

enum class Axis : std::uint8_t { X = 0, Y = 1, Z = 2 };

inline int index_of(Axis a) { return static_cast<int>(a); }

inline char axis_name(Axis a) { return "XYZ"[index_of(a)]; }

/// Unit grid cube spanning [x,x+1] x [y,y+1] x [z,z+1].
struct GridCube {
  std::int64_t x = 0;
  std::int64_t y = 0;
  std::int64_t z = 0;

  std::int64_t operator[](int axis) const { return axis == 0 ? x : (axis == 1 ? y : z); }
  std::int64_t& operator[](int axis) { return axis == 0 ? x : (axis == 1 ? y : z); }

  Lattice3 lattice() const { return {x, y, z}; }

  friend auto operator<=>(const GridCube&, const GridCube&) = default;
  friend bool operator==(const GridCube&, const GridCube&) = default;
};

inline GridCube shifted(GridCube c, int axis, std::int64_t delta) {
  c[axis] += delta;
  return c;
}

/// True iff the cubes differ by exactly 1 in exactly one coordinate.
inline bool face_adjacent(const GridCube& a, const GridCube& b) {
  std::int64_t total = 0;
  for (int k = 0; k < 3; ++k) {
    const std::int64_t d = a[k] - b[k];
    if (d < -1 || d > 1) return false;
    total += d < 0 ? -d : d;
  }
  return total == 1;
}

/// Chebyshev distance between cube coordinates; 1 means 26-adjacent.
inline std::int64_t lattice_distance(const GridCube& a, const GridCube& b) {
  std::int64_t best = 0;
  for (int k = 0; k < 3; ++k) {
    const std::int64_t d = a[k] - b[k];
    best = std::max(best, d < 0 ? -d : d);
  }
  return best;
}

struct GridCubeHash {
  std::size_t operator()(const GridCube& c) const noexcept {
    std::uint64_t h = 1469598103934665603ull;
    for (std::int64_t v : {c.x, c.y, c.z}) {
      h ^= static_cast<std::uint64_t>(v) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
  }
};

/// A unit grid edge incident with exactly three cubes of a curve.
struct CriticalEdge {
  GridCube origin;  // grid vertex the edge starts at
  Axis axis = Axis::X;
  std::size_t index = 0;   // position in cyclic curve order
  std::size_t corner = 0;  // curve index of the cube adjacent to both other incident cubes

  template <typename Scalar = double>
  Point3<Scalar> start() const {
    return {Scalar(origin.x), Scalar(origin.y), Scalar(origin.z)};
  }

  template <typename Scalar = double>
  Point3<Scalar> direction() const {
    Point3<Scalar> d = Point3<Scalar>::Zero();
    d[index_of(axis)] = Scalar(1);
    return d;
  }

  template <typename Scalar = double>
  Point3<Scalar> point(Scalar t) const {
    Point3<Scalar> p = start<Scalar>();
    p[index_of(axis)] += t;
    return p;
  }

  bool same_segment(const CriticalEdge& o) const { return origin == o.origin && axis == o.axis; }
};

}  // namespace cubepath
