#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "cubepath/types.hpp"

namespace cubepath {

class CurveError : public std::runtime_error {
 public:
  enum class Kind { TooShort, DuplicateCube, ChordAdjacency, NotAdjacent, NotClosed };

  CurveError(Kind kind, std::size_t position, const std::string& what)
      : std::runtime_error(what), kind_(kind), position_(position) {}

  Kind kind() const { return kind_; }
  /// Index into the input cube list where the violation was detected.
  std::size_t position() const { return position_; }

 private:
  Kind kind_;
  std::size_t position_;
};

const char* to_string(CurveError::Kind kind);

/// A validated simple cube-curve. Immutable once built; construct with validate_curve().
class CubeCurve {
 public:
  std::size_t size() const { return cubes_.size(); }
  std::span<const GridCube> cubes() const { return cubes_; }
  const GridCube& cube(std::size_t i) const { return cubes_[i]; }

  bool contains(const GridCube& c) const { return index_.contains(c); }
  /// Curve index of a tube cube, or nullopt for cells outside the tube.
  std::optional<std::size_t> find(const GridCube& c) const;

  std::span<const CriticalEdge> critical_edges() const { return edges_; }
  const CriticalEdge& edge(std::size_t i) const { return edges_[i]; }
  std::size_t edge_count() const { return edges_.size(); }

  /// Signed cyclic difference b - a of curve indices, folded into (-n/2, n/2].
  std::ptrdiff_t cyclic_offset(std::size_t a, std::size_t b) const;

 private:
  friend CubeCurve validate_curve(std::span<const GridCube> cubes);

  std::vector<GridCube> cubes_;
  std::unordered_map<GridCube, std::size_t, GridCubeHash> index_;
  std::vector<CriticalEdge> edges_;
};

/// Checks simplicity and closure, builds the tube and its critical edges.
CubeCurve validate_curve(std::span<const GridCube> cubes);

/// Number of the (up to four) cubes around a grid edge that belong to the tube.
int incident_tube_cubes(const CubeCurve& curve, const GridCube& origin, Axis axis);

/// Critical edges of a validated curve in cyclic order (same as CubeCurve::critical_edges()).
std::vector<CriticalEdge> critical_edges(const CubeCurve& curve);

enum class AngleKind { EndAngle, MiddleAngle };

struct AngleTriple {
  std::array<std::size_t, 3> edges{};
  AngleKind kind = AngleKind::MiddleAngle;
};

enum class FirstClass { Yes, No, Unknown };

struct CurveClassification {
  FirstClass first_class = FirstClass::Unknown;
  std::vector<AngleTriple> angles;
  bool has_end_angle = false;

  std::size_t end_angle_count() const;
  std::size_t middle_angle_count() const;
};

CurveClassification classify_angles(const CubeCurve& curve);

}  // namespace cubepath
