#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cubepath/cube_curve.hpp"
#include "cubepath/types.hpp"

namespace cubepath {

/// Location of a vertex on a critical edge: edge.point(t).
struct EdgePin {
  std::size_t edge = 0;
  double t = 0.0;
};

struct PathVertex {
  Point3d position = Point3d::Zero();
  std::optional<EdgePin> pin;  // empty for free vertices

  static PathVertex on_edge(const CubeCurve& curve, std::size_t edge, double t) {
    return {curve.edge(edge).point(t), EdgePin{edge, t}};
  }
  static PathVertex free(const Point3d& p) { return {p, std::nullopt}; }
};

/// Closed polyline; the last vertex connects back to the first.
struct Polyline {
  std::vector<PathVertex> vertices;
  double length = 0.0;

  std::size_t size() const { return vertices.size(); }
  void update_length();
};

double path_length(const Polyline& path);

class PathNotOnCurve : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Whether every critical edge hosts exactly one pinned vertex of `path`. This is a property
/// of the computed path, not a certificate about the true shortest path.
FirstClass classify_first_class(const CubeCurve& curve, const Polyline& path);

/// Drops vertices collinear with their neighbours (within `tolerance`); for reporting only.
Polyline simplify_collinear(const Polyline& path, double tolerance = 1e-9);

struct PathHeader {
  std::string variant;
  double epsilon = 0.0;
  double length = 0.0;
  std::size_t loops = 0;
};

/// `esp variant=<v> epsilon=<e> length=<L> loops=<N>` then one `vertex x y z [edge=<i> t=<t>]` per vertex.
void write_path(std::ostream& out, const PathHeader& header, const Polyline& path);
void write_path_file(const std::string& file, const PathHeader& header, const Polyline& path);
Polyline read_path(std::istream& in, PathHeader* header = nullptr);

}  // namespace cubepath
