#include "cubepath/cube_curve.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <tuple>

namespace cubepath {

namespace {

std::string describe(const GridCube& c) {
  std::ostringstream os;
  os << '(' << c.x << ',' << c.y << ',' << c.z << ')';
  return os.str();
}

std::pair<int, int> other_axes(int axis) { return {(axis + 1) % 3, (axis + 2) % 3}; }

// The four cubes sharing the edge that starts at `origin` and runs along `axis`.
std::array<GridCube, 4> cubes_around(const GridCube& origin, int axis) {
  const auto [b, c] = other_axes(axis);
  std::array<GridCube, 4> out{};
  int k = 0;
  for (int db = 0; db <= 1; ++db) {
    for (int dc = 0; dc <= 1; ++dc) {
      GridCube g = origin;
      g[b] -= db;
      g[c] -= dc;
      out[k++] = g;
    }
  }
  return out;
}

}  // namespace

const char* to_string(CurveError::Kind kind) {
  switch (kind) {
    case CurveError::Kind::TooShort: return "TooShort";
    case CurveError::Kind::DuplicateCube: return "DuplicateCube";
    case CurveError::Kind::ChordAdjacency: return "ChordAdjacency";
    case CurveError::Kind::NotAdjacent: return "NotAdjacent";
    case CurveError::Kind::NotClosed: return "NotClosed";
  }
  return "Unknown";
}

std::optional<std::size_t> CubeCurve::find(const GridCube& c) const {
  const auto it = index_.find(c);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::ptrdiff_t CubeCurve::cyclic_offset(std::size_t a, std::size_t b) const {
  const auto n = static_cast<std::ptrdiff_t>(cubes_.size());
  std::ptrdiff_t d = (static_cast<std::ptrdiff_t>(b) - static_cast<std::ptrdiff_t>(a)) % n;
  if (d < 0) d += n;
  if (d > n / 2) d -= n;
  return d;
}

int incident_tube_cubes(const CubeCurve& curve, const GridCube& origin, Axis axis) {
  int count = 0;
  for (const GridCube& g : cubes_around(origin, index_of(axis))) count += curve.contains(g) ? 1 : 0;
  return count;
}

CubeCurve validate_curve(std::span<const GridCube> cubes) {
  using Kind = CurveError::Kind;
  const std::size_t n = cubes.size();
  if (n < 4) throw CurveError(Kind::TooShort, n, "curve needs at least 4 cubes, got " + std::to_string(n));

  CubeCurve curve;
  curve.cubes_.assign(cubes.begin(), cubes.end());
  curve.index_.reserve(n * 2);
  for (std::size_t i = 0; i < n; ++i) {
    const auto [it, inserted] = curve.index_.emplace(cubes[i], i);
    if (!inserted) {
      throw CurveError(Kind::DuplicateCube, i,
                       "cube " + describe(cubes[i]) + " at position " + std::to_string(i) +
                           " repeats position " + std::to_string(it->second));
    }
  }

  for (std::size_t i = 0; i < n; ++i) {
    int neighbours = 0;
    for (int axis = 0; axis < 3; ++axis) {
      for (int d : {-1, 1}) neighbours += curve.contains(shifted(cubes[i], axis, d)) ? 1 : 0;
    }
    if (neighbours > 2) {
      throw CurveError(Kind::ChordAdjacency, i,
                       "cube " + describe(cubes[i]) + " at position " + std::to_string(i) + " is face-adjacent to " +
                           std::to_string(neighbours) + " curve cubes");
    }
  }

  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (!face_adjacent(cubes[i], cubes[i + 1])) {
      throw CurveError(Kind::NotAdjacent, i + 1,
                       "cubes at positions " + std::to_string(i) + " and " + std::to_string(i + 1) +
                           " are not face-adjacent");
    }
  }
  if (!face_adjacent(cubes[n - 1], cubes[0])) {
    throw CurveError(Kind::NotClosed, n - 1, "last cube " + describe(cubes[n - 1]) +
                                                 " is not face-adjacent to first cube " + describe(cubes[0]));
  }

  // Each cube contributes its 12 edges; keep those with exactly three tube cubes around them.
  std::set<std::pair<GridCube, int>> seen;
  std::vector<std::tuple<std::size_t, GridCube, int>> found;
  for (std::size_t i = 0; i < n; ++i) {
    for (int axis = 0; axis < 3; ++axis) {
      const auto [b, c] = other_axes(axis);
      for (int db = 0; db <= 1; ++db) {
        for (int dc = 0; dc <= 1; ++dc) {
          GridCube origin = cubes[i];
          origin[b] += db;
          origin[c] += dc;
          if (!seen.emplace(origin, axis).second) continue;
          if (incident_tube_cubes(curve, origin, static_cast<Axis>(axis)) != 3) continue;
          std::vector<std::size_t> members;
          for (const GridCube& g : cubes_around(origin, axis)) {
            if (auto idx = curve.find(g)) members.push_back(*idx);
          }
          std::size_t corner = members.front();
          for (std::size_t m : members) {
            int adjacent = 0;
            for (std::size_t o : members) adjacent += (o != m && face_adjacent(cubes[m], cubes[o])) ? 1 : 0;
            if (adjacent == 2) corner = m;
          }
          found.emplace_back(corner, origin, axis);
        }
      }
    }
  }
  std::sort(found.begin(), found.end());
  curve.edges_.reserve(found.size());
  for (const auto& [corner, origin, axis] : found) {
    CriticalEdge e;
    e.origin = origin;
    e.axis = static_cast<Axis>(axis);
    e.corner = corner;
    e.index = curve.edges_.size();
    curve.edges_.push_back(e);
  }
  return curve;
}

std::vector<CriticalEdge> critical_edges(const CubeCurve& curve) {
  return {curve.critical_edges().begin(), curve.critical_edges().end()};
}

std::size_t CurveClassification::end_angle_count() const {
  return static_cast<std::size_t>(
      std::count_if(angles.begin(), angles.end(), [](const AngleTriple& a) { return a.kind == AngleKind::EndAngle; }));
}

std::size_t CurveClassification::middle_angle_count() const { return angles.size() - end_angle_count(); }

CurveClassification classify_angles(const CubeCurve& curve) {
  CurveClassification out;
  const std::size_t k = curve.edge_count();
  if (k < 3) return out;
  for (std::size_t j = 0; j < k; ++j) {
    const CriticalEdge& e1 = curve.edge(j);
    const CriticalEdge& e2 = curve.edge((j + 1) % k);
    const CriticalEdge& e3 = curve.edge((j + 2) % k);
    if (e1.axis == e2.axis || e2.axis == e3.axis || e1.axis == e3.axis) continue;
    // Two orthogonal grid edges are coplanar iff their lines meet, i.e. they agree along the third axis.
    const int third = index_of(e2.axis);
    AngleTriple triple;
    triple.edges = {e1.index, e2.index, e3.index};
    triple.kind = e1.origin[third] == e3.origin[third] ? AngleKind::EndAngle : AngleKind::MiddleAngle;
    out.has_end_angle = out.has_end_angle || triple.kind == AngleKind::EndAngle;
    out.angles.push_back(triple);
  }
  return out;
}

}  // namespace cubepath
