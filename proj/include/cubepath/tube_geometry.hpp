#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

#include "cubepath/cube_curve.hpp"
#include "cubepath/types.hpp"

namespace cubepath {

template <typename Scalar>
struct Segment3 {
  Point3<Scalar> a;
  Point3<Scalar> b;
};

using Segment3d = Segment3<double>;

namespace detail {

// Inclusive range of cell indices along one axis whose closed unit interval lies within tau of x.
template <typename Scalar>
std::pair<std::int64_t, std::int64_t> cell_span(Scalar x, double tau) {
  const auto lo = static_cast<std::int64_t>(std::ceil(static_cast<double>(x) - tau)) - 1;
  const auto hi = static_cast<std::int64_t>(std::floor(static_cast<double>(x) + tau));
  return {lo, hi};
}

template <typename Scalar, typename Visit>
bool for_each_cell_near(const Point3<Scalar>& p, double tau, Visit&& visit) {
  const auto [x0, x1] = cell_span(p.x(), tau);
  const auto [y0, y1] = cell_span(p.y(), tau);
  const auto [z0, z1] = cell_span(p.z(), tau);
  for (auto x = x0; x <= x1; ++x)
    for (auto y = y0; y <= y1; ++y)
      for (auto z = z0; z <= z1; ++z)
        if (visit(GridCube{x, y, z})) return true;
  return false;
}

}  // namespace detail

/// Curve index of some tube cube whose closed extent (widened by tau) holds p.
template <typename Scalar>
std::optional<std::size_t> tube_cube_at(const Point3<Scalar>& p, const CubeCurve& curve, const Tolerance& tol = {}) {
  std::optional<std::size_t> hit;
  detail::for_each_cell_near(p, tol.tau, [&](const GridCube& g) {
    hit = curve.find(g);
    return hit.has_value();
  });
  return hit;
}

template <typename Scalar>
bool point_in_tube(const Point3<Scalar>& p, const CubeCurve& curve, const Tolerance& tol = {}) {
  if (!p.allFinite()) return false;
  return detail::for_each_cell_near(p, tol.tau, [&](const GridCube& g) { return curve.contains(g); });
}

/// Outcome of walking a segment through the grid cells it meets.
template <typename Scalar>
struct SegmentWalk {
  bool inside = true;
  // First open sub-interval [t0, t1] of the segment parameter not covered by the tube.
  Scalar blocked_t0 = 0;
  Scalar blocked_t1 = 0;
  // Curve indices of the tube cubes met first and last, and the net cyclic index advance between them.
  std::size_t first_cube = 0;
  std::size_t last_cube = 0;
  std::ptrdiff_t advance = 0;
};

/// Splits the segment where it crosses a grid plane or either plane at distance tau from one, and
/// tests each open piece against the tube. Inside each piece the set of tau-widened cells containing
/// the segment is constant, so the piece's midpoint decides it.
template <typename Scalar>
SegmentWalk<Scalar> walk_segment(const Point3<Scalar>& a, const Point3<Scalar>& b, const CubeCurve& curve,
                                 const Tolerance& tol = {}) {
  SegmentWalk<Scalar> walk;
  const Point3<Scalar> d = b - a;
  std::vector<Scalar> cuts{Scalar(0), Scalar(1)};
  for (int k = 0; k < 3; ++k) {
    if (d[k] == Scalar(0)) continue;
    const Scalar lo = std::min(a[k], b[k]);
    const Scalar hi = std::max(a[k], b[k]);
    // Widened cell membership changes at g - tau and g + tau as well as at g.
    for (Scalar g = std::floor(lo - Scalar(tol.tau)); g <= std::ceil(hi + Scalar(tol.tau)); g += 1) {
      for (const Scalar plane : {g - Scalar(tol.tau), g, g + Scalar(tol.tau)}) {
        if (plane > lo && plane < hi) cuts.push_back((plane - a[k]) / d[k]);
      }
    }
  }
  std::sort(cuts.begin(), cuts.end());

  bool have_cube = false;
  auto note = [&](std::size_t idx) {
    if (!have_cube) {
      walk.first_cube = walk.last_cube = idx;
      have_cube = true;
      return;
    }
    walk.advance += curve.cyclic_offset(walk.last_cube, idx);
    walk.last_cube = idx;
  };

  if (const auto start = tube_cube_at(a, curve, tol)) {
    note(*start);
  } else {
    walk.inside = false;
    return walk;
  }
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const Scalar t0 = cuts[i];
    const Scalar t1 = cuts[i + 1];
    if (!(t1 > t0)) continue;
    const Point3<Scalar> mid = a + d * ((t0 + t1) / 2);
    if (const auto idx = tube_cube_at(mid, curve, tol)) {
      note(*idx);
    } else {
      walk.inside = false;
      walk.blocked_t0 = t0;
      walk.blocked_t1 = t1;
      return walk;
    }
  }
  if (const auto end = tube_cube_at(b, curve, tol)) {
    note(*end);
  } else {
    walk.inside = false;
    walk.blocked_t0 = walk.blocked_t1 = Scalar(1);
  }
  return walk;
}

template <typename Scalar>
bool segment_in_tube(const Segment3<Scalar>& s, const CubeCurve& curve, const Tolerance& tol = {}) {
  if (!point_in_tube(s.a, curve, tol) || !point_in_tube(s.b, curve, tol)) return false;
  return walk_segment(s.a, s.b, curve, tol).inside;
}

template <typename Scalar>
bool segment_in_tube(const Point3<Scalar>& a, const Point3<Scalar>& b, const CubeCurve& curve,
                     const Tolerance& tol = {}) {
  return segment_in_tube(Segment3<Scalar>{a, b}, curve, tol);
}

/// Net signed number of curve cubes a tube-contained segment advances from the corner cube of
/// `from` to the corner cube of `to`; nullopt if the segment leaves the tube.
template <typename Scalar>
std::optional<std::ptrdiff_t> segment_advance(const Point3<Scalar>& a, const Point3<Scalar>& b,
                                              const CriticalEdge& from, const CriticalEdge& to,
                                              const CubeCurve& curve, const Tolerance& tol = {}) {
  const auto walk = walk_segment(a, b, curve, tol);
  if (!walk.inside) return std::nullopt;
  return curve.cyclic_offset(from.corner, walk.first_cube) + walk.advance +
         curve.cyclic_offset(walk.last_cube, to.corner);
}

template <typename Scalar>
Scalar distance_point_segment(const Point3<Scalar>& p, const Point3<Scalar>& a, const Point3<Scalar>& b) {
  const Point3<Scalar> ab = b - a;
  const Scalar len2 = ab.squaredNorm();
  Scalar t = len2 > Scalar(0) ? (p - a).dot(ab) / len2 : Scalar(0);
  t = std::clamp(t, Scalar(0), Scalar(1));
  return (a + t * ab - p).norm();
}

/// Closest points between segments p1q1 and p2q2; returns (s, t) parameters.
template <typename Scalar>
std::pair<Scalar, Scalar> closest_params_segments(const Point3<Scalar>& p1, const Point3<Scalar>& q1,
                                                  const Point3<Scalar>& p2, const Point3<Scalar>& q2) {
  const Point3<Scalar> d1 = q1 - p1;
  const Point3<Scalar> d2 = q2 - p2;
  const Point3<Scalar> r = p1 - p2;
  const Scalar a = d1.squaredNorm();
  const Scalar e = d2.squaredNorm();
  const Scalar f = d2.dot(r);
  const Scalar tiny = std::numeric_limits<Scalar>::epsilon();
  Scalar s = 0;
  Scalar t = 0;
  if (a <= tiny && e <= tiny) return {s, t};
  if (a <= tiny) {
    t = std::clamp(f / e, Scalar(0), Scalar(1));
    return {s, t};
  }
  const Scalar c = d1.dot(r);
  if (e <= tiny) {
    s = std::clamp(-c / a, Scalar(0), Scalar(1));
    return {s, t};
  }
  const Scalar b = d1.dot(d2);
  const Scalar denom = a * e - b * b;
  s = denom > tiny * a * e ? std::clamp((b * f - c * e) / denom, Scalar(0), Scalar(1)) : Scalar(0);
  t = (b * s + f) / e;
  if (t < 0) {
    t = 0;
    s = std::clamp(-c / a, Scalar(0), Scalar(1));
  } else if (t > 1) {
    t = 1;
    s = std::clamp((b - c) / a, Scalar(0), Scalar(1));
  }
  return {s, t};
}

/// Closest point on triangle abc to p.
template <typename Scalar>
Point3<Scalar> closest_point_triangle(const Point3<Scalar>& p, const Point3<Scalar>& a, const Point3<Scalar>& b,
                                      const Point3<Scalar>& c) {
  const Point3<Scalar> ab = b - a, ac = c - a, ap = p - a;
  const Scalar d1 = ab.dot(ap), d2 = ac.dot(ap);
  if (d1 <= 0 && d2 <= 0) return a;
  const Point3<Scalar> bp = p - b;
  const Scalar d3 = ab.dot(bp), d4 = ac.dot(bp);
  if (d3 >= 0 && d4 <= d3) return b;
  const Scalar vc = d1 * d4 - d3 * d2;
  if (vc <= 0 && d1 >= 0 && d3 <= 0) return a + ab * (d1 / (d1 - d3));
  const Point3<Scalar> cp = p - c;
  const Scalar d5 = ab.dot(cp), d6 = ac.dot(cp);
  if (d6 >= 0 && d5 <= d6) return c;
  const Scalar vb = d5 * d2 - d1 * d6;
  if (vb <= 0 && d2 >= 0 && d6 <= 0) return a + ac * (d2 / (d2 - d6));
  const Scalar va = d3 * d6 - d5 * d4;
  if (va <= 0 && (d4 - d3) >= 0 && (d5 - d6) >= 0) return b + (c - b) * ((d4 - d3) / ((d4 - d3) + (d5 - d6)));
  const Scalar denom = Scalar(1) / (va + vb + vc);
  return a + ab * (vb * denom) + ac * (vc * denom);
}

class DegenerateTriangle : public std::runtime_error {
 public:
  DegenerateTriangle() : std::runtime_error("triangle vertices are collinear") {}
};

/// Cyclic run of critical-edge indices: first, first+1, ..., first+count-1 (mod edge count).
struct EdgeRange {
  std::size_t first = 0;
  std::size_t count = 0;

  /// Edges strictly between `from` and `to` going forward.
  static EdgeRange between(std::size_t from, std::size_t to, std::size_t edge_count) {
    const std::size_t gap = (to + edge_count - from) % edge_count;
    return {(from + 1) % edge_count, gap == 0 ? 0 : gap - 1};
  }
};

template <typename Scalar>
struct EdgeHit {
  std::size_t edge = 0;
  Scalar t = 0;
  Point3<Scalar> point;
};

/// Intersections of the closed triangle abc with the critical edges in `range`, in cyclic order.
/// A coplanar overlap contributes its point closest to segment ac.
template <typename Scalar>
std::vector<EdgeHit<Scalar>> triangle_critical_intersections(const Point3<Scalar>& a, const Point3<Scalar>& b,
                                                             const Point3<Scalar>& c, const CubeCurve& curve,
                                                             EdgeRange range, const Tolerance& tol = {}) {
  const Point3<Scalar> normal = (b - a).cross(c - a);
  const Scalar scale = (b - a).norm() * (c - a).norm();
  const Scalar nlen = normal.norm();
  if (!(nlen > Scalar(tol.tau) * std::max(scale, Scalar(1)))) throw DegenerateTriangle();
  const Point3<Scalar> unit_normal = normal / nlen;
  const Scalar tau = Scalar(tol.tau);

  std::vector<EdgeHit<Scalar>> hits;
  const std::size_t k = curve.edge_count();
  for (std::size_t step = 0; step < range.count && k > 0; ++step) {
    const CriticalEdge& e = curve.edge((range.first + step) % k);
    const Point3<Scalar> o = e.template start<Scalar>();
    const Point3<Scalar> u = e.template direction<Scalar>();
    const Scalar denom = unit_normal.dot(u);
    const Scalar height = unit_normal.dot(o - a);
    if (std::abs(denom) > tau) {
      const Scalar s = std::clamp(-height / denom, Scalar(0), Scalar(1));
      const Point3<Scalar> p = e.point(s);
      if ((closest_point_triangle(p, a, b, c) - p).norm() <= tau) hits.push_back({e.index, s, p});
      continue;
    }
    if (std::abs(height) > tau) continue;
    // Edge lies in the triangle's plane: clip its parameter interval against the three sides.
    Scalar lo = 0, hi = 1;
    const std::array<std::array<Point3<Scalar>, 2>, 3> sides{{{a, b}, {b, c}, {c, a}}};
    for (const auto& side : sides) {
      const Point3<Scalar> inward = unit_normal.cross(side[1] - side[0]);
      const Scalar len = (side[1] - side[0]).norm();
      const Scalar base = inward.dot(o - side[0]) / len;
      const Scalar slope = inward.dot(u) / len;
      if (std::abs(slope) <= std::numeric_limits<Scalar>::epsilon()) {
        if (base < -tau) lo = Scalar(1), hi = Scalar(0);
        continue;
      }
      const Scalar root = (-tau - base) / slope;
      if (slope > 0) lo = std::max(lo, root);
      else hi = std::min(hi, root);
    }
    if (lo > hi) continue;
    const auto [s, ignored] = closest_params_segments<Scalar>(e.point(lo), e.point(hi), a, c);
    const Scalar t = lo + s * (hi - lo);
    hits.push_back({e.index, t, e.point(t)});
  }
  return hits;
}

/// Minimiser of |prev - (origin + s dir)| + |origin + s dir - next| over s in [lo, hi]; `dir` is a unit vector.
/// Unfolds `next` about the line into the half-plane opposite `prev` and intersects the straight segment.
template <typename Scalar>
Scalar minimize_distance_sum_on_line(const Point3<Scalar>& prev, const Point3<Scalar>& next,
                                     const Point3<Scalar>& origin, const Point3<Scalar>& dir, Scalar lo, Scalar hi) {
  const Scalar sp = (prev - origin).dot(dir);
  const Scalar sn = (next - origin).dot(dir);
  const Scalar rp = (prev - origin - sp * dir).norm();
  const Scalar rn = (next - origin - sn * dir).norm();
  Scalar s;
  if (rp + rn > Scalar(0)) {
    s = sp + (sn - sp) * (rp / (rp + rn));
  } else {
    // Both points on the line: the sum is constant between them.
    const Scalar a = std::max(lo, std::min(sp, sn));
    const Scalar b = std::min(hi, std::max(sp, sn));
    s = a <= b ? (a + b) / 2 : (sp + sn) / 2;
  }
  if (!std::isfinite(static_cast<double>(s))) {
    // Derivative bisection; f is convex so its derivative changes sign once.
    auto slope = [&](Scalar x) {
      const Point3<Scalar> q = origin + x * dir;
      Scalar g = 0;
      if (const Scalar dp = (q - prev).norm(); dp > 0) g += (q - prev).dot(dir) / dp;
      if (const Scalar dn = (q - next).norm(); dn > 0) g += (q - next).dot(dir) / dn;
      return g;
    };
    Scalar a = lo, b = hi;
    for (int it = 0; it < 200 && b - a > Scalar(1e-15); ++it) {
      const Scalar m = (a + b) / 2;
      (slope(m) > 0 ? b : a) = m;
    }
    s = (a + b) / 2;
  }
  return std::clamp(s, lo, hi);
}

template <typename Scalar>
struct EdgeOptimum {
  Scalar t = 0;
  Point3<Scalar> point;
};

/// OP3: optimal position on critical edge e between the neighbouring path vertices.
template <typename Scalar>
EdgeOptimum<Scalar> op3_optimize(const Point3<Scalar>& prev, const Point3<Scalar>& next, const CriticalEdge& e) {
  const Scalar t = minimize_distance_sum_on_line<Scalar>(prev, next, e.template start<Scalar>(),
                                                         e.template direction<Scalar>(), Scalar(0), Scalar(1));
  return {t, e.point(t)};
}

}  // namespace cubepath
