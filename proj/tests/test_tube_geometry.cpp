#include <gtest/gtest.h>

#include <random>

#include "cubepath/curve_gen.hpp"
#include "cubepath/tube_geometry.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace cubepath;

namespace {

const CubeCurve& ring8() {
  static const CubeCurve curve = validate_curve(fixtures::ring8());
  return curve;
}

Point3d cube_center(const GridCube& c) { return {c.x + 0.5, c.y + 0.5, c.z + 0.5}; }

double f_sum(const Point3d& prev, const Point3d& next, const CriticalEdge& e, double t) {
  return (prev - e.point(t)).norm() + (e.point(t) - next).norm();
}

CriticalEdge transformed(const CriticalEdge& e, const oracles::GridSymmetry& g) {
  const Point3d a = g.point(e.start()), b = g.point(e.point(1.0));
  CriticalEdge out = e;
  for (int k = 0; k < 3; ++k) {
    if (g.perm[k] == index_of(e.axis)) out.axis = static_cast<Axis>(k);
  }
  const Point3d lo = a.cwiseMin(b);
  out.origin = {std::llround(lo.x()), std::llround(lo.y()), std::llround(lo.z())};
  return out;
}

}  // namespace

TEST(Tolerance, Bounds) {
  EXPECT_DOUBLE_EQ(Tolerance{}.tau, 1e-9);
  EXPECT_THROW(Tolerance(0.0), std::invalid_argument);
  EXPECT_THROW(Tolerance(0.5), std::invalid_argument);
  EXPECT_NO_THROW(Tolerance(1e-6));
}

TEST(PointInTube, Examples) {
  const CubeCurve& curve = ring8();
  for (const GridCube& c : curve.cubes()) EXPECT_TRUE(point_in_tube(cube_center(c), curve));
  EXPECT_TRUE(point_in_tube(Point3d(1.0, 0.5, 0.5), curve));  // shared face of (0,0,0) and (1,0,0)
  EXPECT_FALSE(point_in_tube(Point3d(1.5, 1.5, 0.5), curve));
  EXPECT_TRUE(point_in_tube(Point3d(1.5, 1.0 + 5e-10, 0.5), curve));  // inside the tau band
  EXPECT_FALSE(point_in_tube(Point3d(1.5, 1.0 + 1e-8, 0.5), curve));
  EXPECT_FALSE(point_in_tube(Point3d(0.5, 0.5, 1.0 + 1e-8), curve));
}

TEST(SegmentInTube, Examples) {
  const CubeCurve& curve = ring8();
  EXPECT_TRUE(segment_in_tube(cube_center({0, 0, 0}), cube_center({1, 0, 0}), curve));
  EXPECT_FALSE(segment_in_tube(Point3d(0.5, 0.5, 0.5), Point3d(2.5, 2.5, 0.5), curve));
  EXPECT_TRUE(segment_in_tube(Point3d(1, 1, 0.5), Point3d(2, 1, 0.5), curve));
  // Degenerate segment is a point test.
  EXPECT_TRUE(segment_in_tube(Point3d(1, 1, 0.5), Point3d(1, 1, 0.5), curve));
  EXPECT_FALSE(segment_in_tube(Point3d(1.5, 1.5, 0.5), Point3d(1.5, 1.5, 0.5), curve));
  // Endpoint outside: false immediately.
  EXPECT_FALSE(segment_in_tube(Point3d(-1, 0.5, 0.5), Point3d(0.5, 0.5, 0.5), curve));
  // Cutting the hole's corner diagonally leaves the tube; running along its boundary does not.
  EXPECT_FALSE(segment_in_tube(Point3d(1.5, 0.5, 0.5), Point3d(2.5, 1.6, 0.5), curve));
  EXPECT_TRUE(segment_in_tube(Point3d(1.0, 1.0, 0.0), Point3d(1.0, 2.0, 0.0), curve));
}

TEST(SegmentInTube, AgreesWithDenseSampling) {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::size_t inside = 0, total = 0;
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    const CubeCurve curve = generate_curve({30, seed});
    const auto cubes = oracles::cube_set(curve);
    std::uniform_int_distribution<std::size_t> pick(0, curve.size() - 1), reach(0, 4);
    for (int s = 0; s < 100; ++s) {
      const std::size_t i = pick(rng), j = (i + reach(rng)) % curve.size();
      const Point3d a = curve.cube(i).lattice().cast<double>() + Point3d(unit(rng), unit(rng), unit(rng));
      const Point3d b = curve.cube(j).lattice().cast<double>() + Point3d(unit(rng), unit(rng), unit(rng));
      const bool walk = segment_in_tube(a, b, curve);
      bool dense = oracles::sampled_segment_in_cubes(a, b, cubes, 1e-9);
      if (!walk && dense) {
        // Resolve thin slivers the coarse sampling may step over.
        const auto w = walk_segment(a, b, curve);
        dense = oracles::sampled_segment_in_cubes(a + w.blocked_t0 * (b - a), a + w.blocked_t1 * (b - a), cubes, 1e-9, 1e-7);
      }
      EXPECT_EQ(walk, dense) << a.transpose() << " -> " << b.transpose();
      inside += walk ? 1 : 0;
      ++total;
    }
  }
  EXPECT_GT(inside, total / 10);
  EXPECT_LT(inside, total);
}

TEST(TriangleIntersections, TransversalHit) {
  const CubeCurve& curve = ring8();
  const CriticalEdge& e0 = curve.edge(0);
  ASSERT_EQ(e0.start(), Point3d(1, 1, 0));
  const auto hits = triangle_critical_intersections<double>(Point3d(1, 1, 0.5), Point3d(0.5, 0.5, 0.5),
                                                            Point3d(1.5, 0.5, 0.5), curve, EdgeRange{0, 4});
  ASSERT_EQ(hits.size(), 1u);
  EXPECT_EQ(hits[0].edge, 0u);
  EXPECT_NEAR(hits[0].t, 0.5, 1e-12);
  EXPECT_LE((hits[0].point - e0.point(0.5)).norm(), 1e-12);
}

TEST(TriangleIntersections, NoIncidence) {
  const auto hits = triangle_critical_intersections<double>(Point3d(0.2, 0.2, 0.2), Point3d(0.8, 0.2, 0.3),
                                                            Point3d(0.5, 0.7, 0.8), ring8(), EdgeRange{0, 4});
  EXPECT_TRUE(hits.empty());
}

TEST(TriangleIntersections, Degenerate) {
  EXPECT_THROW(triangle_critical_intersections<double>(Point3d(0, 0, 0), Point3d(1, 1, 1), Point3d(2, 2, 2), ring8(),
                                                       EdgeRange{0, 4}),
               DegenerateTriangle);
}

TEST(TriangleIntersections, Ring8AgainstSampling) {
  const CubeCurve& curve = ring8();
  const Point3d a(1, 1, 0.2), b(2, 1, 0.8), c(2, 2, 0.2);
  const auto hits = triangle_critical_intersections<double>(a, b, c, curve, EdgeRange{0, 4});
  // Sample the triangle at 1e-3 and record, per edge, the nearest sampled point.
  std::vector<double> nearest(4, 1e9);
  const int res = 1000;
  for (int i = 0; i <= res; ++i) {
    for (int j = 0; i + j <= res; ++j) {
      const Point3d p = a + (double(i) / res) * (b - a) + (double(j) / res) * (c - a);
      for (std::size_t e = 0; e < 4; ++e) {
        const CriticalEdge& edge = curve.edge(e);
        const double t = std::clamp(p.z() - edge.origin.z, 0.0, 1.0);
        nearest[e] = std::min(nearest[e], (p - edge.point(t)).norm());
      }
    }
  }
  std::vector<std::size_t> sampled, found;
  for (std::size_t e = 0; e < 4; ++e) {
    if (nearest[e] < 2e-3) sampled.push_back(e);
  }
  for (const auto& h : hits) found.push_back(h.edge);
  EXPECT_EQ(found, sampled);
  ASSERT_EQ(hits.size(), 3u);
  EXPECT_NEAR(hits[0].t, 0.2, 1e-12);
  EXPECT_NEAR(hits[1].t, 0.8, 1e-12);
  EXPECT_NEAR(hits[2].t, 0.2, 1e-12);
}

TEST(TriangleIntersections, PointsLieOnTheirEdges) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const CubeCurve curve = generate_curve({40, 2});
  std::uniform_int_distribution<std::size_t> pick(0, curve.size() - 1);
  std::size_t checked = 0;
  for (int s = 0; s < 300; ++s) {
    Point3d p[3];
    for (auto& q : p) q = curve.cube(pick(rng)).lattice().cast<double>() + Point3d(unit(rng), unit(rng), unit(rng));
    try {
      for (const auto& h : triangle_critical_intersections<double>(p[0], p[1], p[2], curve, EdgeRange{0, curve.edge_count()})) {
        EXPECT_LE((h.point - curve.edge(h.edge).point(h.t)).norm(), 1e-9);
        EXPECT_GE(h.t, 0.0);
        EXPECT_LE(h.t, 1.0);
        const Point3d on_tri = closest_point_triangle<double>(h.point, p[0], p[1], p[2]);
        EXPECT_LE((on_tri - h.point).norm(), 1e-8);
        ++checked;
      }
    } catch (const DegenerateTriangle&) {
    }
  }
  EXPECT_GT(checked, 0u);
}

TEST(Op3, Examples) {
  const CubeCurve& curve = ring8();
  CriticalEdge e;
  e.origin = {0, 0, 0};
  e.axis = Axis::Z;
  EXPECT_NEAR(op3_optimize<double>({0, -1, 0.3}, {0, 1, 0.3}, e).t, 0.3, 1e-12);
  EXPECT_NEAR(op3_optimize<double>({5, 5, 0.7}, {5, 5, 0.7}, e).t, 0.7, 1e-12);
  // Unfolding puts prev at (-1, 0) and next at (1, 1) in the (radius, z) plane: crossing at z = 1/2.
  const Point3d prev(-1, 0, 0), next(1, 0, 1);
  const double t = op3_optimize<double>(prev, next, e).t;
  EXPECT_NEAR(t, 0.5, 1e-12);
  EXPECT_NEAR(t, oracles::golden_section_edge(prev, next, e), 1e-10);
  // Constant on the edge: midpoint.
  EXPECT_NEAR(op3_optimize<double>({0, 0, -1}, {0, 0, 2}, e).t, 0.5, 1e-12);
  // Optimum beyond the edge clamps.
  EXPECT_EQ(op3_optimize<double>({1, 0, 3}, {-1, 0, 5}, e).t, 1.0);
  (void)curve;
}

TEST(Op3, FirstOrderConditionAndGoldenSection) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> coord(-3.0, 3.0);
  CriticalEdge e;
  e.origin = {0, 0, 0};
  e.axis = Axis::Y;
  for (int s = 0; s < 300; ++s) {
    const Point3d prev(coord(rng), coord(rng), coord(rng)), next(coord(rng), coord(rng), coord(rng));
    const double t = op3_optimize<double>(prev, next, e).t;
    const auto f = [&](double x) { return f_sum(prev, next, e, x); };
    const double h = 1e-7;
    const double right = (f(std::min(1.0, t + h)) - f(t)) / h;
    const double left = (f(t) - f(std::max(0.0, t - h))) / h;
    if (t > 0.0 && t < 1.0) {
      EXPECT_GE(right, -1e-6);
      EXPECT_LE(left, 1e-6);
    } else if (t == 0.0) {
      EXPECT_GE(right, -1e-10 - 1e-6);
    } else {
      EXPECT_LE(left, 1e-10 + 1e-6);
    }
    EXPECT_NEAR(t, oracles::golden_section_edge(prev, next, e), 1e-10);
  }
}

TEST(Op3, SymmetricInPrevNext) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> coord(-2.0, 2.0);
  CriticalEdge e;
  e.origin = {1, -2, 0};
  e.axis = Axis::X;
  for (int s = 0; s < 200; ++s) {
    const Point3d p(coord(rng), coord(rng), coord(rng)), q(coord(rng), coord(rng), coord(rng));
    EXPECT_NEAR(op3_optimize<double>(p, q, e).t, op3_optimize<double>(q, p, e).t, 1e-12);
  }
}

TEST(Op3, ConjugatesUnderGridSymmetries) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> coord(-2.0, 2.0);
  CriticalEdge e;
  e.origin = {0, 1, -1};
  e.axis = Axis::Z;
  const auto symmetries = oracles::all_symmetries({3, -7, 2});
  for (int s = 0; s < 20; ++s) {
    const Point3d p(coord(rng), coord(rng), coord(rng)), q(coord(rng), coord(rng), coord(rng));
    const Point3d best = op3_optimize<double>(p, q, e).point;
    for (const auto& g : symmetries) {
      const Point3d moved = op3_optimize<double>(g.point(p), g.point(q), transformed(e, g)).point;
      EXPECT_LE((moved - g.point(best)).norm(), 1e-12);
    }
  }
}

TEST(Op3, TemplatedOnScalar) {
  CriticalEdge e;
  e.axis = Axis::Z;
  const auto r = op3_optimize<long double>({-1, 0, 0}, {1, 0, 1}, e);
  EXPECT_NEAR(static_cast<double>(r.t), 0.5, 1e-15);
  const auto f = op3_optimize<float>({-1, 0, 0}, {1, 0, 1}, e);
  EXPECT_NEAR(f.t, 0.5f, 1e-6f);
}
