#include "cubepath/rubberband.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <tuple>
#include <unordered_map>

#include "cubepath/tube_geometry.hpp"

namespace cubepath {

const char* to_string(Variant v) {
  switch (v) {
    case Variant::Original: return "original";
    case Variant::EdgeBased: return "edge";
    case Variant::FaceBased: return "face";
  }
  return "unknown";
}

std::optional<Variant> parse_variant(const std::string& name) {
  if (name == "original") return Variant::Original;
  if (name == "edge" || name == "edge-based") return Variant::EdgeBased;
  if (name == "face" || name == "face-based") return Variant::FaceBased;
  return std::nullopt;
}

void SolverConfig::validate() const {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) throw SolverError(SolverError::Kind::InvalidConfig, "epsilon must be > 0");
  if (max_loops < 1) throw SolverError(SolverError::Kind::InvalidConfig, "max_loops must be >= 1");
}

Polyline initialize_path(const CubeCurve& curve) {
  if (curve.edge_count() == 0) {
    throw SolverError(SolverError::Kind::NoCriticalEdges, "curve has no critical edges; no rubberband step set exists");
  }
  Polyline path;
  path.vertices.push_back(PathVertex::on_edge(curve, 0, 0.0));
  for (std::size_t j = 1; j < curve.edge_count(); ++j) {
    const Point3d& last = path.vertices.back().position;
    const CriticalEdge& e = curve.edge(j);
    const double d0 = (e.point(0.0) - last).squaredNorm();
    const double d1 = (e.point(1.0) - last).squaredNorm();
    path.vertices.push_back(PathVertex::on_edge(curve, j, d1 < d0 ? 1.0 : 0.0));
  }
  path.update_length();
  return path;
}

CriticalFace critical_face(const CubeCurve& curve, std::size_t edge) {
  const CriticalEdge& e = curve.edge(edge);
  const int a = index_of(e.axis);
  const GridCube& corner = curve.cube(e.corner);
  const std::size_t n = curve.size();
  using Key = std::tuple<GridCube, int>;
  std::optional<std::pair<Key, CriticalFace>> best;
  for (std::size_t other : {(e.corner + n - 1) % n, (e.corner + 1) % n}) {
    const GridCube& x = curve.cube(other);
    int normal = 0;
    for (int k = 0; k < 3; ++k) {
      if (x[k] != corner[k]) normal = k;
    }
    const int across = 3 - a - normal;
    const double sign = corner[across] == e.origin[across] ? 1.0 : -1.0;
    CriticalFace face;
    face.edge = edge;
    face.origin = e.start();
    face.along = e.direction();
    face.across = Point3d::Zero();
    face.across[across] = sign;
    GridCube low = e.origin;
    if (sign < 0) low[across] -= 1;
    const Key key{low, normal};
    if (!best || key < best->first) best = std::make_pair(key, face);
  }
  return best->second;
}

std::pair<double, double> face_optimize(const Point3d& prev, const Point3d& next, const CriticalFace& face,
                                        double u0, double v0) {
  double u = std::clamp(u0, 0.0, 1.0);
  double v = std::clamp(v0, 0.0, 1.0);
  for (int it = 0; it < 200; ++it) {
    const double nu = minimize_distance_sum_on_line<double>(prev, next, face.point(0.0, v), face.along, 0.0, 1.0);
    const double nv = minimize_distance_sum_on_line<double>(prev, next, face.point(nu, 0.0), face.across, 0.0, 1.0);
    const bool done = std::abs(nu - u) <= 1e-13 && std::abs(nv - v) <= 1e-13;
    u = nu;
    v = nv;
    if (done) break;
  }
  return {u, v};
}

namespace {

struct Node {
  std::size_t edge = 0;
  double u = 0.0;  // parameter along the edge
  double v = 0.0;  // face-based only: distance from the edge into the critical face
  Point3d pos = Point3d::Zero();
};

double local_length(const Point3d& a, const Point3d& p, const Point3d& b) { return (p - a).norm() + (b - p).norm(); }

class Engine {
 public:
  Engine(const CubeCurve& curve, const SolverConfig& cfg, Variant variant)
      : curve_(curve), cfg_(cfg), variant_(variant), k_(curve.edge_count()) {
    holes_.reserve(k_);
    for (const CriticalEdge& e : curve.critical_edges()) {
      holes_.push_back(missing_cube(e));
      for (int end = 0; end <= 1; ++end) {
        GridCube p = e.origin;
        p[index_of(e.axis)] += end;
        endpoints_[p].push_back({e.index, double(end)});
      }
    }
    if (variant_ == Variant::FaceBased) {
      for (std::size_t j = 0; j < k_; ++j) faces_.push_back(critical_face(curve, j));
    }
  }

  SolveResult run(const Polyline& start) {
    load(start);
    const auto t0 = std::chrono::steady_clock::now();
    RunReport report;
    report.variant = variant_;
    report.epsilon = cfg_.epsilon;
    report.lengths.push_back(total_length());
    report.broke_off_by = BreakOff::MaxLoops;
    for (std::size_t loop = 1; loop <= cfg_.max_loops; ++loop) {
      std::size_t i = 0;
      while (i < nodes_.size()) {
        ++report.vertex_visits;
        if (op1(i)) continue;
        const std::size_t placed = op2(i);
        std::size_t span = placed;
        for (std::size_t j = 0; j < span; ++j) span += op3(i + j);
        i += span;
      }
      const double before = report.lengths.back();
      const double after = total_length();
      report.lengths.push_back(after);
      report.loops = loop;
      if (before - after < cfg_.epsilon) {
        report.broke_off_by = BreakOff::Criterion;
        break;
      }
    }
    report.wall_time_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    SolveResult out;
    out.path = export_path(report);
    out.report = std::move(report);
    return out;
  }

 private:
  GridCube missing_cube(const CriticalEdge& e) const {
    const int a = index_of(e.axis);
    const int b = (a + 1) % 3, c = (a + 2) % 3;
    for (int db = 0; db <= 1; ++db) {
      for (int dc = 0; dc <= 1; ++dc) {
        GridCube g = e.origin;
        g[b] -= db;
        g[c] -= dc;
        if (!curve_.contains(g)) return g;
      }
    }
    return e.origin;
  }

  void load(const Polyline& start) {
    if (start.vertices.empty()) throw SolverError(SolverError::Kind::InvalidPath, "empty start path");
    nodes_.clear();
    for (const PathVertex& v : start.vertices) {
      if (!v.pin || v.pin->edge >= k_) {
        throw SolverError(SolverError::Kind::InvalidPath, "start path vertices must be pinned to critical edges");
      }
      Node node;
      node.edge = v.pin->edge;
      node.u = std::clamp(v.pin->t, 0.0, 1.0);
      node.pos = position(node.edge, node.u, 0.0);
      nodes_.push_back(node);
    }
    // Vertices must visit edges in strictly increasing cyclic order.
    std::size_t descents = 0;
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      const std::size_t a = nodes_[i].edge, b = nodes_[(i + 1) % nodes_.size()].edge;
      if (nodes_.size() > 1 && a == b) throw SolverError(SolverError::Kind::InvalidPath, "two vertices on one edge");
      if (b < a) ++descents;
    }
    if (nodes_.size() > 1 && descents != 1) {
      throw SolverError(SolverError::Kind::InvalidPath, "start path must follow the cyclic critical-edge order");
    }
  }

  Point3d position(std::size_t edge, double u, double v) const {
    if (variant_ == Variant::FaceBased) return faces_[edge].point(u, v);
    return curve_.edge(edge).point(u);
  }

  double total_length() const {
    double total = 0.0;
    for (std::size_t i = 0; i < nodes_.size(); ++i) total += (nodes_[(i + 1) % nodes_.size()].pos - nodes_[i].pos).norm();
    return total;
  }

  std::size_t prev_of(std::size_t i) const { return (i + nodes_.size() - 1) % nodes_.size(); }
  std::size_t next_of(std::size_t i) const { return (i + 1) % nodes_.size(); }

  // Forward cyclic distance between critical-edge indices.
  std::size_t gap(std::size_t from, std::size_t to) const { return (to + k_ - from) % k_; }

  bool feasible(const Point3d& a, const Point3d& b) const { return segment_in_tube(a, b, curve_, cfg_.tolerance); }

  // OP1: drop vertex i when its neighbours see each other through the tube (going forward).
  bool op1(std::size_t i) {
    if (nodes_.size() <= 3) return false;
    const Node& a = nodes_[prev_of(i)];
    const Node& b = nodes_[next_of(i)];
    const auto advance =
        segment_advance(a.pos, b.pos, curve_.edge(a.edge), curve_.edge(b.edge), curve_, cfg_.tolerance);
    if (!advance || *advance <= 0) return false;
    nodes_.erase(nodes_.begin() + static_cast<std::ptrdiff_t>(i));
    return true;
  }

  Node make_node(std::size_t edge, double u, double v) const { return {edge, u, v, position(edge, u, v)}; }

  // Unconstrained optimum of a node on its edge or face between two fixed points.
  Node optimum(const Point3d& a, const Point3d& b, const Node& cur) const {
    if (variant_ == Variant::FaceBased) {
      const auto [u, v] = face_optimize(a, b, faces_[cur.edge], cur.u, cur.v);
      return make_node(cur.edge, u, v);
    }
    const auto best = op3_optimize<double>(a, b, curve_.edge(cur.edge));
    return make_node(cur.edge, best.t, 0.0);
  }

  // Best reachable position for `cur` on its own edge (or face) between fixed points a and b.
  Node improve(const Point3d& a, const Point3d& b, const Node& cur) const {
    const Node target = optimum(a, b, cur);
    if (!(local_length(a, target.pos, b) < local_length(a, cur.pos, b))) return cur;
    if (variant_ == Variant::Original || (feasible(a, target.pos) && feasible(target.pos, b))) return target;
    const double span = std::max(std::abs(target.u - cur.u), std::abs(target.v - cur.v));
    double lo = 0.0, hi = 1.0;
    while ((hi - lo) * span > 1e-12) {
      const double mid = (lo + hi) / 2;
      const Node probe = make_node(cur.edge, cur.u + mid * (target.u - cur.u), cur.v + mid * (target.v - cur.v));
      (feasible(a, probe.pos) && feasible(probe.pos, b) ? lo : hi) = mid;
    }
    if (lo <= 0.0) return cur;
    return make_node(cur.edge, cur.u + lo * (target.u - cur.u), cur.v + lo * (target.v - cur.v));
  }

  // OP3: move vertex i towards its optimum; the corrected variants keep both new segments in the tube.
  // A vertex at a grid point belongs to every critical edge ending there, so each of those edges
  // lying between the neighbours is tried. When the move is blocked, the corrected variants also try
  // the optimum with vertices inserted on the blocking edges. Returns the number of inserted vertices.
  std::size_t op3(std::size_t i) {
    const Node& pa = nodes_[prev_of(i)];
    const Node& pb = nodes_[next_of(i)];
    const Point3d a = pa.pos;
    const Point3d b = pb.pos;
    const Node cur = nodes_[i];
    Node best = improve(a, b, cur);
    double best_len = local_length(a, best.pos, b);
    if (cur.v <= kSnap && (cur.u <= kSnap || cur.u >= 1.0 - kSnap)) {
      GridCube corner = curve_.edge(cur.edge).origin;
      corner[index_of(curve_.edge(cur.edge).axis)] += cur.u < 0.5 ? 0 : 1;
      const std::size_t limit = gap(pa.edge, pb.edge);
      for (const auto& [edge, t] : endpoints_.at(corner)) {
        if (edge == cur.edge || nodes_.size() < 3) continue;
        const std::size_t g = gap(pa.edge, edge);
        if (g == 0 || g >= limit) continue;
        const Node alt = improve(a, b, make_node(edge, t, 0.0));
        const double len = local_length(a, alt.pos, b);
        if (len < best_len) {
          best = alt;
          best_len = len;
        }
      }
    }
    if (variant_ != Variant::Original && nodes_.size() >= 3) {
      std::vector<Node> chain{pa, optimum(a, b, cur), pb};
      if (!(feasible(a, chain[1].pos) && feasible(chain[1].pos, b)) && repair(chain)) {
        settle(chain);
        double len = 0.0;
        for (std::size_t s = 0; s + 1 < chain.size(); ++s) len += (chain[s + 1].pos - chain[s].pos).norm();
        if (len < best_len) {
          nodes_.erase(nodes_.begin() + static_cast<std::ptrdiff_t>(i));
          nodes_.insert(nodes_.begin() + static_cast<std::ptrdiff_t>(i), chain.begin() + 1, chain.end() - 1);
          return chain.size() - 3;
        }
      }
    }
    nodes_[i] = best;
    return 0;
  }

  // Critical edge (strictly between edges `ea` and `eb`) responsible for segment ab leaving the tube.
  std::optional<std::size_t> blocking_edge(const Point3d& a, std::size_t ea, const Point3d& b, std::size_t eb) const {
    const auto walk = walk_segment(a, b, curve_, cfg_.tolerance);
    if (walk.inside) return std::nullopt;
    const Point3d d = b - a;
    const Point3d p0 = a + walk.blocked_t0 * d;
    const Point3d p1 = a + walk.blocked_t1 * d;
    const Point3d mid = (p0 + p1) / 2;
    const EdgeRange range = EdgeRange::between(ea, eb, k_);
    std::optional<std::size_t> matched, nearest;
    double matched_dist = 0.0, nearest_dist = 1.0;
    for (std::size_t s = 0; s < range.count; ++s) {
      const std::size_t j = (range.first + s) % k_;
      const CriticalEdge& e = curve_.edge(j);
      const auto [sp, se] = closest_params_segments<double>(p0, p1, e.point(0.0), e.point(1.0));
      const double dist = ((p0 + sp * (p1 - p0)) - e.point(se)).norm();
      const GridCube& hole = holes_[j];
      bool blocks = true;
      for (int c = 0; c < 3; ++c) {
        blocks = blocks && mid[c] >= double(hole[c]) - cfg_.tolerance.tau && mid[c] <= double(hole[c] + 1) + cfg_.tolerance.tau;
      }
      if (blocks && (!matched || dist < matched_dist)) {
        matched = j;
        matched_dist = dist;
      }
      if (dist <= nearest_dist) {
        nearest = j;
        nearest_dist = dist;
      }
    }
    return matched ? matched : nearest;
  }

  // Points of the hits forming the upper convex chain from a to c in the plane of triangle a, b, c.
  std::vector<EdgeHit<double>> convex_arc(const Point3d& a, const Point3d& b, const Point3d& c,
                                          const std::vector<EdgeHit<double>>& hits) const {
    const Point3d ex = (c - a).normalized();
    Point3d ey = (b - a) - (b - a).dot(ex) * ex;
    ey.normalize();
    struct P2 {
      double x, y;
      int hit;  // -1: endpoint a, -2: endpoint c
    };
    std::vector<P2> pts{{0.0, 0.0, -1}, {(c - a).norm(), 0.0, -2}};
    for (std::size_t h = 0; h < hits.size(); ++h) {
      const Point3d q = hits[h].point - a;
      const double y = q.dot(ey);
      if (y > cfg_.tolerance.tau) pts.push_back({q.dot(ex), y, static_cast<int>(h)});
    }
    if (pts.size() == 2) return {};
    std::sort(pts.begin(), pts.end(), [](const P2& p, const P2& q) { return p.x < q.x || (p.x == q.x && p.y < q.y); });
    auto cross = [](const P2& o, const P2& p, const P2& q) { return (p.x - o.x) * (q.y - o.y) - (p.y - o.y) * (q.x - o.x); };
    // Andrew's monotone chain, counter-clockwise, collinear points dropped.
    std::vector<P2> hull;
    for (int pass = 0; pass < 2; ++pass) {
      const std::size_t base = hull.size();
      for (std::size_t s = 0; s < pts.size(); ++s) {
        const P2& p = pass == 0 ? pts[s] : pts[pts.size() - 1 - s];
        while (hull.size() >= base + 2 && cross(hull[hull.size() - 2], hull.back(), p) <= 0) hull.pop_back();
        hull.push_back(p);
      }
      hull.pop_back();
    }
    const auto ia = std::find_if(hull.begin(), hull.end(), [](const P2& p) { return p.hit == -1; });
    const auto ic = std::find_if(hull.begin(), hull.end(), [](const P2& p) { return p.hit == -2; });
    if (ia == hull.end() || ic == hull.end()) return {};
    // Counter-clockwise from c back to a runs over the top; reverse it to go from a to c.
    std::vector<EdgeHit<double>> arc;
    std::size_t pos = static_cast<std::size_t>(ic - hull.begin());
    const std::size_t stop = static_cast<std::size_t>(ia - hull.begin());
    for (pos = (pos + 1) % hull.size(); pos != stop; pos = (pos + 1) % hull.size()) arc.push_back(hits[hull[pos].hit]);
    std::reverse(arc.begin(), arc.end());
    return arc;
  }

  // OP2: replace vertex i by the convex arc through critical edges crossing triangle (prev, i, next).
  // Returns the number of vertices that now stand in place of vertex i.
  std::size_t op2(std::size_t i) {
    if (nodes_.size() < 3) return 1;
    const Node a = nodes_[prev_of(i)];
    const Node cur = nodes_[i];
    const Node b = nodes_[next_of(i)];
    std::vector<EdgeHit<double>> hits;
    try {
      hits = triangle_critical_intersections<double>(a.pos, cur.pos, b.pos, curve_, EdgeRange::between(a.edge, b.edge, k_),
                                                     hit_tolerance_);
    } catch (const DegenerateTriangle&) {
      return 1;
    }
    std::erase_if(hits, [&](const EdgeHit<double>& h) { return h.edge == cur.edge; });
    if (hits.empty()) return 1;
    const auto arc = convex_arc(a.pos, cur.pos, b.pos, hits);
    if (arc.empty()) return 1;

    std::vector<Node> chain{a};
    for (const EdgeHit<double>& h : arc) {
      if (gap(a.edge, h.edge) <= gap(a.edge, chain.back().edge) && chain.size() > 1) return 1;
      chain.push_back(make_node(h.edge, h.t, 0.0));
    }
    chain.push_back(b);
    if (variant_ != Variant::Original && !repair(chain)) return 1;

    double old_len = local_length(a.pos, cur.pos, b.pos);
    double new_len = 0.0;
    for (std::size_t s = 0; s + 1 < chain.size(); ++s) new_len += (chain[s + 1].pos - chain[s].pos).norm();
    if (!(new_len < old_len)) return 1;

    nodes_.erase(nodes_.begin() + static_cast<std::ptrdiff_t>(i));
    nodes_.insert(nodes_.begin() + static_cast<std::ptrdiff_t>(i), chain.begin() + 1, chain.end() - 1);
    return chain.size() - 2;
  }

  // Inserts vertices on blocking critical edges until every segment of the chain lies in the tube.
  bool repair(std::vector<Node>& chain) const {
    std::size_t budget = k_ + 1;
    for (std::size_t s = 0; s + 1 < chain.size();) {
      if (feasible(chain[s].pos, chain[s + 1].pos)) {
        ++s;
        continue;
      }
      if (budget-- == 0) return false;
      const auto edge = blocking_edge(chain[s].pos, chain[s].edge, chain[s + 1].pos, chain[s + 1].edge);
      if (!edge) return false;
      Node probe = make_node(*edge, 0.5, 0.0);
      chain.insert(chain.begin() + static_cast<std::ptrdiff_t>(s) + 1, optimum(chain[s].pos, chain[s + 1].pos, probe));
    }
    return true;
  }

  // A few constrained OP3 sweeps over the interior of a repaired chain.
  void settle(std::vector<Node>& chain) const {
    for (int sweep = 0; sweep < 8; ++sweep) {
      for (std::size_t s = 1; s + 1 < chain.size(); ++s) chain[s] = improve(chain[s - 1].pos, chain[s + 1].pos, chain[s]);
    }
  }

  Polyline export_path(RunReport& report) const {
    Polyline out;
    for (const Node& n : nodes_) {
      if (variant_ == Variant::FaceBased && n.v > cfg_.tolerance.tau) {
        out.vertices.push_back(PathVertex::free(n.pos));
        report.all_on_edges = false;
      } else {
        // Pinned, but at the computed position (face-based nodes may sit up to tau off the edge).
        out.vertices.push_back({n.pos, EdgePin{n.edge, n.u}});
      }
    }
    out.update_length();
    return out;
  }

  // Vertices this close to a grid point may switch to another critical edge ending there.
  static constexpr double kSnap = 1e-7;

  const CubeCurve& curve_;
  SolverConfig cfg_;
  // OP2 collects candidate edges generously; every accepted arc is re-verified.
  Tolerance hit_tolerance_{std::min(0.25, cfg_.tolerance.tau * 100)};
  Variant variant_;
  std::size_t k_;
  std::vector<GridCube> holes_;
  std::unordered_map<GridCube, std::vector<std::pair<std::size_t, double>>, GridCubeHash> endpoints_;
  std::vector<CriticalFace> faces_;
  std::vector<Node> nodes_;
};

SolveResult run_variant(const Polyline& path, const CubeCurve& curve, const SolverConfig& cfg, Variant variant) {
  cfg.validate();
  if (curve.edge_count() == 0) {
    throw SolverError(SolverError::Kind::NoCriticalEdges, "curve has no critical edges; no rubberband step set exists");
  }
  return Engine(curve, cfg, variant).run(path);
}

}  // namespace

SolveResult rba_loop_original(const Polyline& path, const CubeCurve& curve, const SolverConfig& cfg) {
  return run_variant(path, curve, cfg, Variant::Original);
}

SolveResult rba_loop_edge_based(const Polyline& path, const CubeCurve& curve, const SolverConfig& cfg) {
  return run_variant(path, curve, cfg, Variant::EdgeBased);
}

SolveResult rba_loop_face_based(const Polyline& path, const CubeCurve& curve, const SolverConfig& cfg) {
  return run_variant(path, curve, cfg, Variant::FaceBased);
}

SolveResult run_rba(const Polyline& path, const CubeCurve& curve, const SolverConfig& cfg) {
  return run_variant(path, curve, cfg, cfg.variant);
}

SolveResult solve(const CubeCurve& curve, const SolverConfig& cfg) {
  cfg.validate();
  return run_rba(initialize_path(curve), curve, cfg);
}

}  // namespace cubepath
