#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cubepath/cube_curve.hpp"
#include "cubepath/path.hpp"
#include "cubepath/types.hpp"

namespace cubepath {

enum class Variant { Original, EdgeBased, FaceBased };

/// "original", "edge", "face".
const char* to_string(Variant v);
/// Accepts the short names above plus "edge-based" / "face-based".
std::optional<Variant> parse_variant(const std::string& name);

struct SolverConfig {
  double epsilon = 1e-10;
  Variant variant = Variant::EdgeBased;
  std::size_t max_loops = 10'000'000;
  Tolerance tolerance{};

  /// Throws SolverError(InvalidConfig) unless epsilon > 0 and max_loops >= 1.
  void validate() const;
};

enum class BreakOff { Criterion, MaxLoops };

struct RunReport {
  /// L_0 (initial path) through L_N (after the last loop).
  std::vector<double> lengths;
  std::size_t loops = 0;
  double wall_time_ms = 0.0;
  Variant variant = Variant::EdgeBased;
  double epsilon = 0.0;
  BreakOff broke_off_by = BreakOff::Criterion;
  /// Number of vertex visits over all loops (each visit tries OP1, OP2, OP3).
  std::size_t vertex_visits = 0;
  /// Face-based runs: whether every final vertex was within tau of its critical edge.
  bool all_on_edges = true;
  /// Length of the seeding path when the run started from an oracle cycle.
  std::optional<double> seed_length;

  double initial_length() const { return lengths.empty() ? 0.0 : lengths.front(); }
  double final_length() const { return lengths.empty() ? 0.0 : lengths.back(); }
};

class SolverError : public std::runtime_error {
 public:
  enum class Kind { NoCriticalEdges, InvalidConfig, InvalidPath };

  SolverError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

struct SolveResult {
  Polyline path;
  RunReport report;
};

/// One vertex per critical edge at an endpoint: t = 0 on edge 0, then greedily the endpoint
/// nearest the previously chosen vertex.
Polyline initialize_path(const CubeCurve& curve);

/// The loop as first published: OP1, convex-arc OP2 and unconstrained OP3, no containment repair.
SolveResult rba_loop_original(const Polyline& path, const CubeCurve& curve, const SolverConfig& cfg);

/// OP2 verifies and repairs every new segment; OP3 only accepts tube-contained moves.
SolveResult rba_loop_edge_based(const Polyline& path, const CubeCurve& curve, const SolverConfig& cfg);

/// Vertices move within critical faces (unit squares holding their critical edge).
SolveResult rba_loop_face_based(const Polyline& path, const CubeCurve& curve, const SolverConfig& cfg);

/// Dispatches on cfg.variant.
SolveResult run_rba(const Polyline& path, const CubeCurve& curve, const SolverConfig& cfg);

/// initialize_path followed by run_rba.
SolveResult solve(const CubeCurve& curve, const SolverConfig& cfg);

/// Critical face assigned to an edge by the face-based variant: the square origin + u*along + v*across,
/// u, v in [0, 1], with v = 0 on the edge. Chosen as the lexicographically first face containing the
/// edge that is shared by two of its three incident tube cubes.
struct CriticalFace {
  std::size_t edge = 0;
  Point3d origin;
  Point3d along;
  Point3d across;

  Point3d point(double u, double v) const { return origin + u * along + v * across; }
};

CriticalFace critical_face(const CubeCurve& curve, std::size_t edge);

/// Minimises |prev - p| + |p - next| over the face by alternating exact 1D minimisations.
std::pair<double, double> face_optimize(const Point3d& prev, const Point3d& next, const CriticalFace& face,
                                        double u0 = 0.5, double v0 = 0.0);

}  // namespace cubepath
