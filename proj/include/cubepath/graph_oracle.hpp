#pragma once

#include <cstddef>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "cubepath/cube_curve.hpp"
#include "cubepath/path.hpp"
#include "cubepath/rubberband.hpp"

namespace cubepath {

struct GraphNode {
  std::size_t edge = 0;    // critical edge (layer)
  std::size_t sample = 0;  // 0 .. m-1 along the edge
  double t = 0.0;
  Point3d position = Point3d::Zero();
};

/// Tube-visible pair of samples. For pairs on distinct edges, `from -> to` is the direction in
/// which the segment advances along the curve.
struct GraphArc {
  std::size_t from = 0;
  std::size_t to = 0;
  double weight = 0.0;
  bool same_edge = false;
};

struct SubdivisionGraph {
  std::size_t m = 0;
  std::size_t layers = 0;
  std::vector<GraphNode> nodes;  // node id = edge * m + sample
  std::vector<GraphArc> arcs;

  const GraphNode& node(std::size_t edge, std::size_t sample) const { return nodes[edge * m + sample]; }
};

class OracleError : public std::runtime_error {
 public:
  enum class Kind { InvalidSampling, TooFewCriticalEdges, Disconnected };

  OracleError(Kind kind, const std::string& what, std::size_t from_layer = 0, std::size_t to_layer = 0)
      : std::runtime_error(what), kind_(kind), from_(from_layer), to_(to_layer) {}
  Kind kind() const { return kind_; }
  /// For Disconnected: a consecutive layer pair no arc passes between.
  std::size_t from_layer() const { return from_; }
  std::size_t to_layer() const { return to_; }

 private:
  Kind kind_;
  std::size_t from_, to_;
};

struct GraphOptions {
  Tolerance tolerance{};
  /// Also connect samples lying on the same critical edge (never used by the cycle search).
  bool include_same_edge = false;
};

/// Samples each critical edge at m uniformly spaced points (midpoint for m = 1) and connects
/// every pair whose segment lies in the tube.
SubdivisionGraph build_graph(const CubeCurve& curve, std::size_t m, const GraphOptions& options = {});

struct CycleResult {
  Polyline path;  // pinned vertices in cyclic edge order
  double length = 0.0;
  std::vector<std::size_t> node_ids;
};

/// Shortest closed walk that goes once around the curve, visiting critical edges in increasing
/// cyclic order with at most one sample per edge. Exact over the graph.
CycleResult shortest_cycle(const SubdivisionGraph& graph);

struct OracleRun {
  CycleResult cycle;
  SolveResult refined;
};

/// Seeds the selected rubberband variant with the shortest cycle of the m-sample graph.
OracleRun oracle_then_rba(const CubeCurve& curve, std::size_t m, const SolverConfig& cfg);

/// `node <edge> <k> x y z` and `arc <i> <j> <w>` lines.
void write_graph(std::ostream& out, const SubdivisionGraph& graph);

}  // namespace cubepath
