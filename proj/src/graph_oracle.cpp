#include "cubepath/graph_oracle.hpp"

#include <algorithm>
#include <iomanip>
#include <limits>
#include <ostream>

#include "cubepath/tube_geometry.hpp"

namespace cubepath {

SubdivisionGraph build_graph(const CubeCurve& curve, std::size_t m, const GraphOptions& options) {
  if (m < 1) throw OracleError(OracleError::Kind::InvalidSampling, "m must be >= 1");
  const std::size_t k = curve.edge_count();
  if (k < 2) {
    throw OracleError(OracleError::Kind::TooFewCriticalEdges,
                      "graph oracle needs at least 2 critical edges, curve has " + std::to_string(k));
  }
  SubdivisionGraph g;
  g.m = m;
  g.layers = k;
  g.nodes.reserve(m * k);
  for (std::size_t e = 0; e < k; ++e) {
    for (std::size_t s = 0; s < m; ++s) {
      const double t = m == 1 ? 0.5 : static_cast<double>(s) / static_cast<double>(m - 1);
      g.nodes.push_back({e, s, t, curve.edge(e).point(t)});
    }
  }
  const Tolerance& tol = options.tolerance;
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    for (std::size_t j = i + 1; j < g.nodes.size(); ++j) {
      const GraphNode& u = g.nodes[i];
      const GraphNode& v = g.nodes[j];
      const double w = (v.position - u.position).norm();
      if (u.edge == v.edge) {
        if (options.include_same_edge) g.arcs.push_back({i, j, w, true});
        continue;
      }
      const auto advance = segment_advance(u.position, v.position, curve.edge(u.edge), curve.edge(v.edge), curve, tol);
      if (!advance || *advance == 0) continue;
      if (*advance > 0) g.arcs.push_back({i, j, w, false});
      else g.arcs.push_back({j, i, w, false});
    }
  }
  return g;
}

CycleResult shortest_cycle(const SubdivisionGraph& graph) {
  const std::size_t k = graph.layers;
  const std::size_t m = graph.m;
  const std::size_t count = graph.nodes.size();
  struct Out {
    std::size_t to;
    double w;
  };
  std::vector<std::vector<Out>> out(count);
  for (const GraphArc& a : graph.arcs) {
    if (!a.same_edge) out[a.from].push_back({a.to, a.weight});
  }
  auto layer = [&](std::size_t id) { return graph.nodes[id].edge; };
  auto span = [&](std::size_t from, std::size_t to) { return (layer(to) + k - layer(from)) % k; };

  constexpr double inf = std::numeric_limits<double>::infinity();
  double best = inf;
  std::vector<std::size_t> best_cycle;
  std::vector<double> dist(count);
  std::vector<std::size_t> pred(count);
  for (std::size_t source = 0; source < count; ++source) {
    const std::size_t base = layer(source);
    std::fill(dist.begin(), dist.end(), inf);
    dist[source] = 0.0;
    double closing = inf;
    std::size_t closing_pred = source;
    // Layers in forward order from the source layer; arcs only ever advance.
    for (std::size_t offset = 0; offset < k; ++offset) {
      const std::size_t l = (base + offset) % k;
      for (std::size_t s = 0; s < m; ++s) {
        const std::size_t u = l * m + s;
        if (offset == 0 && u != source) continue;
        if (dist[u] == inf || dist[u] >= best) continue;
        for (const Out& arc : out[u]) {
          const std::size_t reach = offset + span(u, arc.to);
          const double d = dist[u] + arc.w;
          if (reach == k) {
            if (arc.to == source && d < closing) {
              closing = d;
              closing_pred = u;
            }
          } else if (reach < k && d < dist[arc.to]) {
            dist[arc.to] = d;
            pred[arc.to] = u;
          }
        }
      }
    }
    if (closing < best) {
      best = closing;
      best_cycle.clear();
      for (std::size_t v = closing_pred; v != source; v = pred[v]) best_cycle.push_back(v);
      best_cycle.push_back(source);
      std::reverse(best_cycle.begin(), best_cycle.end());
    }
  }

  if (best == inf) {
    // Find a boundary between consecutive layers that no arc crosses.
    std::vector<bool> covered(k, false);
    for (const GraphArc& a : graph.arcs) {
      if (a.same_edge) continue;
      const std::size_t from = layer(a.from);
      for (std::size_t s = 0; s < span(a.from, a.to); ++s) covered[(from + s) % k] = true;
    }
    for (std::size_t l = 0; l < k; ++l) {
      if (!covered[l]) {
        throw OracleError(OracleError::Kind::Disconnected,
                          "no tube-visible arc between critical edges " + std::to_string(l) + " and " +
                              std::to_string((l + 1) % k),
                          l, (l + 1) % k);
      }
    }
    throw OracleError(OracleError::Kind::Disconnected, "no closed cycle around the curve exists in the graph");
  }

  CycleResult result;
  result.node_ids = best_cycle;
  for (std::size_t id : best_cycle) {
    const GraphNode& n = graph.nodes[id];
    result.path.vertices.push_back({n.position, EdgePin{n.edge, n.t}});
  }
  result.path.update_length();
  result.length = result.path.length;
  return result;
}

OracleRun oracle_then_rba(const CubeCurve& curve, std::size_t m, const SolverConfig& cfg) {
  cfg.validate();
  GraphOptions options;
  options.tolerance = cfg.tolerance;
  OracleRun run;
  run.cycle = shortest_cycle(build_graph(curve, m, options));
  run.refined = run_rba(run.cycle.path, curve, cfg);
  run.refined.report.seed_length = run.cycle.length;
  return run;
}

void write_graph(std::ostream& out, const SubdivisionGraph& graph) {
  const auto precision = out.precision();
  out << std::setprecision(17);
  for (const GraphNode& n : graph.nodes) {
    out << "node " << n.edge << ' ' << n.sample << ' ' << n.position.x() << ' ' << n.position.y() << ' '
        << n.position.z() << '\n';
  }
  for (const GraphArc& a : graph.arcs) out << "arc " << a.from << ' ' << a.to << ' ' << a.weight << '\n';
  out.precision(precision);
}

}  // namespace cubepath
