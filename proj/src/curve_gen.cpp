#include "cubepath/curve_gen.hpp"

#include <algorithm>
#include <array>
#include <random>
#include <unordered_map>
#include <unordered_set>

namespace cubepath {

namespace {

std::int64_t l1(const GridCube& c) { return std::abs(c.x) + std::abs(c.y) + std::abs(c.z); }

std::vector<GridCube> random_half(std::size_t steps, std::mt19937_64& rng) {
  std::vector<GridCube> walk{GridCube{0, 0, 0}};
  for (std::size_t s = 0; s < steps; ++s) {
    const GridCube& here = walk.back();
    std::array<GridCube, 6> options{};
    std::size_t count = 0;
    for (int axis = 0; axis < 3; ++axis) {
      for (int d : {-1, 1}) {
        const GridCube next = shifted(here, axis, d);
        if (l1(next) == l1(here) + 1) options[count++] = next;
      }
    }
    std::uniform_int_distribution<std::size_t> pick(0, count - 1);
    walk.push_back(options[pick(rng)]);
  }
  return walk;
}

// Straight runs from `from` to `to`, one per axis in the given order; excludes `from`.
std::vector<GridCube> straight_runs(GridCube from, const GridCube& to, const std::array<int, 3>& order) {
  std::vector<GridCube> out;
  for (int axis : order) {
    while (from[axis] != to[axis]) {
      from[axis] += from[axis] < to[axis] ? 1 : -1;
      out.push_back(from);
    }
  }
  return out;
}

}  // namespace

bool locally_adjacent_only(std::span<const GridCube> cubes, std::size_t reach) {
  const std::size_t n = cubes.size();
  std::unordered_map<GridCube, std::size_t, GridCubeHash> where;
  for (std::size_t i = 0; i < n; ++i) where.emplace(cubes[i], i);
  for (std::size_t i = 0; i < n; ++i) {
    for (int dx = -1; dx <= 1; ++dx) {
      for (int dy = -1; dy <= 1; ++dy) {
        for (int dz = -1; dz <= 1; ++dz) {
          if (dx == 0 && dy == 0 && dz == 0) continue;
          const auto it = where.find({cubes[i].x + dx, cubes[i].y + dy, cubes[i].z + dz});
          if (it == where.end()) continue;
          const std::size_t d = (it->second + n - i) % n;
          if (std::min(d, n - d) > reach) return false;
        }
      }
    }
  }
  return true;
}

std::vector<GridCube> generate_cubes(const GenConfig& cfg) {
  if (cfg.target_cubes < 8) throw std::invalid_argument("targetCubes must be >= 8");
  std::mt19937_64 rng(cfg.seed);
  const std::size_t steps = std::max<std::size_t>(2, (cfg.target_cubes - 1) / 2);
  const auto lo = static_cast<double>(cfg.target_cubes) * 0.8;
  const auto hi = static_cast<double>(cfg.target_cubes) * 1.2;

  std::array<std::array<int, 3>, 6> orders{{{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};
  for (std::size_t attempt = 0; attempt < cfg.max_attempts; ++attempt) {
    std::vector<GridCube> walk = random_half(steps, rng);
    std::unordered_set<GridCube, GridCubeHash> taken(walk.begin(), walk.end());

    std::vector<GridCube> targets;
    for (int axis = 0; axis < 3; ++axis) {
      for (int d : {-1, 1}) {
        const GridCube t = shifted(walk.front(), axis, d);
        if (t != walk[1]) targets.push_back(t);
      }
    }
    std::shuffle(targets.begin(), targets.end(), rng);
    std::shuffle(orders.begin(), orders.end(), rng);

    for (const GridCube& target : targets) {
      for (const auto& order : orders) {
        const std::vector<GridCube> closing = straight_runs(walk.back(), target, order);
        const double total = static_cast<double>(walk.size() + closing.size());
        if (closing.empty() || total < lo || total > hi) continue;
        if (std::any_of(closing.begin(), closing.end(), [&](const GridCube& c) { return taken.contains(c); })) continue;
        std::vector<GridCube> cubes = walk;
        cubes.insert(cubes.end(), closing.begin(), closing.end());
        if (!locally_adjacent_only(cubes)) continue;
        try {
          validate_curve(cubes);
        } catch (const CurveError&) {
          continue;
        }
        return cubes;
      }
    }
  }
  throw GenerationFailed(cfg.seed, cfg.max_attempts);
}

CubeCurve generate_curve(const GenConfig& cfg) {
  const auto cubes = generate_cubes(cfg);
  return validate_curve(cubes);
}

}  // namespace cubepath
