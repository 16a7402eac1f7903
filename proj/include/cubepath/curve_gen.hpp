#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "cubepath/cube_curve.hpp"

namespace cubepath {

struct GenConfig {
  std::size_t target_cubes = 10;
  std::uint64_t seed = 1;
  std::size_t max_attempts = 10'000;
};

class GenerationFailed : public std::runtime_error {
 public:
  GenerationFailed(std::uint64_t seed, std::size_t attempts)
      : std::runtime_error("no curve generated for seed " + std::to_string(seed) + " after " + std::to_string(attempts) +
                           " attempts"),
        seed_(seed) {}
  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_;
};

/// Random half: a walk from the origin whose every step moves one unit further away in L1
/// (uniform over such steps), which keeps it simple. Closing half: at most three straight axis
/// runs back to a face neighbour of the origin. The result is a simple curve within +-20% of the
/// target size, and cubes that touch (share a vertex, edge or face) are at most three apart along
/// the curve. Deterministic in the seed.
std::vector<GridCube> generate_cubes(const GenConfig& cfg);

CubeCurve generate_curve(const GenConfig& cfg);

/// True iff every pair of 26-adjacent cubes is at most `reach` positions apart cyclically.
bool locally_adjacent_only(std::span<const GridCube> cubes, std::size_t reach = 3);

}  // namespace cubepath
