#pragma once

#include <vector>

#include "cubepath/cube_curve.hpp"

namespace fixtures {

using cubepath::GridCube;

// 3x3x1 block minus its centre (1,1,0).
inline std::vector<GridCube> ring8() {
  return {{0, 0, 0}, {1, 0, 0}, {2, 0, 0}, {2, 1, 0}, {2, 2, 0}, {1, 2, 0}, {0, 2, 0}, {0, 1, 0}};
}

// 2x2x1 block: every edge touches 1, 2 or 4 of its cubes, so it has no critical edges.
inline std::vector<GridCube> ring4() { return {{0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 0}}; }

inline std::vector<GridCube> line5() { return {{0, 0, 0}, {1, 0, 0}, {2, 0, 0}, {3, 0, 0}, {4, 0, 0}}; }

// Non-planar 10-cube curve with three end angles and no middle angle.
inline std::vector<GridCube> staircase10() {
  return {{0, 0, 0},  {0, 1, 0},  {-1, 1, 0}, {-1, 1, -1}, {-1, 1, -2},
          {0, 1, -2}, {1, 1, -2}, {1, 0, -2}, {1, 0, -1},  {1, 0, 0}};
}

// 12-cube curve whose angle triples include one middle angle (edges 1, 2, 3).
inline std::vector<GridCube> twist12() {
  return {{0, 0, 0},   {-1, 0, 0},  {-1, 1, 0},  {-1, 1, -1}, {-1, 1, -2}, {-2, 1, -2},
          {-2, 0, -2}, {-2, -1, -2}, {-1, -1, -2}, {0, -1, -2}, {0, -1, -1}, {0, -1, 0}};
}

}  // namespace fixtures
