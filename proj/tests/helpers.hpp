// Shared fixtures for the test suites.

#pragma once

#include <random>

#include "gdm/mesh.hpp"

namespace gdm::testing {

// single unit-square cell [0,1]^2, faces ordered bottom/right/top/left
inline PolytopalMesh unit_square_cell(const Vec2& centre = Vec2(0.5, 0.5)) {
  const std::vector<Vec2> vertices = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  const std::vector<std::array<int, 2>> faces = {{0, 1}, {1, 2}, {2, 3}, {3, 0}};
  const std::vector<std::vector<int>> cells = {{0, 1, 2, 3}};
  return build_polytopal_mesh(vertices, faces, cells, std::vector<Vec2>{centre});
}

// two unit squares sharing the face x = 1
inline PolytopalMesh two_cell_mesh() {
  const std::vector<Vec2> vertices = {{0, 0}, {1, 0}, {2, 0}, {2, 1}, {1, 1}, {0, 1}};
  const std::vector<std::array<int, 2>> faces = {
      {0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 0}, {1, 4}};
  const std::vector<std::vector<int>> cells = {{0, 6, 4, 5}, {1, 2, 3, 6}};
  return build_polytopal_mesh(vertices, faces, cells);
}

// reference triangle (0,0), (1,0), (0,1)
inline PolytopalMesh reference_triangle() {
  const std::vector<Vec2> vertices = {{0, 0}, {1, 0}, {0, 1}};
  const std::vector<std::array<int, 2>> faces = {{0, 1}, {1, 2}, {2, 0}};
  const std::vector<std::vector<int>> cells = {{0, 1, 2}};
  return build_polytopal_mesh(vertices, faces, cells);
}

inline std::mt19937& rng() {
  static std::mt19937 gen(20240811);
  return gen;
}

inline double uniform(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng());
}

}  // namespace gdm::testing
