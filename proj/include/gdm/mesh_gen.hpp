// Built-in mesh families on the square [-L,L]^2.
//
// Cell counts per resolution n:
//   rectangular  n x n grid                      -> n^2 cells
//   triangular   8n x 7n grid, each rectangle split into 4 triangles
//                by its centre point             -> 224 n^2 cells
//   hexagonal    Voronoi diagram of an n x n staggered lattice, boundary
//                cells clipped to the square     -> n^2 cells
//   kershaw      n x n logically rectangular grid with the standard
//                layered zigzag distortion       -> n^2 cells
//
// kershaw takes a distortion factor in [0,1); 0 recovers the rectangular
// grid with identical vertex positions.

#pragma once

#include <optional>
#include <string>

#include "gdm/mesh.hpp"

namespace gdm {

enum class MeshKind { triangular, rectangular, hexagonal, kershaw };

std::string to_string(MeshKind kind);
MeshKind mesh_kind_from_string(const std::string& name);

PolytopalMesh generate_mesh(MeshKind kind, double half_width, int resolution,
                            std::optional<double> distortion = std::nullopt);

/// Distortion used for kershaw meshes when none is given.
inline constexpr double kDefaultKershawDistortion = 0.6;

}  // namespace gdm
