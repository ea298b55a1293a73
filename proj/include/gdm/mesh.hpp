// Polytopal meshes of 2D domains: cells are star-shaped polygons with a
// designated centre, faces are straight segments carrying measures, centroids
// and outward normals. Construction validates the geometric identities every
// discretisation built on top relies on.

#pragma once

#include <array>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "gdm/errors.hpp"

namespace gdm {

using Vec2 = Eigen::Vector2d;
using Mat2 = Eigen::Matrix2d;

struct Face {
  std::array<int, 2> vertices{-1, -1};
  double measure = 0.0;      // |sigma|
  Vec2 centroid = Vec2::Zero();
  std::array<int, 2> cells{-1, -1};  // incident cells, second is -1 on the boundary

  bool boundary() const { return cells[1] < 0; }
};

struct Cell {
  std::vector<int> faces;      // ordered counter-clockwise along the boundary
  std::vector<int> vertices;   // CCW cycle; vertices[i] is the first endpoint of faces[i]
  Vec2 centre = Vec2::Zero();  // x_K, strictly inside
  double measure = 0.0;        // |K|
  double diameter = 0.0;       // h_K
  std::vector<Vec2> normals;        // outward unit normal per local face
  std::vector<double> face_distance;  // orthogonal distance d_{K,sigma} > 0

  int local_face(int face_id) const;
};

struct MeshTolerances {
  double closure_abs = 1e-12;   // | sum |sigma| n_{K,sigma} |
  double identity_rel = 1e-12;  // sum |sigma| n (x_sigma - x_K)^T = |K| Id
};

class PolytopalMesh {
 public:
  PolytopalMesh() = default;
  PolytopalMesh(std::vector<Vec2> vertices, std::vector<Face> faces,
                std::vector<Cell> cells);

  int n_vertices() const { return static_cast<int>(vertices_.size()); }
  int n_faces() const { return static_cast<int>(faces_.size()); }
  int n_cells() const { return static_cast<int>(cells_.size()); }

  const Vec2& vertex(int i) const { return vertices_[i]; }
  const Face& face(int i) const { return faces_[i]; }
  const Cell& cell(int i) const { return cells_[i]; }

  const std::vector<Vec2>& vertices() const { return vertices_; }
  const std::vector<Face>& faces() const { return faces_; }
  const std::vector<Cell>& cells() const { return cells_; }

  double h_max() const { return h_max_; }
  double total_area() const { return total_area_; }

 private:
  std::vector<Vec2> vertices_;
  std::vector<Face> faces_;
  std::vector<Cell> cells_;
  double h_max_ = 0.0;
  double total_area_ = 0.0;
};

/// Assembles a mesh from raw connectivity, computing all derived geometry
/// (measures, centroids, normals, orthogonal distances) and validating the
/// cell/face invariants. Cell centres default to the polygon area centroid.
PolytopalMesh build_polytopal_mesh(
    const std::vector<Vec2>& vertices,
    const std::vector<std::array<int, 2>>& face_vertices,
    const std::vector<std::vector<int>>& cell_faces,
    const std::optional<std::vector<Vec2>>& cell_centres = std::nullopt,
    const MeshTolerances& tol = {});

}  // namespace gdm
