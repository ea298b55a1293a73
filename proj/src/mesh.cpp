#include "gdm/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

namespace gdm {

int Cell::local_face(int face_id) const {
  for (std::size_t i = 0; i < faces.size(); ++i)
    if (faces[i] == face_id) return static_cast<int>(i);
  return -1;
}

PolytopalMesh::PolytopalMesh(std::vector<Vec2> vertices, std::vector<Face> faces,
                             std::vector<Cell> cells)
    : vertices_(std::move(vertices)), faces_(std::move(faces)), cells_(std::move(cells)) {
  for (const Cell& K : cells_) {
    h_max_ = std::max(h_max_, K.diameter);
    total_area_ += K.measure;
  }
}

namespace {

// Orders the faces of one cell into a single closed vertex cycle. Throws
// NonClosedCell if the faces do not form exactly one simple loop.
void order_cell_loop(int cell_id, const std::vector<int>& face_ids,
                     const std::vector<std::array<int, 2>>& face_vertices,
                     std::vector<int>& loop_faces, std::vector<int>& loop_vertices) {
  const std::string where = "cell " + std::to_string(cell_id);
  if (face_ids.size() < 3) throw NonClosedCell(where + ": fewer than 3 faces");

  // each vertex of the cell must be shared by exactly two of its faces
  std::map<int, std::array<int, 2>> at_vertex;  // vertex -> two local face ids
  for (std::size_t lf = 0; lf < face_ids.size(); ++lf) {
    const auto& fv = face_vertices[face_ids[lf]];
    if (fv[0] == fv[1]) throw NonClosedCell(where + ": degenerate face");
    for (int v : fv) {
      auto [it, fresh] = at_vertex.try_emplace(v, std::array<int, 2>{-1, -1});
      auto& slots = it->second;
      if (slots[0] < 0) slots[0] = static_cast<int>(lf);
      else if (slots[1] < 0) slots[1] = static_cast<int>(lf);
      else throw NonClosedCell(where + ": vertex " + std::to_string(v) + " on >2 faces");
      (void)fresh;
    }
  }
  for (const auto& [v, slots] : at_vertex)
    if (slots[1] < 0)
      throw NonClosedCell(where + ": dangling vertex " + std::to_string(v));

  // walk the loop starting from face 0
  loop_faces.clear();
  loop_vertices.clear();
  std::vector<bool> used(face_ids.size(), false);
  int lf = 0;
  int v = face_vertices[face_ids[0]][0];
  for (std::size_t step = 0; step < face_ids.size(); ++step) {
    loop_faces.push_back(face_ids[lf]);
    loop_vertices.push_back(v);
    used[lf] = true;
    const auto& fv = face_vertices[face_ids[lf]];
    int next_v = (fv[0] == v) ? fv[1] : fv[0];
    const auto& slots = at_vertex.at(next_v);
    int next_lf = (slots[0] == lf) ? slots[1] : slots[0];
    lf = next_lf;
    v = next_v;
  }
  if (v != loop_vertices.front() || !std::all_of(used.begin(), used.end(), [](bool b) { return b; }))
    throw NonClosedCell(where + ": faces do not form a single closed loop");
}

}  // namespace

PolytopalMesh build_polytopal_mesh(const std::vector<Vec2>& vertices,
                                   const std::vector<std::array<int, 2>>& face_vertices,
                                   const std::vector<std::vector<int>>& cell_faces,
                                   const std::optional<std::vector<Vec2>>& cell_centres,
                                   const MeshTolerances& tol) {
  const int nv = static_cast<int>(vertices.size());
  const int nf = static_cast<int>(face_vertices.size());
  const int nc = static_cast<int>(cell_faces.size());

  for (const Vec2& p : vertices)
    if (!p.allFinite()) throw ValidationError("non-finite vertex coordinate");
  if (cell_centres && static_cast<int>(cell_centres->size()) != nc)
    throw ValidationError("cell centre list size mismatch");

  std::vector<Face> faces(nf);
  for (int f = 0; f < nf; ++f) {
    const auto& fv = face_vertices[f];
    if (fv[0] < 0 || fv[0] >= nv || fv[1] < 0 || fv[1] >= nv)
      throw ValidationError("face " + std::to_string(f) + ": vertex index out of range");
    faces[f].vertices = fv;
    faces[f].measure = (vertices[fv[1]] - vertices[fv[0]]).norm();
    faces[f].centroid = 0.5 * (vertices[fv[0]] + vertices[fv[1]]);
    if (faces[f].measure <= 0.0)
      throw ValidationError("face " + std::to_string(f) + ": zero measure");
  }

  // face -> incident cells
  for (int c = 0; c < nc; ++c) {
    for (int f : cell_faces[c]) {
      if (f < 0 || f >= nf)
        throw ValidationError("cell " + std::to_string(c) + ": face index out of range");
      auto& owners = faces[f].cells;
      if (owners[0] == c || owners[1] == c)
        throw OrphanFace("face " + std::to_string(f) + " repeated in cell " + std::to_string(c));
      if (owners[0] < 0) owners[0] = c;
      else if (owners[1] < 0) owners[1] = c;
      else throw OrphanFace("face " + std::to_string(f) + " incident to more than 2 cells");
    }
  }
  for (int f = 0; f < nf; ++f)
    if (faces[f].cells[0] < 0)
      throw OrphanFace("face " + std::to_string(f) + " belongs to no cell");

  std::vector<Cell> cells(nc);
  for (int c = 0; c < nc; ++c) {
    Cell& K = cells[c];
    order_cell_loop(c, cell_faces[c], face_vertices, K.faces, K.vertices);
    const int m = static_cast<int>(K.faces.size());

    // signed area of the ordered loop; flip to counter-clockwise if needed.
    // Shoelace sums run in cell-local coordinates to avoid cancellation on
    // domains far from the origin.
    const Vec2 ref = vertices[K.vertices[0]];
    double area2 = 0.0;
    for (int i = 0; i < m; ++i) {
      const Vec2 a = vertices[K.vertices[i]] - ref;
      const Vec2 b = vertices[K.vertices[(i + 1) % m]] - ref;
      area2 += a.x() * b.y() - b.x() * a.y();
    }
    if (area2 < 0.0) {
      std::reverse(K.vertices.begin(), K.vertices.end());
      std::reverse(K.faces.begin(), K.faces.end());
      // after reversal vertices[i] must again start faces[i]
      std::rotate(K.faces.begin(), K.faces.begin() + 1, K.faces.end());
      area2 = -area2;
    }
    K.measure = 0.5 * area2;
    if (K.measure <= 0.0)
      throw NonClosedCell("cell " + std::to_string(c) + ": non-positive area");

    if (cell_centres) {
      K.centre = (*cell_centres)[c];
    } else {
      // area centroid of the polygon
      Vec2 cen = Vec2::Zero();
      for (int i = 0; i < m; ++i) {
        const Vec2 a = vertices[K.vertices[i]] - ref;
        const Vec2 b = vertices[K.vertices[(i + 1) % m]] - ref;
        const double cross = a.x() * b.y() - b.x() * a.y();
        cen += cross * (a + b);
      }
      K.centre = ref + cen / (6.0 * K.measure);
    }

    for (int i = 0; i < m; ++i)
      for (int j = i + 1; j < m; ++j)
        K.diameter = std::max(K.diameter, (vertices[K.vertices[i]] - vertices[K.vertices[j]]).norm());

    // outward normals from the CCW ordering, orthogonal distances from x_K
    K.normals.resize(m);
    K.face_distance.resize(m);
    Vec2 closure = Vec2::Zero();
    Mat2 identity_sum = Mat2::Zero();
    for (int i = 0; i < m; ++i) {
      const Vec2& a = vertices[K.vertices[i]];
      const Vec2& b = vertices[K.vertices[(i + 1) % m]];
      const Vec2 t = b - a;
      Vec2 n(t.y(), -t.x());
      n.normalize();
      K.normals[i] = n;
      const Face& sigma = faces[K.faces[i]];
      K.face_distance[i] = n.dot(sigma.centroid - K.centre);
      if (K.face_distance[i] <= 0.0)
        throw NotStarShaped("cell " + std::to_string(c) + ": centre not strictly inside (face " +
                            std::to_string(K.faces[i]) + ")");
      closure += sigma.measure * n;
      identity_sum += sigma.measure * n * (sigma.centroid - K.centre).transpose();
    }
    if (closure.norm() > tol.closure_abs)
      throw ValidationError("cell " + std::to_string(c) + ": face normals do not close");
    if ((identity_sum - K.measure * Mat2::Identity()).norm() > tol.identity_rel * K.measure)
      throw ValidationError("cell " + std::to_string(c) + ": geometric identity violated");
  }

  return PolytopalMesh(vertices, std::move(faces), std::move(cells));
}

}  // namespace gdm
