#include "gdm/quadrature.hpp"

#include <cmath>

namespace gdm {

double integrate_triangle(const Vec2& a, const Vec2& b, const Vec2& c, const ScalarField& f) {
  double sum = 0.0;
  triangle_quadrature(a, b, c, [&](const Vec2& x, double w) { sum += w * f(x); });
  return sum;
}

double integrate_cell(const PolytopalMesh& mesh, int cell, const ScalarField& f) {
  double sum = 0.0;
  cell_quadrature(mesh, cell, [&](const Vec2& x, double w) { sum += w * f(x); });
  return sum;
}

double cell_average(const PolytopalMesh& mesh, int cell, const ScalarField& f) {
  return integrate_cell(mesh, cell, f) / mesh.cell(cell).measure;
}

double integrate_face(const PolytopalMesh& mesh, int face, const ScalarField& f) {
  const Face& sigma = mesh.face(face);
  double sum = 0.0;
  segment_quadrature(mesh.vertex(sigma.vertices[0]), mesh.vertex(sigma.vertices[1]),
                     [&](const Vec2& x, double w) { sum += w * f(x); });
  return sum;
}

double face_average(const PolytopalMesh& mesh, int face, const ScalarField& f) {
  return integrate_face(mesh, face, f) / mesh.face(face).measure;
}

double integrate_domain(const PolytopalMesh& mesh, const ScalarField& f) {
  double sum = 0.0;
  for (int c = 0; c < mesh.n_cells(); ++c) sum += integrate_cell(mesh, c, f);
  return sum;
}

}  // namespace gdm
