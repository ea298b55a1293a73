// Fixed quadrature rules: a degree-5 symmetric triangle rule and a 5-point
// Gauss rule on segments. Polygonal cells are integrated by fanning into
// triangles from the cell centre (valid by star-shapedness).

#pragma once

#include <functional>

#include "gdm/mesh.hpp"

namespace gdm {

using ScalarField = std::function<double(const Vec2&)>;
using VectorField = std::function<Vec2(const Vec2&)>;

// degree-5 symmetric rule, 7 points in barycentric coordinates
struct TriangleRulePoint {
  double l1, l2, weight;
};
inline constexpr TriangleRulePoint kTriangleRule5[7] = {
    {1.0 / 3.0, 1.0 / 3.0, 0.225},
    {0.059715871789770, 0.470142064105115, 0.132394152788506},
    {0.470142064105115, 0.059715871789770, 0.132394152788506},
    {0.470142064105115, 0.470142064105115, 0.132394152788506},
    {0.797426985353087, 0.101286507323456, 0.125939180544827},
    {0.101286507323456, 0.797426985353087, 0.125939180544827},
    {0.101286507323456, 0.101286507323456, 0.125939180544827},
};

/// Calls fn(point, weight) for the degree-5 rule on triangle (a, b, c);
/// weights sum to the (absolute) triangle area.
template <typename Fn>
void triangle_quadrature(const Vec2& a, const Vec2& b, const Vec2& c, Fn&& fn) {
  const double area =
      0.5 * std::abs((b.x() - a.x()) * (c.y() - a.y()) - (c.x() - a.x()) * (b.y() - a.y()));
  for (const TriangleRulePoint& q : kTriangleRule5) {
    const double l3 = 1.0 - q.l1 - q.l2;
    fn(Vec2(q.l1 * a + q.l2 * b + l3 * c), q.weight * area);
  }
}

/// Degree-5 rule over a whole (star-shaped) cell, fanned from the centre.
template <typename Fn>
void cell_quadrature(const PolytopalMesh& mesh, int cell, Fn&& fn) {
  const Cell& K = mesh.cell(cell);
  const int m = static_cast<int>(K.vertices.size());
  for (int i = 0; i < m; ++i)
    triangle_quadrature(K.centre, mesh.vertex(K.vertices[i]),
                        mesh.vertex(K.vertices[(i + 1) % m]), fn);
}

// 5-point Gauss-Legendre nodes/weights on [-1,1]
inline constexpr double kGaussX5[5] = {-0.9061798459386640, -0.5384693101056831, 0.0,
                                       0.5384693101056831, 0.9061798459386640};
inline constexpr double kGaussW5[5] = {0.2369268850561891, 0.4786286704993665,
                                       0.5688888888888889, 0.4786286704993665,
                                       0.2369268850561891};

/// Calls fn(point, weight) for the 5-point Gauss rule on segment [a, b];
/// weights sum to the segment length.
template <typename Fn>
void segment_quadrature(const Vec2& a, const Vec2& b, Fn&& fn) {
  const double half_len = 0.5 * (b - a).norm();
  const Vec2 mid = 0.5 * (a + b);
  const Vec2 half = 0.5 * (b - a);
  for (int i = 0; i < 5; ++i) fn(Vec2(mid + kGaussX5[i] * half), kGaussW5[i] * half_len);
}

double integrate_triangle(const Vec2& a, const Vec2& b, const Vec2& c, const ScalarField& f);
double integrate_cell(const PolytopalMesh& mesh, int cell, const ScalarField& f);
double cell_average(const PolytopalMesh& mesh, int cell, const ScalarField& f);
double integrate_face(const PolytopalMesh& mesh, int face, const ScalarField& f);
double face_average(const PolytopalMesh& mesh, int face, const ScalarField& f);
double integrate_domain(const PolytopalMesh& mesh, const ScalarField& f);

}  // namespace gdm
