#include "gdm/cr.hpp"

#include <cmath>

namespace gdm {

CrDiscretisation::CrDiscretisation(const PolytopalMesh& mesh)
    : mesh_(&mesh), n_faces_(mesh.n_faces()) {
  basis_grad_.resize(mesh.n_cells());
  for (int c = 0; c < mesh.n_cells(); ++c) {
    const Cell& K = mesh.cell(c);
    if (K.faces.size() != 3)
      throw NonSimplicialMesh("cell " + std::to_string(c) + " has " +
                              std::to_string(K.faces.size()) + " faces, need triangles");
    for (int i = 0; i < 3; ++i)
      basis_grad_[c][i] = (mesh.face(K.faces[i]).measure / K.measure) * K.normals[i];
  }
  quad_.resize(mesh.n_cells());
  for (int c = 0; c < mesh.n_cells(); ++c) {
    const Cell& K = mesh.cell(c);
    quad_[c].reserve(21);
    for (int i = 0; i < 3; ++i) {
      const Vec2& a = mesh.vertex(K.vertices[i]);
      const Vec2& b = mesh.vertex(K.vertices[(i + 1) % 3]);
      triangle_quadrature(K.centre, a, b, [&](const Vec2& x, double w) {
        QuadPoint q{x, w, {}};
        for (int j = 0; j < 3; ++j) q.e[j] = basis_value(c, j, x);
        quad_[c].push_back(q);
      });
    }
  }
}

CrDiscretisation build_cr(const PolytopalMesh& mesh) { return CrDiscretisation(mesh); }

double CrDiscretisation::basis_value(int cell, int local_face, const Vec2& x) const {
  const Face& sigma = mesh_->face(mesh_->cell(cell).faces[local_face]);
  return 1.0 + basis_grad_[cell][local_face].dot(x - sigma.centroid);
}

void CrDiscretisation::check_tensor(const Mat2& A, int cell) const {
  const double scale = std::max(A.cwiseAbs().maxCoeff(), 1.0);
  if (std::abs(A(0, 1) - A(1, 0)) > 1e-12 * scale)
    throw NonSymmetricTensor("tensor not symmetric on cell " + std::to_string(cell));
  const double tr = A.trace(), det = A.determinant();
  const double disc = std::sqrt(std::max(0.0, 0.25 * tr * tr - det));
  if (0.5 * tr - disc <= 0.0)
    throw NonPositiveTensor("tensor not positive definite on cell " + std::to_string(cell));
}

SparseMatrix CrDiscretisation::assemble_mass() const {
  // exact by the edge-midpoint rule: the basis is L2-orthogonal per cell,
  // int_K e_i e_j = (|K|/3) delta_ij
  std::vector<Eigen::Triplet<double>> trips;
  for (int c = 0; c < mesh_->n_cells(); ++c) {
    const Cell& K = mesh_->cell(c);
    for (int i = 0; i < 3; ++i)
      trips.emplace_back(K.faces[i], K.faces[i], K.measure / 3.0);
  }
  SparseMatrix M(n_faces_, n_faces_);
  M.setFromTriplets(trips.begin(), trips.end());
  return M;
}

SparseMatrix CrDiscretisation::assemble_stiffness(const DiffusionField& A, double t) const {
  std::vector<Eigen::Triplet<double>> trips;
  for (int c = 0; c < mesh_->n_cells(); ++c) {
    const Cell& K = mesh_->cell(c);
    const Mat2 A_K = A.at(K.centre, t);
    check_tensor(A_K, c);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        trips.emplace_back(K.faces[i], K.faces[j],
                           K.measure * basis_grad_[c][i].dot(A_K * basis_grad_[c][j]));
  }
  SparseMatrix S(n_faces_, n_faces_);
  S.setFromTriplets(trips.begin(), trips.end());
  return S;
}

DofVector CrDiscretisation::interpolate(const ScalarField& f) const {
  DofVector v(n_faces_);
  for (int s = 0; s < n_faces_; ++s) v[s] = face_average(*mesh_, s, f);
  return v;
}

double CrDiscretisation::value(int cell, const DofVector& v, const Vec2& x) const {
  const Cell& K = mesh_->cell(cell);
  double val = 0.0;
  for (int i = 0; i < 3; ++i) val += v[K.faces[i]] * basis_value(cell, i, x);
  return val;
}

Vec2 CrDiscretisation::gradient(int cell, const DofVector& v, const Vec2&) const {
  const Cell& K = mesh_->cell(cell);
  Vec2 g = Vec2::Zero();
  for (int i = 0; i < 3; ++i) g += v[K.faces[i]] * basis_grad_[cell][i];
  return g;
}

DofVector CrDiscretisation::pi_load(const ScalarField& f) const {
  DofVector b = DofVector::Zero(n_faces_);
  for (int c = 0; c < mesh_->n_cells(); ++c) {
    const Cell& K = mesh_->cell(c);
    for (const QuadPoint& q : quad_[c]) {
      const double fw = q.w * f(q.x);
      for (int i = 0; i < 3; ++i) b[K.faces[i]] += fw * q.e[i];
    }
  }
  return b;
}

DofVector CrDiscretisation::grad_load(const VectorField& psi) const {
  DofVector b = DofVector::Zero(n_faces_);
  for (int c = 0; c < mesh_->n_cells(); ++c) {
    const Cell& K = mesh_->cell(c);
    Vec2 psi_int = Vec2::Zero();
    const int m = 3;
    for (int i = 0; i < m; ++i) {
      const Vec2& a = mesh_->vertex(K.vertices[i]);
      const Vec2& bb = mesh_->vertex(K.vertices[(i + 1) % m]);
      triangle_quadrature(K.centre, a, bb,
                          [&](const Vec2& x, double w) { psi_int += w * psi(x); });
    }
    for (int i = 0; i < 3; ++i) b[K.faces[i]] += psi_int.dot(basis_grad_[c][i]);
  }
  return b;
}

DofVector CrDiscretisation::reaction_load(const ReactionTerm& F, const DofVector& c,
                                          bool clamp) const {
  DofVector b = DofVector::Zero(n_faces_);
  if (F.is_zero()) return b;
  for (int k = 0; k < mesh_->n_cells(); ++k) {
    const Cell& K = mesh_->cell(k);
    for (const QuadPoint& q : quad_[k]) {
      const double s =
          c[K.faces[0]] * q.e[0] + c[K.faces[1]] * q.e[1] + c[K.faces[2]] * q.e[2];
      const double fw = q.w * (clamp ? F.eval_clamped(s) : F.eval(s));
      for (int i = 0; i < 3; ++i) b[K.faces[i]] += fw * q.e[i];
    }
  }
  return b;
}

SparseMatrix CrDiscretisation::reaction_jacobian(const ReactionTerm& F, const DofVector& c,
                                                 bool clamp) const {
  SparseMatrix J(n_faces_, n_faces_);
  if (F.is_zero()) return J;
  std::vector<Eigen::Triplet<double>> trips;
  for (int k = 0; k < mesh_->n_cells(); ++k) {
    const Cell& K = mesh_->cell(k);
    Eigen::Matrix3d local = Eigen::Matrix3d::Zero();
    for (const QuadPoint& q : quad_[k]) {
      const double s =
          c[K.faces[0]] * q.e[0] + c[K.faces[1]] * q.e[1] + c[K.faces[2]] * q.e[2];
      const double fw = q.w * (clamp ? F.derivative_clamped(s) : F.derivative(s));
      const Eigen::Vector3d e(q.e[0], q.e[1], q.e[2]);
      local.noalias() += fw * e * e.transpose();
    }
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) trips.emplace_back(K.faces[i], K.faces[j], local(i, j));
  }
  J.setFromTriplets(trips.begin(), trips.end());
  return J;
}

double CrDiscretisation::value_error_sq(const DofVector& v, const ScalarField& exact) const {
  double err = 0.0;
  for (int c = 0; c < mesh_->n_cells(); ++c) {
    const Cell& K = mesh_->cell(c);
    for (const QuadPoint& q : quad_[c]) {
      const double diff = v[K.faces[0]] * q.e[0] + v[K.faces[1]] * q.e[1] +
                          v[K.faces[2]] * q.e[2] - exact(q.x);
      err += q.w * diff * diff;
    }
  }
  return err;
}

double CrDiscretisation::grad_error_sq(const DofVector& v, const VectorField& exact_grad) const {
  double err = 0.0;
  for (int c = 0; c < mesh_->n_cells(); ++c) {
    const Vec2 g = gradient(c, v, mesh_->cell(c).centre);
    for (const QuadPoint& q : quad_[c]) err += q.w * (g - exact_grad(q.x)).squaredNorm();
  }
  return err;
}

}  // namespace gdm
