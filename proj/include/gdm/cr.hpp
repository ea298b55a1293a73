// Crouzeix-Raviart (non-conforming P1) discretisation on triangulations: one
// unknown per face, affine reconstruction from the basis e_K^sigma with
// e_K^sigma(x_sigma') = delta_{sigma sigma'}, broken gradient constant per
// cell, interpolant by face averages.

#pragma once

#include "gdm/discretisation.hpp"

namespace gdm {

class CrDiscretisation final : public Discretisation {
 public:
  explicit CrDiscretisation(const PolytopalMesh& mesh);
  explicit CrDiscretisation(PolytopalMesh&&) = delete;  // keeps a reference

  const PolytopalMesh& mesh() const override { return *mesh_; }
  std::string name() const override { return "cr"; }

  int n_dofs() const override { return n_faces_; }
  int n_cell_dofs() const override { return 0; }
  int n_face_dofs() const override { return n_faces_; }
  int cell_dof(int) const override { return -1; }
  int face_dof(int face) const override { return face; }

  SparseMatrix assemble_mass() const override;
  SparseMatrix assemble_stiffness(const DiffusionField& A, double t = 0.0) const override;
  DofVector interpolate(const ScalarField& f) const override;

  double value(int cell, const DofVector& v, const Vec2& x) const override;
  Vec2 gradient(int cell, const DofVector& v, const Vec2& x) const override;

  DofVector pi_load(const ScalarField& f) const override;
  DofVector grad_load(const VectorField& psi) const override;

  DofVector reaction_load(const ReactionTerm& F, const DofVector& c, bool clamp) const override;
  SparseMatrix reaction_jacobian(const ReactionTerm& F, const DofVector& c,
                                 bool clamp) const override;

  double value_error_sq(const DofVector& v, const ScalarField& exact) const override;
  double grad_error_sq(const DofVector& v, const VectorField& exact_grad) const override;

  /// Gradient of the local basis function of face i in cell (constant).
  const Vec2& basis_gradient(int cell, int local_face) const {
    return basis_grad_[cell][local_face];
  }
  /// Value of the local basis function of face i at x.
  double basis_value(int cell, int local_face, const Vec2& x) const;

 private:
  void check_tensor(const Mat2& A, int cell) const;

  // fixed quadrature points (fan of the degree-5 rule) with cached basis values
  struct QuadPoint {
    Vec2 x;
    double w;
    std::array<double, 3> e;
  };

  const PolytopalMesh* mesh_;
  int n_faces_ = 0;
  std::vector<std::array<Vec2, 3>> basis_grad_;  // per cell, per local face
  std::vector<std::vector<QuadPoint>> quad_;     // per cell
};

CrDiscretisation build_cr(const PolytopalMesh& mesh);
CrDiscretisation build_cr(PolytopalMesh&&) = delete;

}  // namespace gdm
