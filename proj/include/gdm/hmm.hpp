// Hybrid mimetic mixed discretisation on polytopal meshes: one unknown per
// cell and one per face. The cell-wise constant gradient
//   grad_K v = (1/|K|) sum |sigma| v_sigma n_{K,sigma}
// is stabilised on each half-diamond D_{K,sigma} by
//   (sqrt(2)/d_{K,sigma}) R_K(v)_sigma n_{K,sigma},
// where R_K(v)_sigma = v_sigma - v_K - grad_K v . (x_sigma - x_K) vanishes on
// interpolants of affine fields. The scheme admits an equivalent
// finite-volume flux form, exposed by face_fluxes.

#pragma once

#include "gdm/discretisation.hpp"

namespace gdm {

// Stabilisation weight B_K = scale * diag(|sigma| / d_{K,sigma}). The default
// scales by the mean eigenvalue of the cell tensor so the stabilisation
// tracks the tensor magnitude; normal_flux uses n^T A n per face (which makes
// the bilinear form equal int A grad_D u . grad_D v exactly for cell-wise
// constant A); unit applies no tensor scaling.
enum class HmmStabilisation { tensor_mean, normal_flux, unit };

struct HmmOptions {
  HmmStabilisation stabilisation = HmmStabilisation::tensor_mean;
};

// Flux values F_{K,sigma}(v) indexed by (cell, local face), defined by
//   sum_sigma |sigma| F_{K,sigma}(v) (w_K - w_sigma) = int_K A grad_D v . grad_D w.
struct FaceFluxSet {
  std::vector<std::vector<double>> flux;  // [cell][local face]
};

class HmmDiscretisation final : public Discretisation {
 public:
  HmmDiscretisation(const PolytopalMesh& mesh, HmmOptions options = {});
  HmmDiscretisation(PolytopalMesh&&, HmmOptions = {}) = delete;  // keeps a reference

  const PolytopalMesh& mesh() const override { return *mesh_; }
  std::string name() const override { return "hmm"; }

  int n_dofs() const override { return n_cells_ + n_faces_; }
  int n_cell_dofs() const override { return n_cells_; }
  int n_face_dofs() const override { return n_faces_; }
  int cell_dof(int cell) const override { return cell; }
  int face_dof(int face) const override { return n_cells_ + face; }

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

  // --- local operators, exposed for fluxes and tests ---

  /// Columns are the face coefficients of grad_K (2 x Card(E_K)).
  const Eigen::MatrixXd& grad_operator(int cell) const { return grad_op_[cell]; }
  /// Rows are R_K(.)_sigma over the local vector (v_K, v_sigma...).
  const Eigen::MatrixXd& residual_operator(int cell) const { return residual_op_[cell]; }
  /// Half-diamond measures |D_{K,sigma}| = |sigma| d_{K,sigma} / 2.
  const std::vector<double>& half_diamond_measures(int cell) const { return half_diamond_[cell]; }

  /// Stabilisation matrix for the given cell tensor (diagonal, SPD).
  Eigen::MatrixXd stabilisation_matrix(int cell, const Mat2& A_K) const;
  /// Local bilinear form |K| grad_K^T A grad_K + R^T B R over (v_K, v_sigma...).
  Eigen::MatrixXd local_stiffness(int cell, const Mat2& A_K) const;

  /// Cell-wise constant part grad_K of the reconstructed gradient.
  Vec2 cell_gradient(int cell, const DofVector& v) const;

  HmmOptions options() const { return options_; }

 private:
  Eigen::VectorXd local_values(int cell, const DofVector& v) const;
  void check_tensor(const Mat2& A, int cell) const;

  const PolytopalMesh* mesh_;
  HmmOptions options_;
  int n_cells_ = 0, n_faces_ = 0;
  std::vector<Eigen::MatrixXd> grad_op_;      // 2 x m
  std::vector<Eigen::MatrixXd> residual_op_;  // m x (m+1)
  std::vector<std::vector<double>> half_diamond_;
};

HmmDiscretisation build_hmm(const PolytopalMesh& mesh, HmmOptions options = {});
HmmDiscretisation build_hmm(PolytopalMesh&&, HmmOptions = {}) = delete;

/// Face fluxes of v under the tensor field A (sampled at cell centres).
FaceFluxSet face_fluxes(const HmmDiscretisation& hmm, const DiffusionField& A,
                        const DofVector& v, double t = 0.0);

}  // namespace gdm
