// The abstract gradient-discretisation contract shared by the concrete
// schemes: a finite-dimensional unknown space with a function reconstruction,
// a gradient reconstruction, an initial-data interpolant and a time grid.
// Solvers and diagnostics only talk to this interface.

#pragma once

#include <functional>
#include <memory>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "gdm/mesh.hpp"
#include "gdm/physics.hpp"
#include "gdm/quadrature.hpp"

namespace gdm {

using DofVector = Eigen::VectorXd;
using SparseMatrix = Eigen::SparseMatrix<double>;

// Strictly increasing time instants t0 = 0 < t1 < ... < tN = T.
class TimeGrid {
 public:
  explicit TimeGrid(std::vector<double> instants);
  static TimeGrid uniform(double T, int steps);

  int n_steps() const { return static_cast<int>(instants_.size()) - 1; }
  double t(int n) const { return instants_[n]; }
  double dt(int n) const { return instants_[n + 1] - instants_[n]; }
  double final_time() const { return instants_.back(); }
  double max_dt() const { return max_dt_; }
  const std::vector<double>& instants() const { return instants_; }

 private:
  std::vector<double> instants_;
  double max_dt_ = 0.0;
};

class Discretisation {
 public:
  virtual ~Discretisation() = default;

  virtual const PolytopalMesh& mesh() const = 0;
  virtual std::string name() const = 0;

  virtual int n_dofs() const = 0;
  virtual int n_cell_dofs() const = 0;
  virtual int n_face_dofs() const = 0;
  /// Global dof index of the cell unknown, -1 if the scheme has none.
  virtual int cell_dof(int cell) const = 0;
  /// Global dof index of the face unknown.
  virtual int face_dof(int face) const = 0;

  /// Mass matrix of the reconstructed functions, int Pi u Pi v.
  virtual SparseMatrix assemble_mass() const = 0;
  /// Stiffness matrix int A grad_D u . grad_D v, A sampled at cell centres.
  virtual SparseMatrix assemble_stiffness(const DiffusionField& A, double t = 0.0) const = 0;
  /// Interpolant of the initial data.
  virtual DofVector interpolate(const ScalarField& f) const = 0;

  /// Pointwise reconstructions restricted to one cell.
  virtual double value(int cell, const DofVector& v, const Vec2& x) const = 0;
  virtual Vec2 gradient(int cell, const DofVector& v, const Vec2& x) const = 0;

  /// Linear functionals v -> int f Pi v  and  v -> int psi . grad_D v,
  /// returned as assembled vectors.
  virtual DofVector pi_load(const ScalarField& f) const = 0;
  virtual DofVector grad_load(const VectorField& psi) const = 0;

  /// Reaction coupling: vector int F(Pi c) Pi v and its Jacobian in c.
  virtual DofVector reaction_load(const ReactionTerm& F, const DofVector& c,
                                  bool clamp) const = 0;
  virtual SparseMatrix reaction_jacobian(const ReactionTerm& F, const DofVector& c,
                                         bool clamp) const = 0;

  /// Squared errors against a smooth field, measured at the resolution of the
  /// reconstruction (cell centres for piecewise-constant Pi, quadrature
  /// otherwise).
  virtual double value_error_sq(const DofVector& v, const ScalarField& exact) const = 0;
  virtual double grad_error_sq(const DofVector& v, const VectorField& exact_grad) const = 0;

  // Dirichlet support: the boundary unknowns are the dofs of boundary faces.
  std::vector<int> boundary_dofs() const;
};

/// || Pi_D v ||_{L2} + || grad_D v ||_{L2}, evaluated through the mass and
/// identity-tensor stiffness quadratic forms.
double discrete_norm(const Discretisation& d, const DofVector& v);
double discrete_norm(const SparseMatrix& mass, const SparseMatrix& stiffness_identity,
                     const DofVector& v);

// A time series of dof vectors over a TimeGrid (one per instant).
struct SpaceTimeDofs {
  TimeGrid grid;
  std::vector<DofVector> states;  // size n_steps() + 1

  SpaceTimeDofs(TimeGrid g, std::vector<DofVector> s);
};

/// Piecewise-constant-in-time reconstruction: returns c^(n+1) for
/// t in (t^n, t^(n+1)] and c^(0) at t = 0.
const DofVector& time_reconstruction(const SpaceTimeDofs& s, double t);

/// (c^(n+1) - c^n) / dt^(n+1/2) as a dof vector; the reconstructed function
/// is obtained by applying Pi_D.
DofVector delta_derivative(const SpaceTimeDofs& s, int n);

}  // namespace gdm
