// Time integration of the gradient scheme
//   (M/dt)(c^{n+1} - c^n) + S c^{n+1} = load(F, Pi c^{n+1}),
// either fully implicit (Picard / Newton on the reaction) or IMEX (reaction
// frozen at the previous step, one linear solve). Supports homogeneous
// Neumann and non-homogeneous Dirichlet boundary conditions; for the latter
// the boundary face unknowns carry face averages of the trace and the system
// is solved on the interior unknowns.

#pragma once

#include <functional>
#include <optional>

#include "gdm/discretisation.hpp"

namespace gdm {

enum class Stepper { implicit, imex };
enum class NonlinearStrategy { picard, newton };
enum class LinearSolverKind { automatic, direct, cg };

struct SolverConfig {
  Stepper stepper = Stepper::implicit;
  NonlinearStrategy nonlinear = NonlinearStrategy::newton;
  double nonlinear_tol = 1e-10;  // on the residual scaled by 1/|Omega|
  int max_nonlinear_iters = 50;
  LinearSolverKind linear = LinearSolverKind::automatic;  // direct under 1e4 dofs, cg above
  double linear_tol = 1e-12;
  bool clamp_reaction = true;
  int picard_warmup = 3;  // picard iterations before newton takes over

  void validate() const;
};

struct BoundaryCondition {
  enum class Kind { neumann_zero, dirichlet };
  using Trace = std::function<double(const Vec2&, double)>;

  Kind kind = Kind::neumann_zero;
  Trace trace;  // dirichlet only

  static BoundaryCondition neumann();
  static BoundaryCondition dirichlet(Trace g);
};

struct StepStats {
  int nonlinear_iters = 0;
  double nonlinear_residual = 0.0;
  double linear_residual = 0.0;
  double mass = 0.0;
  double l2 = 0.0;
};

struct SimulationResult {
  SpaceTimeDofs dofs;
  std::vector<StepStats> steps;  // one per time step
  double initial_mass = 0.0;
  double initial_l2 = 0.0;
};

struct Problem {
  const Discretisation* scheme = nullptr;
  DiffusionField diffusion;
  ReactionTerm reaction;
  BoundaryCondition bc;
  ScalarField initial;
  std::function<double(const Vec2&, double)> source;  // optional extra load
};

/// Face averages of g(., t) on boundary faces, zero elsewhere.
DofVector dirichlet_interpolate(const Discretisation& d, const BoundaryCondition::Trace& g,
                                double t);

/// One implicit (backward Euler) step of the gradient scheme with
/// homogeneous Neumann boundary conditions.
DofVector implicit_step(const Discretisation& d, const DofVector& c_prev, double dt,
                        const DiffusionField& A, const ReactionTerm& F,
                        const SolverConfig& cfg, StepStats* stats = nullptr);

/// One IMEX step: implicit diffusion, reaction evaluated at c_prev.
DofVector imex_step(const Discretisation& d, const DofVector& c_prev, double dt,
                    const DiffusionField& A, const ReactionTerm& F, const SolverConfig& cfg,
                    StepStats* stats = nullptr);

/// Runs the configured stepper over the whole grid, starting from the
/// interpolated initial data. Stores every time slice and per-step stats.
SimulationResult run_simulation(const Problem& problem, const TimeGrid& grid,
                                const SolverConfig& cfg);

}  // namespace gdm
