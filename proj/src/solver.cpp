#include "gdm/solver.hpp"

#include <cmath>
#include <memory>

#include <Eigen/IterativeLinearSolvers>
#include <Eigen/SparseLU>

namespace gdm {

void SolverConfig::validate() const {
  if (!(nonlinear_tol > 0.0) || !(linear_tol > 0.0))
    throw InvalidParams("solver tolerances must be positive");
  if (max_nonlinear_iters < 1) throw InvalidParams("max_nonlinear_iters must be >= 1");
  if (picard_warmup < 0) throw InvalidParams("picard_warmup must be >= 0");
}

BoundaryCondition BoundaryCondition::neumann() { return {}; }

BoundaryCondition BoundaryCondition::dirichlet(Trace g) {
  if (!g) throw ConfigError("dirichlet boundary condition requires a trace function");
  BoundaryCondition bc;
  bc.kind = Kind::dirichlet;
  bc.trace = std::move(g);
  return bc;
}

DofVector dirichlet_interpolate(const Discretisation& d, const BoundaryCondition::Trace& g,
                                double t) {
  if (!g) throw ConfigError("no boundary trace supplied");
  const PolytopalMesh& mesh = d.mesh();
  DofVector v = DofVector::Zero(d.n_dofs());
  for (int f = 0; f < mesh.n_faces(); ++f)
    if (mesh.face(f).boundary())
      v[d.face_dof(f)] = face_average(mesh, f, [&](const Vec2& x) { return g(x, t); });
  return v;
}

namespace {

struct DofSplit {
  std::vector<int> interior;     // global ids of the solved unknowns
  std::vector<int> to_interior;  // global -> interior position, -1 if fixed
  std::vector<int> boundary;     // fixed (Dirichlet) dofs
};

DofSplit make_split(const Discretisation& d, const BoundaryCondition& bc) {
  DofSplit split;
  split.to_interior.assign(d.n_dofs(), -1);
  std::vector<bool> fixed(d.n_dofs(), false);
  if (bc.kind == BoundaryCondition::Kind::dirichlet) {
    split.boundary = d.boundary_dofs();
    for (int id : split.boundary) fixed[id] = true;
  }
  for (int i = 0; i < d.n_dofs(); ++i)
    if (!fixed[i]) {
      split.to_interior[i] = static_cast<int>(split.interior.size());
      split.interior.push_back(i);
    }
  return split;
}

SparseMatrix restrict_matrix(const SparseMatrix& A, const DofSplit& split) {
  std::vector<Eigen::Triplet<double>> trips;
  for (int col = 0; col < A.outerSize(); ++col) {
    const int jc = split.to_interior[col];
    if (jc < 0) continue;
    for (SparseMatrix::InnerIterator it(A, col); it; ++it) {
      const int ir = split.to_interior[it.row()];
      if (ir >= 0) trips.emplace_back(ir, jc, it.value());
    }
  }
  SparseMatrix out(split.interior.size(), split.interior.size());
  out.setFromTriplets(trips.begin(), trips.end());
  return out;
}

Eigen::VectorXd gather(const DofVector& full, const DofSplit& split) {
  Eigen::VectorXd out(split.interior.size());
  for (std::size_t i = 0; i < split.interior.size(); ++i) out[i] = full[split.interior[i]];
  return out;
}

void scatter(const Eigen::VectorXd& interior, const DofSplit& split, DofVector& full) {
  for (std::size_t i = 0; i < split.interior.size(); ++i) full[split.interior[i]] = interior[i];
}

// Direct or iterative solve with a cached factorisation for the SPD system
// matrix; Newton corrections (possibly indefinite) are factored per call.
class LinearSolver {
 public:
  LinearSolver(LinearSolverKind kind, double tol) : kind_(kind), tol_(tol) {}

  void set_matrix(const SparseMatrix& A) {
    A_ = A;
    const bool direct = kind_ == LinearSolverKind::direct ||
                        (kind_ == LinearSolverKind::automatic && A.rows() < 10000);
    use_direct_ = direct;
    if (direct) {
      lu_ = std::make_unique<Eigen::SparseLU<SparseMatrix>>();
      lu_->compute(A_);
      if (lu_->info() != Eigen::Success) throw LinearSolveFailure("factorisation failed");
    } else {
      cg_ = std::make_unique<
          Eigen::ConjugateGradient<SparseMatrix, Eigen::Lower | Eigen::Upper>>();
      cg_->setTolerance(tol_);
      cg_->setMaxIterations(20 * A.rows());
      cg_->compute(A_);
      if (cg_->info() != Eigen::Success) throw LinearSolveFailure("cg setup failed");
    }
  }

  Eigen::VectorXd solve(const Eigen::VectorXd& b, double* residual_out = nullptr) const {
    Eigen::VectorXd x;
    if (use_direct_) {
      x = lu_->solve(b);
      if (lu_->info() != Eigen::Success) throw LinearSolveFailure("direct solve failed");
    } else {
      x = cg_->solve(b);
      if (cg_->info() != Eigen::Success)
        throw LinearSolveFailure("cg did not converge within the iteration cap");
    }
    if (residual_out) {
      const double bnorm = std::max(b.norm(), 1e-300);
      *residual_out = (A_ * x - b).norm() / bnorm;
    }
    return x;
  }

 private:
  LinearSolverKind kind_;
  double tol_;
  bool use_direct_ = true;
  SparseMatrix A_;
  std::unique_ptr<Eigen::SparseLU<SparseMatrix>> lu_;
  std::unique_ptr<Eigen::ConjugateGradient<SparseMatrix, Eigen::Lower | Eigen::Upper>> cg_;
};

// One-shot solve of a (possibly indefinite) symmetric Newton system.
Eigen::VectorXd solve_newton_system(const SparseMatrix& J, const Eigen::VectorXd& b,
                                    const SolverConfig& cfg) {
  const bool direct = cfg.linear == LinearSolverKind::direct ||
                      (cfg.linear == LinearSolverKind::automatic && J.rows() < 10000);
  if (direct) {
    Eigen::SparseLU<SparseMatrix> lu(J);
    if (lu.info() != Eigen::Success) throw LinearSolveFailure("newton factorisation failed");
    return lu.solve(b);
  }
  Eigen::BiCGSTAB<SparseMatrix> bicg;
  bicg.setTolerance(cfg.linear_tol);
  bicg.setMaxIterations(20 * J.rows());
  bicg.compute(J);
  Eigen::VectorXd x = bicg.solve(b);
  if (bicg.info() != Eigen::Success) throw LinearSolveFailure("newton bicgstab failed");
  return x;
}

// Shared machinery for both steppers; caches assemblies and factorisations
// across steps of a simulation.
class TimeStepper {
 public:
  TimeStepper(const Problem& problem, const SolverConfig& cfg)
      : p_(problem), cfg_(cfg), d_(*problem.scheme), split_(make_split(d_, problem.bc)) {
    cfg_.validate();
    if (p_.bc.kind == BoundaryCondition::Kind::neumann_zero && p_.bc.trace)
      throw ConfigError("neumann run configured with dirichlet trace data");
    if (p_.bc.kind == BoundaryCondition::Kind::dirichlet && !p_.bc.trace)
      throw ConfigError("dirichlet run requires a boundary trace");
    mass_ = d_.assemble_mass();
    area_ = d_.mesh().total_area();
  }

  const SparseMatrix& mass() const { return mass_; }

  DofVector step(Stepper stepper, const DofVector& c_prev, double t_next, double dt,
                 StepStats* stats) {
    prepare(t_next, dt);
    return stepper == Stepper::implicit ? implicit(c_prev, t_next, dt, stats)
                                        : imex(c_prev, t_next, dt, stats);
  }

 private:
  void prepare(double t_next, double dt) {
    const bool new_stiffness = !stiffness_valid_ || p_.diffusion.time_dependent;
    if (new_stiffness) {
      stiffness_ = d_.assemble_stiffness(p_.diffusion, t_next);
      stiffness_valid_ = true;
    }
    // refactor only on real step-size changes, not ulp noise in the grid
    const bool new_dt = std::abs(dt - cached_dt_) > 1e-12 * std::abs(dt);
    if (new_stiffness || new_dt) {
      system_ = mass_ / dt + stiffness_;
      system_interior_ = restrict_matrix(system_, split_);
      solver_ = std::make_unique<LinearSolver>(cfg_.linear, cfg_.linear_tol);
      solver_->set_matrix(system_interior_);
      cached_dt_ = dt;
    }
  }

  // rhs pieces that do not move during the nonlinear iteration
  Eigen::VectorXd base_rhs(const DofVector& c_prev, double t_next, double dt,
                           DofVector& c_full) const {
    DofVector rhs_full = (mass_ * c_prev) / dt;
    if (p_.source)
      rhs_full += d_.pi_load([&](const Vec2& x) { return p_.source(x, t_next); });
    if (p_.bc.kind == BoundaryCondition::Kind::dirichlet) {
      const DofVector c_bc = dirichlet_interpolate(d_, p_.bc.trace, t_next);
      for (int id : split_.boundary) c_full[id] = c_bc[id];
      DofVector lifted = DofVector::Zero(d_.n_dofs());
      for (int id : split_.boundary) lifted[id] = c_bc[id];
      rhs_full -= system_ * lifted;
    }
    return gather(rhs_full, split_);
  }

  DofVector implicit(const DofVector& c_prev, double t_next, double dt, StepStats* stats) {
    DofVector c = c_prev;
    Eigen::VectorXd base = base_rhs(c_prev, t_next, dt, c);
    Eigen::VectorXd c_int = gather(c, split_);

    auto residual = [&](const DofVector& full, const Eigen::VectorXd& interior) {
      const Eigen::VectorXd r =
          system_interior_ * interior - base -
          gather(d_.reaction_load(p_.reaction, full, cfg_.clamp_reaction), split_);
      return std::make_pair(r, r.norm() / area_);
    };

    double linear_residual = 0.0;
    double res_norm = residual(c, c_int).second;
    double first_res = res_norm;
    int iter = 0;
    while (res_norm > cfg_.nonlinear_tol) {
      if (iter >= cfg_.max_nonlinear_iters) {
        const char* how = res_norm > first_res ? "growing" : "stagnating";
        throw NonlinearDivergence("nonlinear iteration cap hit with " + std::string(how) +
                                  " residual " + std::to_string(res_norm));
      }
      ++iter;
      const bool use_picard =
          cfg_.nonlinear == NonlinearStrategy::picard || iter <= cfg_.picard_warmup;
      if (use_picard) {
        const Eigen::VectorXd rhs =
            base + gather(d_.reaction_load(p_.reaction, c, cfg_.clamp_reaction), split_);
        c_int = solver_->solve(rhs, &linear_residual);
      } else {
        auto [r, norm] = residual(c, c_int);
        const SparseMatrix J =
            system_interior_ -
            restrict_matrix(d_.reaction_jacobian(p_.reaction, c, cfg_.clamp_reaction), split_);
        c_int -= solve_newton_system(J, r, cfg_);
      }
      scatter(c_int, split_, c);
      res_norm = residual(c, c_int).second;
    }
    if (stats) {
      stats->nonlinear_iters = iter;
      stats->nonlinear_residual = res_norm;
      stats->linear_residual = linear_residual;
    }
    return c;
  }

  DofVector imex(const DofVector& c_prev, double t_next, double dt, StepStats* stats) {
    DofVector c = c_prev;
    const Eigen::VectorXd base = base_rhs(c_prev, t_next, dt, c);
    const Eigen::VectorXd rhs =
        base + gather(d_.reaction_load(p_.reaction, c_prev, cfg_.clamp_reaction), split_);
    double linear_residual = 0.0;
    const Eigen::VectorXd c_int = solver_->solve(rhs, &linear_residual);
    scatter(c_int, split_, c);
    if (stats) {
      stats->nonlinear_iters = 1;
      stats->nonlinear_residual = 0.0;
      stats->linear_residual = linear_residual;
    }
    return c;
  }

  Problem p_;
  SolverConfig cfg_;
  const Discretisation& d_;
  DofSplit split_;
  SparseMatrix mass_, stiffness_, system_, system_interior_;
  std::unique_ptr<LinearSolver> solver_;
  bool stiffness_valid_ = false;
  double cached_dt_ = -1.0;
  double area_ = 1.0;
};

Problem neumann_problem(const Discretisation& d, const DiffusionField& A,
                        const ReactionTerm& F) {
  Problem p;
  p.scheme = &d;
  p.diffusion = A;
  p.reaction = F;
  p.bc = BoundaryCondition::neumann();
  return p;
}

}  // namespace

DofVector implicit_step(const Discretisation& d, const DofVector& c_prev, double dt,
                        const DiffusionField& A, const ReactionTerm& F, const SolverConfig& cfg,
                        StepStats* stats) {
  if (!(dt > 0.0)) throw InvalidParams("dt must be positive");
  TimeStepper stepper(neumann_problem(d, A, F), cfg);
  return stepper.step(Stepper::implicit, c_prev, dt, dt, stats);
}

DofVector imex_step(const Discretisation& d, const DofVector& c_prev, double dt,
                    const DiffusionField& A, const ReactionTerm& F, const SolverConfig& cfg,
                    StepStats* stats) {
  if (!(dt > 0.0)) throw InvalidParams("dt must be positive");
  TimeStepper stepper(neumann_problem(d, A, F), cfg);
  return stepper.step(Stepper::imex, c_prev, dt, dt, stats);
}

SimulationResult run_simulation(const Problem& problem, const TimeGrid& grid,
                                const SolverConfig& cfg) {
  if (!problem.scheme) throw ConfigError("no discretisation supplied");
  if (!problem.initial) throw ConfigError("no initial data supplied");
  const Discretisation& d = *problem.scheme;

  TimeStepper stepper(problem, cfg);
  const SparseMatrix& M = stepper.mass();
  const DofVector ones = DofVector::Ones(d.n_dofs());

  std::vector<DofVector> states;
  states.reserve(grid.n_steps() + 1);
  states.push_back(d.interpolate(problem.initial));

  std::vector<StepStats> stats;
  stats.reserve(grid.n_steps());

  const double initial_mass = ones.dot(M * states.front());
  const double initial_l2 = std::sqrt(std::max(0.0, states.front().dot(M * states.front())));

  for (int n = 0; n < grid.n_steps(); ++n) {
    StepStats st;
    DofVector next;
    try {
      next = stepper.step(cfg.stepper, states.back(), grid.t(n + 1), grid.dt(n), &st);
    } catch (NonlinearDivergence& e) {
      throw NonlinearDivergence("step " + std::to_string(n + 1) + ": " + e.what());
    } catch (LinearSolveFailure& e) {
      throw LinearSolveFailure("step " + std::to_string(n + 1) + ": " + e.what());
    }
    st.mass = ones.dot(M * next);
    st.l2 = std::sqrt(std::max(0.0, next.dot(M * next)));
    stats.push_back(st);
    states.push_back(std::move(next));
  }

  return SimulationResult{SpaceTimeDofs(grid, std::move(states)), std::move(stats), initial_mass,
                          initial_l2};
}

}  // namespace gdm
