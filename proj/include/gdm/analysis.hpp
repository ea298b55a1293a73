// Diagnostics: energy report, mass balance, fractional-anisotropy histograms,
// a manufactured-solution convergence harness and computable surrogates for
// the consistency and limit-conformity measures of a gradient discretisation.

#pragma once

#include <functional>
#include <vector>

#include "gdm/discretisation.hpp"
#include "gdm/mesh_gen.hpp"
#include "gdm/solver.hpp"

namespace gdm {

struct EnergyReport {
  double sup_pi_l2 = 0.0;            // sup_t || Pi c(t) ||_{L2}
  double grad_l2_spacetime = 0.0;    // || grad_D c ||_{L2(Omega x (0,T))}
};

EnergyReport energy_report(const Discretisation& d, const SimulationResult& result);

/// Integral of the reconstructed function, int_Omega Pi_D v.
double total_mass(const Discretisation& d, const DofVector& v);

struct FaHistogram {
  std::vector<double> edges;   // nbins + 1 edges spanning [0, 1]
  std::vector<int> counts;     // per bin, summing to the cell count
  std::vector<double> values;  // per-cell fractional anisotropy
  double max_value = 0.0;
};

/// Fractional anisotropy of A(x_K) per cell, binned over [0,1].
FaHistogram fa_histogram(const PolytopalMesh& mesh, const DiffusionField& A, int nbins);

// --- manufactured-solution convergence harness -----------------------------

enum class SchemeKind { hmm, cr };

struct ManufacturedCase {
  std::function<double(const Vec2&, double)> exact;
  std::function<Vec2(const Vec2&, double)> exact_grad;
  std::function<double(const Vec2&, double)> source;  // dt c - div(A grad c)
  DiffusionField diffusion;
  BoundaryCondition bc;  // neumann, or dirichlet with g = trace of exact
  double final_time = 0.5;
};

struct StudyOptions {
  MeshKind mesh_kind = MeshKind::rectangular;
  std::vector<int> resolutions;  // doubling sequence, coarse to fine
  double half_width = 1.0;
  double dt0 = 0.1;  // time step on the coarsest level, scaled by (h/h0)^2
  SolverConfig solver;
};

struct ConvergenceLevel {
  double h = 0.0;
  int cells = 0;
  int dofs = 0;
  double value_error = 0.0;  // L2 error of Pi c at final time
  double grad_error = 0.0;   // L2(space-time) error of grad_D c
  double value_order = 0.0;  // log2 ratio to the previous level
  double grad_order = 0.0;
};

struct ConvergenceReport {
  std::vector<ConvergenceLevel> levels;  // sorted by decreasing h
};

ConvergenceReport convergence_study(SchemeKind scheme, const ManufacturedCase& mcase,
                                    const StudyOptions& opts);

std::string convergence_csv(const ConvergenceReport& report);

// --- consistency / limit-conformity surrogates ------------------------------

struct GdmTestPair {
  std::function<double(const Vec2&)> phi;    // H1 test function
  std::function<Vec2(const Vec2&)> grad_phi;
  std::function<Vec2(const Vec2&)> psi;      // H_div field, psi.n = 0 on the boundary
  std::function<double(const Vec2&)> div_psi;
};

struct GdmDiagnostics {
  double consistency = 0.0;      // root-sum-square surrogate of the best-approximation error
  double limit_conformity = 0.0; // norm of the discrete divergence-formula defect
};

/// Both surrogates use the quadratic form ||Pi w||^2 + ||grad w||^2, which is
/// equivalent to the sum-of-norms objective within a factor sqrt(2). The
/// consistency surrogate minimises by one SPD solve; the limit-conformity
/// surrogate is the dual norm of the defect functional
///   w -> int (grad_D w . psi + Pi_D w div psi).
/// psi must satisfy the zero normal-trace condition (checked at boundary face
/// centroids). Refuses meshes above dof_cap unknowns.
GdmDiagnostics gdm_diagnostics(const Discretisation& d, const GdmTestPair& pair,
                               int dof_cap = 2000);

}  // namespace gdm
