#include "gdm/analysis.hpp"

#include <cmath>
#include <cstdio>
#include <memory>
#include <sstream>

#include <Eigen/SparseCholesky>

#include "gdm/cr.hpp"
#include "gdm/hmm.hpp"
#include "gdm/physics.hpp"

namespace gdm {

EnergyReport energy_report(const Discretisation& d, const SimulationResult& result) {
  const SparseMatrix M = d.assemble_mass();
  const SparseMatrix S = d.assemble_stiffness(DiffusionField::identity());
  EnergyReport rep;
  double grad_sq = 0.0;
  const auto& states = result.dofs.states;
  for (std::size_t n = 0; n < states.size(); ++n) {
    const double pi = std::sqrt(std::max(0.0, states[n].dot(M * states[n])));
    rep.sup_pi_l2 = std::max(rep.sup_pi_l2, pi);
    if (n > 0)
      grad_sq += result.dofs.grid.dt(static_cast<int>(n) - 1) *
                 std::max(0.0, states[n].dot(S * states[n]));
  }
  rep.grad_l2_spacetime = std::sqrt(grad_sq);
  return rep;
}

double total_mass(const Discretisation& d, const DofVector& v) {
  return DofVector::Ones(d.n_dofs()).dot(d.assemble_mass() * v);
}

FaHistogram fa_histogram(const PolytopalMesh& mesh, const DiffusionField& A, int nbins) {
  if (nbins < 1) throw InvalidParams("histogram needs at least one bin");
  FaHistogram hist;
  hist.edges.resize(nbins + 1);
  for (int b = 0; b <= nbins; ++b) hist.edges[b] = static_cast<double>(b) / nbins;
  hist.counts.assign(nbins, 0);
  hist.values.reserve(mesh.n_cells());
  for (int c = 0; c < mesh.n_cells(); ++c) {
    const Mat2 T = A.at(mesh.cell(c).centre);
    Eigen::SelfAdjointEigenSolver<Mat2> eig(T);
    const double fa = fractional_anisotropy(eig.eigenvalues()[1], eig.eigenvalues()[0]);
    hist.values.push_back(fa);
    hist.max_value = std::max(hist.max_value, fa);
    int bin = static_cast<int>(fa * nbins);
    if (bin >= nbins) bin = nbins - 1;  // fa == 1 goes in the last bin
    ++hist.counts[bin];
  }
  return hist;
}

// --- convergence harness ----------------------------------------------------

ConvergenceReport convergence_study(SchemeKind scheme, const ManufacturedCase& mcase,
                                    const StudyOptions& opts) {
  if (opts.resolutions.size() < 2)
    throw InvalidParams("convergence study needs at least two levels");
  for (std::size_t l = 1; l < opts.resolutions.size(); ++l)
    if (opts.resolutions[l] != 2 * opts.resolutions[l - 1])
      throw InvalidParams("convergence study expects a doubling resolution sequence");

  ConvergenceReport report;
  double h0 = 0.0;
  for (std::size_t level = 0; level < opts.resolutions.size(); ++level) {
    const PolytopalMesh mesh =
        generate_mesh(opts.mesh_kind, opts.half_width, opts.resolutions[level]);
    std::unique_ptr<Discretisation> d;
    if (scheme == SchemeKind::hmm) d = std::make_unique<HmmDiscretisation>(mesh);
    else d = std::make_unique<CrDiscretisation>(mesh);

    if (level == 0) h0 = mesh.h_max();
    const double ratio = mesh.h_max() / h0;
    const double dt_target = opts.dt0 * ratio * ratio;
    const int steps = std::max(1, static_cast<int>(std::ceil(mcase.final_time / dt_target)));
    const TimeGrid grid = TimeGrid::uniform(mcase.final_time, steps);

    Problem problem;
    problem.scheme = d.get();
    problem.diffusion = mcase.diffusion;
    problem.reaction = ReactionTerm::none();
    problem.bc = mcase.bc;
    problem.initial = [&](const Vec2& x) { return mcase.exact(x, 0.0); };
    problem.source = mcase.source;

    const SimulationResult result = run_simulation(problem, grid, opts.solver);

    ConvergenceLevel lvl;
    lvl.h = mesh.h_max();
    lvl.cells = mesh.n_cells();
    lvl.dofs = d->n_dofs();
    const double T = mcase.final_time;
    lvl.value_error = std::sqrt(d->value_error_sq(
        result.dofs.states.back(), [&](const Vec2& x) { return mcase.exact(x, T); }));
    double grad_sq = 0.0;
    for (int n = 0; n < grid.n_steps(); ++n) {
      const double tn1 = grid.t(n + 1);
      grad_sq += grid.dt(n) * d->grad_error_sq(result.dofs.states[n + 1], [&](const Vec2& x) {
        return mcase.exact_grad(x, tn1);
      });
    }
    lvl.grad_error = std::sqrt(grad_sq);

    if (!report.levels.empty()) {
      const ConvergenceLevel& prev = report.levels.back();
      const double lh = std::log(prev.h / lvl.h);
      lvl.value_order = std::log(prev.value_error / lvl.value_error) / lh;
      lvl.grad_order = std::log(prev.grad_error / lvl.grad_error) / lh;
    }
    report.levels.push_back(lvl);
  }
  return report;
}

std::string convergence_csv(const ConvergenceReport& report) {
  std::ostringstream out;
  out << "level,h,cells,dofs,value_error,value_order,grad_error,grad_order\n";
  char buf[256];
  for (std::size_t l = 0; l < report.levels.size(); ++l) {
    const ConvergenceLevel& lvl = report.levels[l];
    std::snprintf(buf, sizeof buf, "%zu,%.17g,%d,%d,%.17g,%.6g,%.17g,%.6g\n", l, lvl.h, lvl.cells,
                  lvl.dofs, lvl.value_error, lvl.value_order, lvl.grad_error, lvl.grad_order);
    out << buf;
  }
  return out.str();
}

// --- GDM property surrogates -------------------------------------------------

GdmDiagnostics gdm_diagnostics(const Discretisation& d, const GdmTestPair& pair, int dof_cap) {
  if (d.n_dofs() > dof_cap)
    throw MeshTooLargeForDiagnostic("diagnostics limited to " + std::to_string(dof_cap) +
                                    " unknowns, got " + std::to_string(d.n_dofs()));
  const PolytopalMesh& mesh = d.mesh();

  // psi must have zero normal trace for the homogeneous-Neumann space
  double scale = 0.0;
  for (int f = 0; f < mesh.n_faces(); ++f)
    scale = std::max(scale, pair.psi(mesh.face(f).centroid).norm());
  for (int f = 0; f < mesh.n_faces(); ++f) {
    const Face& sigma = mesh.face(f);
    if (!sigma.boundary()) continue;
    const Cell& K = mesh.cell(sigma.cells[0]);
    const Vec2 n = K.normals[K.local_face(f)];
    if (std::abs(pair.psi(sigma.centroid).dot(n)) > 1e-10 * std::max(scale, 1.0))
      throw InvalidTestFunction("psi has a nonzero normal trace on the boundary");
  }

  const SparseMatrix M = d.assemble_mass();
  const SparseMatrix S = d.assemble_stiffness(DiffusionField::identity());
  SparseMatrix Q = M + S;
  Eigen::SimplicialLDLT<SparseMatrix> ldlt(Q);
  if (ldlt.info() != Eigen::Success)
    throw LinearSolveFailure("diagnostic quadratic form not factorisable");

  GdmDiagnostics out;

  // consistency: min_w ||Pi w - phi||^2 + ||grad w - grad phi||^2
  const DofVector b = d.pi_load(pair.phi) + d.grad_load(pair.grad_phi);
  const double c0 =
      integrate_domain(mesh, [&](const Vec2& x) { return pair.phi(x) * pair.phi(x); }) +
      integrate_domain(mesh, [&](const Vec2& x) { return pair.grad_phi(x).squaredNorm(); });
  const DofVector w = ldlt.solve(b);
  out.consistency = std::sqrt(std::max(0.0, c0 - b.dot(w)));

  // limit-conformity: dual norm of the defect functional against Q
  const DofVector f = d.grad_load(pair.psi) + d.pi_load(pair.div_psi);
  const DofVector u = ldlt.solve(f);
  out.limit_conformity = std::sqrt(std::max(0.0, f.dot(u)));
  return out;
}

}  // namespace gdm
