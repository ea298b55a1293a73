// Batch front-end: flat "section.key = value" run configurations, built-in
// presets reproducing the reference experiments, and exporters (legacy VTK
// snapshots, CSV time series, CSV histograms, CSV convergence reports).

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gdm/analysis.hpp"
#include "gdm/mesh_gen.hpp"
#include "gdm/physics.hpp"
#include "gdm/solver.hpp"

namespace gdm {

struct RunConfig {
  std::string name = "run";

  // mesh: generated unless a file path is given
  MeshKind mesh_kind = MeshKind::triangular;
  int resolution = 4;
  std::optional<double> distortion;
  double half_width = 20.0;
  std::string mesh_file;

  SchemeKind scheme = SchemeKind::hmm;

  TensorParams tensor;
  ReactionTerm reaction = ReactionTerm::bistable(1.0, 0.1);

  enum class InitialKind { glioma, gaussian, constant };
  InitialKind initial = InitialKind::glioma;
  double initial_amplitude = 0.05;
  double initial_x = 0.0, initial_y = 0.0;
  double initial_ax = 0.1, initial_ay = 0.1;
  double initial_value = 0.0;

  BoundaryCondition::Kind bc_kind = BoundaryCondition::Kind::neumann_zero;
  double bc_value = 0.0;  // constant dirichlet trace

  double final_time = 0.0;
  double dt = 0.05;

  SolverConfig solver;

  std::string out_dir = "out";
  std::vector<double> snapshots;
  int histogram_bins = 40;
  bool write_vtk = true;
  bool write_csv = true;

  // histogram-only mode: compute FA histograms for these kappa values
  std::vector<double> histogram_kappas;
};

/// Parses and validates a configuration; rejects unknown keys, missing
/// required keys and inconsistent combinations (scheme/mesh, bc/data).
RunConfig parse_config(const std::string& text);

/// Built-in presets; fig5/fig7/fig8 expand to several runs.
std::vector<RunConfig> preset_configs(const std::string& name);
std::vector<std::string> preset_names();

ScalarField make_initial(const RunConfig& cfg);
PolytopalMesh make_mesh(const RunConfig& cfg);

/// Executes one run and writes its outputs; returns the written file paths.
std::vector<std::string> execute_run(const RunConfig& cfg);

/// Reference manufactured solutions used by the convergence subcommand.
ManufacturedCase heat_cosine_case(double half_width);
ManufacturedCase quadratic_dirichlet_case(double half_width);

int cli_main(int argc, char** argv);

}  // namespace gdm
