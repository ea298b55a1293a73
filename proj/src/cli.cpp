#include "gdm/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "gdm/cr.hpp"
#include "gdm/hmm.hpp"
#include "gdm/mesh_io.hpp"
#include "gdm/vtk.hpp"

namespace gdm {

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt_short(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

// typed access over the parsed key-value map, tracking consumed keys
class ConfigMap {
 public:
  explicit ConfigMap(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      const auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      const auto trim = [](std::string s) {
        const auto a = s.find_first_not_of(" \t\r");
        if (a == std::string::npos) return std::string();
        const auto b = s.find_last_not_of(" \t\r");
        return s.substr(a, b - a + 1);
      };
      if (trim(line).empty()) continue;
      const auto eq = line.find('=');
      if (eq == std::string::npos)
        throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");
      const std::string key = trim(line.substr(0, eq));
      const std::string value = trim(line.substr(eq + 1));
      if (key.empty() || value.empty())
        throw ConfigError("line " + std::to_string(line_no) + ": empty key or value");
      if (!values_.emplace(key, value).second)
        throw ConfigError("duplicate key '" + key + "'");
    }
  }

  bool has(const std::string& key) const { return values_.count(key) > 0; }

  std::string str(const std::string& key, const std::string& fallback) {
    auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    consumed_.insert(key);
    return it->second;
  }

  std::string required(const std::string& key) {
    auto it = values_.find(key);
    if (it == values_.end()) throw ConfigError("missing required key '" + key + "'");
    consumed_.insert(key);
    return it->second;
  }

  double number(const std::string& key, double fallback) {
    if (!has(key)) return fallback;
    return to_number(key, required(key));
  }

  double required_number(const std::string& key) { return to_number(key, required(key)); }

  int integer(const std::string& key, int fallback) {
    const double v = number(key, fallback);
    if (v != std::floor(v)) throw ConfigError("key '" + key + "' must be an integer");
    return static_cast<int>(v);
  }

  bool boolean(const std::string& key, bool fallback) {
    const std::string v = str(key, fallback ? "true" : "false");
    if (v == "true" || v == "on" || v == "1") return true;
    if (v == "false" || v == "off" || v == "0") return false;
    throw ConfigError("key '" + key + "' must be a boolean");
  }

  std::vector<double> number_list(const std::string& key) {
    std::vector<double> out;
    if (!has(key)) return out;
    std::istringstream ss(required(key));
    double v;
    while (ss >> v) out.push_back(v);
    if (!ss.eof()) throw ConfigError("key '" + key + "' must be a list of numbers");
    return out;
  }

  void reject_unconsumed() const {
    for (const auto& [key, value] : values_)
      if (!consumed_.count(key)) throw ConfigError("unknown key '" + key + "'");
  }

 private:
  double to_number(const std::string& key, const std::string& text) const {
    try {
      std::size_t pos = 0;
      const double v = std::stod(text, &pos);
      if (pos != text.size()) throw std::invalid_argument("");
      return v;
    } catch (...) {
      throw ConfigError("key '" + key + "' must be a number, got '" + text + "'");
    }
  }

  std::map<std::string, std::string> values_;
  std::set<std::string> consumed_;
};

void validate_config(const RunConfig& cfg) {
  if (cfg.scheme == SchemeKind::cr && cfg.mesh_file.empty() &&
      cfg.mesh_kind != MeshKind::triangular)
    throw ConfigError("scheme=cr requires mesh.kind=triangular");
  if (cfg.distortion && cfg.mesh_kind != MeshKind::kershaw)
    throw ConfigError("mesh.distortion only applies to kershaw meshes");
  if (cfg.histogram_kappas.empty()) {
    if (!(cfg.final_time > 0.0) && !cfg.snapshots.empty())
      throw ConfigError("snapshots require time.T > 0");
    if (!(cfg.dt > 0.0)) throw ConfigError("time.dt must be positive");
  }
  cfg.tensor.validate();
  cfg.solver.validate();
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  ConfigMap map(text);
  RunConfig cfg;

  cfg.name = map.str("name", "run");
  cfg.mesh_file = map.str("mesh.file", "");
  cfg.mesh_kind = mesh_kind_from_string(map.str("mesh.kind", "triangular"));
  cfg.resolution = map.integer("mesh.resolution", 4);
  cfg.half_width = map.number("mesh.L", 20.0);
  if (map.has("mesh.distortion")) cfg.distortion = map.required_number("mesh.distortion");

  const std::string scheme = map.str("scheme", "hmm");
  if (scheme == "hmm") cfg.scheme = SchemeKind::hmm;
  else if (scheme == "cr") cfg.scheme = SchemeKind::cr;
  else throw ConfigError("scheme must be 'hmm' or 'cr'");

  cfg.tensor.kappa = map.number("model.kappa", 0.0);
  cfg.tensor.delta = map.number("model.delta", 0.05);
  cfg.tensor.speed = map.number("model.r", 1.0);
  cfg.tensor.turning = map.number("model.mu", 1.0);

  const std::string reaction = map.str("model.reaction", "bistable");
  const double rho = map.number("model.rho", 1.0);
  const double alpha = map.number("model.alpha", 0.1);
  if (reaction == "bistable") cfg.reaction = ReactionTerm::bistable(rho, alpha);
  else if (reaction == "logistic") cfg.reaction = ReactionTerm::logistic(rho);
  else if (reaction == "exponential") cfg.reaction = ReactionTerm::exponential(rho);
  else if (reaction == "none") cfg.reaction = ReactionTerm::none();
  else if (reaction == "custom") {
    const std::vector<double> coeffs = map.number_list("model.poly");
    if (coeffs.empty()) throw ConfigError("model.reaction=custom requires model.poly");
    cfg.reaction = ReactionTerm::custom(coeffs);
  } else {
    throw ConfigError("unknown reaction '" + reaction + "'");
  }

  const std::string initial = map.str("model.initial", "glioma");
  if (initial == "glioma") cfg.initial = RunConfig::InitialKind::glioma;
  else if (initial == "gaussian") cfg.initial = RunConfig::InitialKind::gaussian;
  else if (initial == "constant") cfg.initial = RunConfig::InitialKind::constant;
  else throw ConfigError("unknown initial data preset '" + initial + "'");
  cfg.initial_amplitude = map.number("model.initial.amplitude", 0.05);
  cfg.initial_x = map.number("model.initial.x", 0.0);
  cfg.initial_y = map.number("model.initial.y", 0.0);
  cfg.initial_ax = map.number("model.initial.ax", 0.1);
  cfg.initial_ay = map.number("model.initial.ay", 0.1);
  cfg.initial_value = map.number("model.initial.value", 0.0);

  const std::string bc = map.str("bc.kind", "neumann");
  if (bc == "neumann") {
    cfg.bc_kind = BoundaryCondition::Kind::neumann_zero;
    if (map.has("bc.g") || map.has("bc.g.value"))
      throw ConfigError("bc.kind=neumann does not accept dirichlet trace data (bc.g)");
  } else if (bc == "dirichlet") {
    cfg.bc_kind = BoundaryCondition::Kind::dirichlet;
    const std::string g = map.str("bc.g", "zero");
    if (g == "zero") cfg.bc_value = 0.0;
    else if (g == "constant") cfg.bc_value = map.required_number("bc.g.value");
    else throw ConfigError("bc.g must be 'zero' or 'constant'");
  } else {
    throw ConfigError("bc.kind must be 'neumann' or 'dirichlet'");
  }

  cfg.histogram_kappas = map.number_list("output.histogram_kappas");
  if (cfg.histogram_kappas.empty()) cfg.final_time = map.required_number("time.T");
  else cfg.final_time = map.number("time.T", 0.0);
  cfg.dt = map.number("time.dt", 0.05);

  const std::string stepper = map.str("solver.stepper", "implicit");
  if (stepper == "implicit") cfg.solver.stepper = Stepper::implicit;
  else if (stepper == "imex") cfg.solver.stepper = Stepper::imex;
  else throw ConfigError("solver.stepper must be 'implicit' or 'imex'");

  const std::string nonlinear = map.str("solver.nonlinear", "newton");
  if (nonlinear == "picard") cfg.solver.nonlinear = NonlinearStrategy::picard;
  else if (nonlinear == "newton") cfg.solver.nonlinear = NonlinearStrategy::newton;
  else throw ConfigError("solver.nonlinear must be 'picard' or 'newton'");

  cfg.solver.nonlinear_tol = map.number("solver.nonlinear_tol", 1e-10);
  cfg.solver.max_nonlinear_iters = map.integer("solver.max_nonlinear_iters", 50);
  cfg.solver.linear_tol = map.number("solver.linear_tol", 1e-12);
  cfg.solver.clamp_reaction = map.boolean("solver.clamp_reaction", true);
  cfg.solver.picard_warmup = map.integer("solver.picard_warmup", 3);

  const std::string linear = map.str("solver.linear", "auto");
  if (linear == "auto") cfg.solver.linear = LinearSolverKind::automatic;
  else if (linear == "direct") cfg.solver.linear = LinearSolverKind::direct;
  else if (linear == "cg") cfg.solver.linear = LinearSolverKind::cg;
  else throw ConfigError("solver.linear must be 'auto', 'direct' or 'cg'");

  cfg.out_dir = map.str("output.dir", "out");
  cfg.snapshots = map.number_list("output.snapshots");
  cfg.histogram_bins = map.integer("output.histogram_bins", 40);
  cfg.write_vtk = map.boolean("output.vtk", true);
  cfg.write_csv = map.boolean("output.csv", true);

  map.reject_unconsumed();
  validate_config(cfg);
  return cfg;
}

namespace {

RunConfig figure_base() {
  RunConfig cfg;
  cfg.mesh_kind = MeshKind::triangular;
  cfg.resolution = 4;  // 3584 triangles
  cfg.half_width = 20.0;
  cfg.scheme = SchemeKind::hmm;
  cfg.tensor = TensorParams{};  // kappa set per figure, delta 0.05, r 1, mu 1
  cfg.reaction = ReactionTerm::bistable(1.0, 0.1);
  cfg.initial = RunConfig::InitialKind::glioma;
  cfg.final_time = 20.0;
  cfg.dt = 0.05;
  cfg.solver.stepper = Stepper::imex;
  cfg.solver.linear = LinearSolverKind::direct;
  cfg.snapshots = {0.2, 5.0, 15.0, 20.0};
  return cfg;
}

std::vector<RunConfig> mesh_sweep(const std::string& base_name, double kappa) {
  // the four mesh families at the reference resolutions
  struct Entry {
    MeshKind kind;
    int resolution;
  };
  const Entry entries[] = {{MeshKind::triangular, 4},   // 3584 cells
                           {MeshKind::rectangular, 32},  // 1024 cells
                           {MeshKind::hexagonal, 81},    // 6561 cells
                           {MeshKind::kershaw, 68}};     // 4624 cells
  std::vector<RunConfig> out;
  for (const Entry& e : entries) {
    RunConfig cfg = figure_base();
    cfg.tensor.kappa = kappa;
    cfg.mesh_kind = e.kind;
    cfg.resolution = e.resolution;
    cfg.final_time = 2.0;
    cfg.snapshots = {2.0};
    cfg.name = base_name + "_" + to_string(e.kind);
    out.push_back(cfg);
  }
  return out;
}

}  // namespace

std::vector<std::string> preset_names() {
  return {"fig1", "fig2", "fig3", "fig4", "fig5", "fig7", "fig8"};
}

std::vector<RunConfig> preset_configs(const std::string& name) {
  if (name == "fig1" || name == "fig2" || name == "fig3" || name == "fig4") {
    RunConfig cfg = figure_base();
    cfg.name = name;
    if (name == "fig1") cfg.tensor.kappa = 0.0;
    if (name == "fig2") cfg.tensor.kappa = 5.0;
    if (name == "fig3") cfg.tensor.kappa = 10.0;
    if (name == "fig4") cfg.tensor.kappa = 30.0;
    return {cfg};
  }
  if (name == "fig5") {
    RunConfig cfg = figure_base();
    cfg.name = "fig5";
    cfg.histogram_kappas = {0.0, 5.0, 10.0, 30.0};
    cfg.final_time = 0.0;
    cfg.snapshots.clear();
    return {cfg};
  }
  if (name == "fig7") return mesh_sweep("fig7", 0.0);
  if (name == "fig8") return mesh_sweep("fig8", 100.0);
  throw ConfigError("unknown preset '" + name + "'");
}

ScalarField make_initial(const RunConfig& cfg) {
  switch (cfg.initial) {
    case RunConfig::InitialKind::glioma:
      return [](const Vec2& x) { return glioma_initial(x); };
    case RunConfig::InitialKind::gaussian: {
      const double a = cfg.initial_amplitude, x0 = cfg.initial_x, y0 = cfg.initial_y;
      const double ax = cfg.initial_ax, ay = cfg.initial_ay;
      return [=](const Vec2& x) {
        const double dx = x.x() - x0, dy = x.y() - y0;
        return a * std::exp(-ax * dx * dx - ay * dy * dy);
      };
    }
    case RunConfig::InitialKind::constant: {
      const double v = cfg.initial_value;
      return [v](const Vec2&) { return v; };
    }
  }
  throw ConfigError("unknown initial data kind");
}

PolytopalMesh make_mesh(const RunConfig& cfg) {
  if (!cfg.mesh_file.empty()) return read_mesh_file(cfg.mesh_file);
  return generate_mesh(cfg.mesh_kind, cfg.half_width, cfg.resolution, cfg.distortion);
}

namespace {

std::vector<double> cell_density(const Discretisation& d, const DofVector& v) {
  const PolytopalMesh& mesh = d.mesh();
  std::vector<double> out(mesh.n_cells());
  for (int c = 0; c < mesh.n_cells(); ++c) {
    if (d.cell_dof(c) >= 0) {
      out[c] = v[d.cell_dof(c)];
    } else {
      // average of the affine reconstruction = mean of the face values
      const Cell& K = mesh.cell(c);
      double sum = 0.0;
      for (int f : K.faces) sum += v[d.face_dof(f)];
      out[c] = sum / static_cast<double>(K.faces.size());
    }
  }
  return out;
}

std::string histogram_csv(const FaHistogram& hist) {
  std::ostringstream out;
  out << "bin_lo,bin_hi,count\n";
  for (std::size_t b = 0; b + 1 < hist.edges.size(); ++b)
    out << fmt(hist.edges[b]) << "," << fmt(hist.edges[b + 1]) << "," << hist.counts[b] << "\n";
  return out.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write '" + path + "'");
  out << content;
}

}  // namespace

std::vector<std::string> execute_run(const RunConfig& cfg) {
  validate_config(cfg);
  std::filesystem::create_directories(cfg.out_dir);
  std::vector<std::string> written;
  const auto out_path = [&](const std::string& suffix) {
    return (std::filesystem::path(cfg.out_dir) / (cfg.name + suffix)).string();
  };

  const PolytopalMesh mesh = make_mesh(cfg);

  if (!cfg.histogram_kappas.empty()) {
    for (double kappa : cfg.histogram_kappas) {
      TensorParams params = cfg.tensor;
      params.kappa = kappa;
      const FaHistogram hist =
          fa_histogram(mesh, DiffusionField::from_params(params), cfg.histogram_bins);
      const std::string path = out_path("_kappa" + fmt_short(kappa) + "_fa_hist.csv");
      write_text_file(path, histogram_csv(hist));
      written.push_back(path);
    }
    return written;
  }

  std::unique_ptr<Discretisation> d;
  if (cfg.scheme == SchemeKind::hmm) d = std::make_unique<HmmDiscretisation>(mesh);
  else d = std::make_unique<CrDiscretisation>(mesh);

  Problem problem;
  problem.scheme = d.get();
  problem.diffusion = DiffusionField::from_params(cfg.tensor);
  problem.reaction = cfg.reaction;
  if (cfg.bc_kind == BoundaryCondition::Kind::dirichlet) {
    const double g = cfg.bc_value;
    problem.bc = BoundaryCondition::dirichlet([g](const Vec2&, double) { return g; });
  } else {
    problem.bc = BoundaryCondition::neumann();
  }
  problem.initial = make_initial(cfg);

  const int steps = std::max(1, static_cast<int>(std::llround(cfg.final_time / cfg.dt)));
  const TimeGrid grid = TimeGrid::uniform(cfg.final_time, steps);
  const SimulationResult result = run_simulation(problem, grid, cfg.solver);

  if (cfg.write_vtk) {
    for (double snap : cfg.snapshots) {
      int best = 0;
      for (int n = 0; n <= grid.n_steps(); ++n)
        if (std::abs(grid.t(n) - snap) < std::abs(grid.t(best) - snap)) best = n;
      const std::string path = out_path("_t" + fmt_short(grid.t(best)) + ".vtk");
      write_vtk_file(path, mesh, cell_density(*d, result.dofs.states[best]), "density",
                     cfg.name);
      written.push_back(path);
    }
  }

  if (cfg.write_csv) {
    std::ostringstream series;
    series << "t,mass,l2\n";
    series << fmt(0.0) << "," << fmt(result.initial_mass) << "," << fmt(result.initial_l2)
           << "\n";
    for (int n = 0; n < grid.n_steps(); ++n)
      series << fmt(grid.t(n + 1)) << "," << fmt(result.steps[n].mass) << ","
             << fmt(result.steps[n].l2) << "\n";
    const std::string series_path = out_path("_series.csv");
    write_text_file(series_path, series.str());
    written.push_back(series_path);

    const FaHistogram hist =
        fa_histogram(mesh, DiffusionField::from_params(cfg.tensor), cfg.histogram_bins);
    const std::string hist_path = out_path("_fa_hist.csv");
    write_text_file(hist_path, histogram_csv(hist));
    written.push_back(hist_path);
  }
  return written;
}

ManufacturedCase heat_cosine_case(double half_width) {
  const double L = half_width;
  const double k = M_PI / L;
  ManufacturedCase mc;
  mc.exact = [k](const Vec2& x, double t) {
    return std::exp(-t) * std::cos(k * x.x()) * std::cos(k * x.y());
  };
  mc.exact_grad = [k](const Vec2& x, double t) {
    return Vec2(-k * std::exp(-t) * std::sin(k * x.x()) * std::cos(k * x.y()),
                -k * std::exp(-t) * std::cos(k * x.x()) * std::sin(k * x.y()));
  };
  mc.source = [k](const Vec2& x, double t) {
    return (2.0 * k * k - 1.0) * std::exp(-t) * std::cos(k * x.x()) * std::cos(k * x.y());
  };
  mc.diffusion = DiffusionField::identity();
  mc.bc = BoundaryCondition::neumann();  // zero flux holds by construction
  mc.final_time = 0.5;
  return mc;
}

ManufacturedCase quadratic_dirichlet_case(double) {
  ManufacturedCase mc;
  mc.exact = [](const Vec2& x, double t) { return std::exp(-t) * (x.x() * x.x() + x.y() * x.y()); };
  mc.exact_grad = [](const Vec2& x, double t) {
    return Vec2(2.0 * std::exp(-t) * x.x(), 2.0 * std::exp(-t) * x.y());
  };
  mc.source = [](const Vec2& x, double t) {
    return -std::exp(-t) * (x.x() * x.x() + x.y() * x.y()) - 4.0 * std::exp(-t);
  };
  mc.diffusion = DiffusionField::identity();
  mc.bc = BoundaryCondition::dirichlet(
      [](const Vec2& x, double t) { return std::exp(-t) * (x.x() * x.x() + x.y() * x.y()); });
  mc.final_time = 0.5;
  return mc;
}

namespace {

int guarded_main(int argc, char** argv) {
  CLI::App app{"gdm-rd: reaction-diffusion simulator on generic polygonal meshes"};
  app.require_subcommand(1);

  // run
  auto* run = app.add_subcommand("run", "execute a configured simulation");
  std::string config_path, preset, out_override;
  run->add_option("--config", config_path, "path to a run configuration file");
  run->add_option("--preset", preset, "built-in preset name (fig1..fig5, fig7, fig8)");
  run->add_option("--out", out_override, "output directory override");

  // convergence
  auto* conv = app.add_subcommand("convergence", "manufactured-solution convergence study");
  std::string conv_scheme = "hmm";
  int levels = 4;
  bool dirichlet = false;
  std::string conv_out = "out";
  conv->add_option("--scheme", conv_scheme, "hmm or cr")->check(CLI::IsMember({"hmm", "cr"}));
  conv->add_option("--levels", levels, "number of refinement levels")->check(CLI::Range(2, 8));
  conv->add_flag("--dirichlet", dirichlet, "use the non-homogeneous dirichlet case");
  conv->add_option("--out", conv_out, "output directory");

  // mesh
  auto* mesh_cmd = app.add_subcommand("mesh", "generate a mesh file");
  std::string mesh_kind = "rectangular", mesh_out = "mesh.txt";
  int mesh_n = 8;
  double mesh_L = 20.0;
  double mesh_distortion = -1.0;
  mesh_cmd->add_option("--kind", mesh_kind, "triangular|rectangular|hexagonal|kershaw");
  mesh_cmd->add_option("--n", mesh_n, "resolution");
  mesh_cmd->add_option("--L", mesh_L, "domain half-width");
  mesh_cmd->add_option("--distortion", mesh_distortion, "kershaw distortion in [0,1)");
  mesh_cmd->add_option("--out", mesh_out, "output path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  if (run->parsed()) {
    if (config_path.empty() == preset.empty())
      throw ConfigError("run needs exactly one of --config or --preset");
    std::vector<RunConfig> configs;
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) throw ConfigError("cannot open config file '" + config_path + "'");
      std::ostringstream buf;
      buf << in.rdbuf();
      configs.push_back(parse_config(buf.str()));
    } else {
      configs = preset_configs(preset);
    }
    for (RunConfig& cfg : configs) {
      if (!out_override.empty()) cfg.out_dir = out_override;
      std::cout << "run " << cfg.name << " ..." << std::flush;
      const auto written = execute_run(cfg);
      std::cout << " done, " << written.size() << " file(s)\n";
      for (const auto& path : written) std::cout << "  " << path << "\n";
    }
    return 0;
  }

  if (conv->parsed()) {
    const SchemeKind scheme = conv_scheme == "hmm" ? SchemeKind::hmm : SchemeKind::cr;
    const ManufacturedCase mcase =
        dirichlet ? quadratic_dirichlet_case(1.0) : heat_cosine_case(1.0);
    StudyOptions opts;
    opts.half_width = 1.0;
    opts.dt0 = 0.1;
    opts.solver.linear = LinearSolverKind::direct;
    opts.mesh_kind = scheme == SchemeKind::cr ? MeshKind::triangular : MeshKind::rectangular;
    const int base = scheme == SchemeKind::cr ? 1 : 4;
    for (int l = 0; l < levels; ++l) opts.resolutions.push_back(base << l);

    const ConvergenceReport report = convergence_study(scheme, mcase, opts);
    const std::string csv = convergence_csv(report);
    std::cout << csv;
    std::filesystem::create_directories(conv_out);
    const std::string path =
        (std::filesystem::path(conv_out) / ("convergence_" + conv_scheme +
                                            (dirichlet ? "_dirichlet" : "") + ".csv"))
            .string();
    std::ofstream(path) << csv;
    std::cout << "written " << path << "\n";
    return 0;
  }

  if (mesh_cmd->parsed()) {
    std::optional<double> distortion;
    if (mesh_distortion >= 0.0) distortion = mesh_distortion;
    const PolytopalMesh mesh =
        generate_mesh(mesh_kind_from_string(mesh_kind), mesh_L, mesh_n, distortion);
    write_mesh_file(mesh, mesh_out);
    std::cout << "written " << mesh_out << " (" << mesh.n_cells() << " cells, " << mesh.n_faces()
              << " faces)\n";
    return 0;
  }
  return 0;
}

}  // namespace

int cli_main(int argc, char** argv) {
  // exit code 1 for configuration-induced failures, 2 for solver failures
  try {
    return guarded_main(argc, argv);
  } catch (const NonlinearDivergence& e) {
    std::cerr << "solver failure: " << e.what() << "\n";
    return 2;
  } catch (const LinearSolveFailure& e) {
    std::cerr << "solver failure: " << e.what() << "\n";
    return 2;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const ParseError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const InvalidParams& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const InvalidResolution& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const IoError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const NonSimplicialMesh& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const ValidationError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace gdm
