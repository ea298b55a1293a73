#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "gdm/cli.hpp"
#include "gdm/vtk.hpp"
#include "helpers.hpp"

using namespace gdm;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::filesystem::path temp_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("gdm_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("config parsing") {
  SUBCASE("a full configuration round-trips into typed fields") {
    const RunConfig cfg = parse_config(
        "name = demo\n"
        "mesh.kind = rectangular\n"
        "mesh.resolution = 8\n"
        "mesh.L = 10\n"
        "scheme = hmm\n"
        "model.kappa = 5\n"
        "model.reaction = bistable\n"
        "model.rho = 2\n"
        "model.alpha = 0.2\n"
        "time.T = 1.5\n"
        "time.dt = 0.1\n"
        "solver.stepper = imex\n"
        "output.snapshots = 0.5 1.5\n");
    CHECK(cfg.name == "demo");
    CHECK(cfg.mesh_kind == MeshKind::rectangular);
    CHECK(cfg.resolution == 8);
    CHECK(cfg.half_width == 10.0);
    CHECK(cfg.tensor.kappa == 5.0);
    CHECK(cfg.reaction.rho == 2.0);
    CHECK(cfg.reaction.alpha == 0.2);
    CHECK(cfg.final_time == 1.5);
    CHECK(cfg.solver.stepper == Stepper::imex);
    CHECK(cfg.snapshots == std::vector<double>{0.5, 1.5});
  }
  SUBCASE("missing time.T names the key") {
    try {
      parse_config("mesh.kind = rectangular\n");
      FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
      CHECK(std::string(e.what()).find("time.T") != std::string::npos);
    }
  }
  SUBCASE("unknown keys are rejected by name") {
    try {
      parse_config("time.T = 1\nmesh.flavour = spicy\n");
      FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
      CHECK(std::string(e.what()).find("mesh.flavour") != std::string::npos);
    }
  }
  SUBCASE("cr on non-simplicial meshes is rejected") {
    CHECK_THROWS_AS(parse_config("scheme = cr\nmesh.kind = hexagonal\ntime.T = 1\n"),
                    ConfigError);
    CHECK_NOTHROW(parse_config("scheme = cr\nmesh.kind = triangular\ntime.T = 1\n"));
  }
  SUBCASE("neumann runs cannot carry dirichlet data") {
    CHECK_THROWS_AS(parse_config("bc.kind = neumann\nbc.g = constant\ntime.T = 1\n"),
                    ConfigError);
  }
  SUBCASE("duplicate keys are rejected") {
    CHECK_THROWS_AS(parse_config("time.T = 1\ntime.T = 2\n"), ConfigError);
  }
  SUBCASE("distortion requires kershaw") {
    CHECK_THROWS_AS(parse_config("mesh.kind = rectangular\nmesh.distortion = 0.3\ntime.T = 1\n"),
                    ConfigError);
  }
}

TEST_CASE("presets") {
  SUBCASE("fig1 reproduces the reference setup") {
    const auto configs = preset_configs("fig1");
    REQUIRE(configs.size() == 1);
    const RunConfig& cfg = configs[0];
    CHECK(cfg.tensor.kappa == 0.0);
    CHECK(cfg.mesh_kind == MeshKind::triangular);
    CHECK(cfg.resolution == 4);  // 3584 cells
    CHECK(cfg.half_width == 20.0);
    CHECK(cfg.final_time == 20.0);
    CHECK(cfg.reaction.kind == ReactionTerm::Kind::bistable);
    CHECK(cfg.reaction.rho == 1.0);
    CHECK(cfg.reaction.alpha == 0.1);
    CHECK(cfg.snapshots == std::vector<double>{0.2, 5.0, 15.0, 20.0});
    CHECK(make_mesh(cfg).n_cells() == 3584);
  }
  SUBCASE("fig2..fig4 sweep kappa") {
    CHECK(preset_configs("fig2")[0].tensor.kappa == 5.0);
    CHECK(preset_configs("fig3")[0].tensor.kappa == 10.0);
    CHECK(preset_configs("fig4")[0].tensor.kappa == 30.0);
  }
  SUBCASE("fig5 is histogram-only") {
    const auto configs = preset_configs("fig5");
    REQUIRE(configs.size() == 1);
    CHECK(configs[0].histogram_kappas == std::vector<double>{0.0, 5.0, 10.0, 30.0});
  }
  SUBCASE("fig7 and fig8 expand over the four mesh families") {
    for (const char* name : {"fig7", "fig8"}) {
      const auto configs = preset_configs(name);
      REQUIRE(configs.size() == 4);
      CHECK(configs[0].mesh_kind == MeshKind::triangular);
      CHECK(configs[1].mesh_kind == MeshKind::rectangular);
      CHECK(configs[2].mesh_kind == MeshKind::hexagonal);
      CHECK(configs[3].mesh_kind == MeshKind::kershaw);
      for (const RunConfig& cfg : configs) CHECK(cfg.final_time == 2.0);
    }
    CHECK(preset_configs("fig8")[0].tensor.kappa == 100.0);
  }
  SUBCASE("unknown presets are rejected") {
    CHECK_THROWS_AS(preset_configs("fig9"), ConfigError);
  }
}

TEST_CASE("execute_run writes the configured artifacts") {
  const auto dir = temp_dir("run");
  RunConfig cfg = parse_config(
      "name = tiny\n"
      "mesh.kind = rectangular\n"
      "mesh.resolution = 6\n"
      "mesh.L = 20\n"
      "model.kappa = 5\n"
      "time.T = 0.2\n"
      "time.dt = 0.1\n"
      "solver.stepper = imex\n"
      "output.snapshots = 0.1 0.2\n");
  cfg.out_dir = dir.string();

  const auto written = execute_run(cfg);
  REQUIRE(written.size() == 4);  // 2 vtk + series + histogram

  SUBCASE("vtk snapshots are valid legacy unstructured grids") {
    const std::string vtk = slurp((dir / "tiny_t0.1.vtk").string());
    CHECK(vtk.rfind("# vtk DataFile Version 2.0", 0) == 0);
    CHECK(vtk.find("DATASET UNSTRUCTURED_GRID") != std::string::npos);
    CHECK(vtk.find("CELLS 36 ") != std::string::npos);
    CHECK(vtk.find("CELL_DATA 36") != std::string::npos);
    CHECK(vtk.find("SCALARS density double 1") != std::string::npos);
  }
  SUBCASE("the time series has one row per instant") {
    const std::string series = slurp((dir / "tiny_series.csv").string());
    CHECK(std::count(series.begin(), series.end(), '\n') == 4);  // header + t0 + 2 steps
    CHECK(series.rfind("t,mass,l2", 0) == 0);
  }
  SUBCASE("histogram bins sum to the cell count") {
    std::ifstream in((dir / "tiny_fa_hist.csv").string());
    std::string line;
    std::getline(in, line);  // header
    long total = 0;
    while (std::getline(in, line)) {
      const auto comma = line.rfind(',');
      total += std::stol(line.substr(comma + 1));
    }
    CHECK(total == 36);
  }
  SUBCASE("reruns reproduce the outputs byte for byte") {
    const std::string before = slurp((dir / "tiny_series.csv").string());
    execute_run(cfg);
    CHECK(slurp((dir / "tiny_series.csv").string()) == before);
  }
}

TEST_CASE("histogram-only runs") {
  const auto dir = temp_dir("hist");
  RunConfig cfg = preset_configs("fig5")[0];
  cfg.resolution = 1;  // keep the mesh small in unit tests
  cfg.out_dir = dir.string();
  const auto written = execute_run(cfg);
  REQUIRE(written.size() == 4);
  CHECK(std::filesystem::exists(dir / "fig5_kappa0_fa_hist.csv"));
  CHECK(std::filesystem::exists(dir / "fig5_kappa30_fa_hist.csv"));
}

TEST_CASE("vtk writer rejects mismatched data") {
  const PolytopalMesh mesh = gdm::testing::unit_square_cell();
  CHECK_THROWS_AS(vtk_unstructured_grid(mesh, {1.0, 2.0}), IoError);
}

TEST_CASE("cli entry point") {
  const auto dir = temp_dir("cli");
  SUBCASE("mesh subcommand writes a parsable file") {
    const std::string out = (dir / "m.txt").string();
    const char* argv[] = {"gdm-rd", "mesh",  "--kind", "hexagonal",
                          "--n",    "5",     "--L",    "2",
                          "--out",  out.c_str()};
    CHECK(cli_main(10, const_cast<char**>(argv)) == 0);
    CHECK(std::filesystem::exists(out));
  }
  SUBCASE("config errors exit with code 1") {
    const char* argv[] = {"gdm-rd", "run", "--preset", "fig99"};
    CHECK(cli_main(4, const_cast<char**>(argv)) == 1);
  }
  SUBCASE("run executes a config file") {
    const std::string conf = (dir / "c.conf").string();
    std::ofstream(conf) << "name = cli_run\nmesh.kind = rectangular\nmesh.resolution = 4\n"
                           "time.T = 0.1\ntime.dt = 0.05\noutput.dir = " +
                               (dir / "out").string() + "\n";
    const char* argv[] = {"gdm-rd", "run", "--config", conf.c_str()};
    CHECK(cli_main(4, const_cast<char**>(argv)) == 0);
    CHECK(std::filesystem::exists(dir / "out" / "cli_run_series.csv"));
  }
}
