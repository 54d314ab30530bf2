#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "vortexfv/driver.hpp"
#include "vortexfv/errors.hpp"
#include "vortexfv/mesh_io.hpp"

using namespace vfv;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / name) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::vector<std::vector<double>> read_csv(const fs::path& p, std::string& header) {
  std::ifstream in(p);
  std::getline(in, header);
  std::vector<std::vector<double>> rows;
  for (std::string line; std::getline(in, line);) {
    std::vector<double> row;
    std::istringstream ls(line);
    for (std::string cell; std::getline(ls, cell, ',');) row.push_back(std::stod(cell));
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

TEST_CASE("t_end = 0 dumps the initial data") {
  TempDir dir("vortexfv_driver_t0");
  RunConfig c = resolve_config({{"case", "vortex"}, {"n", "12"}, {"t_end", "0"}});
  c.output_dir = dir.path.string();
  const RunSummary s = run_simulation(c);
  CHECK(s.steps == 0);
  std::string header;
  const auto rows = read_csv(dir.path / "fields_000000.csv", header);
  CHECK(header == "cell_id,x_c,y_c,area,u,v,p");
  const Mesh m = make_config_mesh(c);
  const State q0 = cases::initialize(c.case_spec, m);
  REQUIRE(rows.size() == m.num_physical_cells());
  for (const auto& r : rows) {
    const auto cell = static_cast<CellId>(r[0]);
    CHECK(r[4] == q0.u[cell]);
    CHECK(r[5] == q0.v[cell]);
    CHECK(r[6] == q0.p[cell]);
  }
  std::string node_header;
  read_csv(dir.path / "nodes_000000.csv", node_header);
  CHECK(node_header == "node_id,x,y,dual_area,div,curl");
  const auto manifest = nlohmann::json::parse(slurp(dir.path / "manifest.json"));
  CHECK(manifest.at("config").at("case") == "vortex");
  CHECK(manifest.contains("version"));
  const auto summary = nlohmann::json::parse(slurp(dir.path / "summary.json"));
  CHECK(summary.contains("wall_time_s"));
}

TEST_CASE("identical runs give byte-identical output") {
  TempDir a("vortexfv_driver_a"), b("vortexfv_driver_b");
  RunConfig c = resolve_config({{"case", "four_quadrant"}, {"mesh", "triquad"}, {"n", "16"}, {"t_end", "0.05"},
                                {"output_every", "3"}, {"seed", "9"}, {"order", "2"}});
  c.output_dir = a.path.string();
  const RunSummary sa = run_simulation(c);
  c.output_dir = b.path.string();
  run_simulation(c);
  CHECK(sa.files.size() >= 5);
  for (const auto& entry : fs::directory_iterator(a.path)) {
    const std::string name = entry.path().filename().string();
    if (name == "summary.json" || name == "manifest.json") continue;  // wall time, output path
    CHECK_MESSAGE(slurp(entry.path()) == slurp(b.path / name), name);
  }
}

TEST_CASE("spherical Riemann problem keeps zero vorticity on a tri-quad mesh") {
  TempDir dir("vortexfv_driver_rp");
  RunConfig c = resolve_config({{"case", "spherical_rp"}, {"mesh", "triquad"}, {"n", "32"}, {"t_end", "0.1"}});
  c.output_dir = dir.path.string();
  const RunSummary s = run_simulation(c);
  CHECK(s.t == doctest::Approx(0.1));
  CHECK(s.final.vorticity_l1 <= 1e-12);
  CHECK(s.final.divergence_l1 > 1e-3);
  for (int k = 0; k < 3; ++k) CHECK(std::isfinite(s.final_totals[k]));
  CHECK(fs::exists(dir.path / "radial.csv"));
  CHECK(fs::exists(dir.path / "timeseries.csv"));
}

TEST_CASE("oblique wave reports its error") {
  TempDir dir("vortexfv_driver_ow");
  RunConfig c = resolve_config({{"case", "oblique_wave"}, {"n", "16"}, {"t_end", "0.05"}});
  c.output_dir = dir.path.string();
  const RunSummary s = run_simulation(c);
  REQUIRE(s.error_l1.has_value());
  CHECK((*s.error_l1)[2] > 0);
  CHECK_FALSE(fs::exists(dir.path / "radial.csv"));
  // periodic totals are conserved
  for (int k = 0; k < 3; ++k) CHECK(std::abs(s.final_totals[k] - s.initial_totals[k]) < 1e-12);
}

TEST_CASE("convergence and Fourier subcommands") {
  TempDir dir("vortexfv_driver_cf");
  RunConfig c = resolve_config({{"case", "oblique_wave"}, {"levels", "8,16"}, {"t_end", "0.05"}});
  c.output_dir = dir.path.string();
  CHECK(run_convergence(c).size() == 2);
  CHECK(slurp(dir.path / "convergence.csv").rfind("n,cells,h,", 0) == 0);

  RunConfig bad = resolve_config({{"case", "vortex"}});
  bad.output_dir = dir.path.string();
  CHECK_THROWS_AS(run_convergence(bad), ConfigError);

  RunConfig f = resolve_config({{"fourier_scheme", "nodal_pressure_1"}, {"cfl", "0.4"}, {"samples", "8"}});
  f.output_dir = dir.path.string();
  CHECK(run_fourier(f) <= 1 + 1e-10);
  std::string header;
  const auto rows = read_csv(dir.path / "fourier_scan.csv", header);
  CHECK(header == "k_x,k_y,kernel_dim,spectral_radius");
  CHECK(rows.size() == 64);
}

TEST_CASE("mesh files as mesh source") {
  TempDir dir("vortexfv_driver_mf");
  RunConfig c = resolve_config({{"mesh", "quad"}, {"n", "10"}, {"case", "spherical_rp"}});
  const Mesh m = make_config_mesh(c);
  const std::string path = (dir.path / "m.mesh").string();
  write_mesh(m, path);
  RunConfig d = resolve_config({{"mesh_file", path}, {"case", "spherical_rp"}, {"t_end", "0.01"}});
  d.output_dir = (dir.path / "out").string();
  CHECK(make_config_mesh(d).num_physical_cells() == m.num_physical_cells());
  CHECK(run_simulation(d).steps > 0);
}

TEST_CASE("second order on polygonal meshes is flagged") {
  TempDir dir("vortexfv_driver_poly");
  RunConfig c = resolve_config({{"case", "spherical_rp"}, {"mesh", "polygonal"}, {"n", "8"}, {"order", "2"}, {"t_end", "0.01"}});
  c.output_dir = dir.path.string();
  CHECK(run_simulation(c).warnings.size() == 1);
  c.scheme.order = 1;
  CHECK(run_simulation(c).warnings.empty());
}
