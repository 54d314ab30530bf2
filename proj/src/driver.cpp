#include "vortexfv/driver.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "vortexfv/errors.hpp"
#include "vortexfv/mesh_io.hpp"
#include "vortexfv/operators.hpp"

namespace vfv {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw std::ios_base::failure("cannot write " + path.string());
  out.precision(17);
  return out;
}

fs::path prepare_dir(const RunConfig& config) {
  const fs::path dir(config.output_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir))
    throw std::ios_base::failure("cannot create output directory " + dir.string());
  return dir;
}

void write_json(const fs::path& path, const json& j) {
  std::ofstream out = open_out(path);
  out << j.dump(2) << '\n';
  if (!out) throw std::ios_base::failure("cannot write " + path.string());
}

void write_manifest(const fs::path& dir, const RunConfig& config, const std::string& command) {
  json cfg = json::object();
  for (const auto& [k, v] : to_map(config)) cfg[k] = v;
  write_json(dir / "manifest.json", {{"program", "vortexfv"}, {"version", VORTEXFV_VERSION}, {"command", command}, {"config", cfg}});
}

json diagnostics_json(const cases::Diagnostics& d) {
  json j{{"vorticity_l1", d.vorticity_l1}, {"divergence_l1", d.divergence_l1},
         {"boundary_vorticity_l1", d.boundary_vorticity_l1}};
  if (d.stencil_vorticity_l1) j["stencil_vorticity_l1"] = *d.stencil_vorticity_l1;
  return j;
}

std::string step_name(const char* stem, int step) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%s_%06d.csv", stem, step);
  return buf;
}

}  // namespace

Mesh make_config_mesh(const RunConfig& config) {
  if (config.mesh_file) return read_mesh(*config.mesh_file);
  return cases::make_mesh(config.mesh, config.n, config.resolved_boundary(), config.seed, config.family);
}

void apply_threads(const RunConfig& config) {
  int threads = config.threads;
  if (threads == 0)
    if (const char* env = std::getenv("VORTEXFV_THREADS")) threads = std::max(0, std::atoi(env));
#ifdef _OPENMP
  if (threads > 0) omp_set_num_threads(threads);
#endif
}

void write_fields_csv(const std::string& path, const Mesh& mesh, const State& q) {
  std::ofstream out = open_out(path);
  out << "cell_id,x_c,y_c,area,u,v,p\n";
  for (CellId c = 0; c < static_cast<CellId>(mesh.num_physical_cells()); ++c) {
    const Vec2 x = mesh.cell_center(c);
    out << c << ',' << x.x() << ',' << x.y() << ',' << mesh.cell_area(c) << ',' << q.u[c] << ',' << q.v[c] << ','
        << q.p[c] << '\n';
  }
  if (!out) throw std::ios_base::failure("cannot write " + path);
}

void write_nodes_csv(const std::string& path, const Mesh& mesh, const State& q) {
  const CellVectorField v = q.velocity_field();
  const NodalScalarField div = divergence_D(mesh, v), curl = curl_C(mesh, v);
  std::ofstream out = open_out(path);
  out << "node_id,x,y,dual_area,div,curl\n";
  for (NodeId n = 0; n < static_cast<NodeId>(mesh.num_nodes()); ++n) {
    if (!mesh.node_physical(n)) continue;
    const Vec2& x = mesh.node(n);
    out << n << ',' << x.x() << ',' << x.y() << ',' << mesh.dual_area(n) << ',' << div[n] << ',' << curl[n] << '\n';
  }
  if (!out) throw std::ios_base::failure("cannot write " + path);
}

RunSummary run_simulation(const RunConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  const fs::path dir = prepare_dir(config);
  const Mesh mesh = make_config_mesh(config);
  write_manifest(dir, config, "run");

  RunSummary summary;
  if (config.scheme.order == 2 && mesh.max_cell_size() > 4) {
    // The reconstruction does not keep the second-order scheme stable over long
    // times on cells with more than four nodes.
    summary.warnings.push_back("second order on cells with more than four nodes may become unstable for long runs");
    std::fprintf(stderr, "warning: %s\n", summary.warnings.back().c_str());
  }
  const State initial = cases::initialize(config.case_spec, mesh);
  summary.initial_totals = totals(mesh, initial);
  summary.initial = cases::diagnostics(mesh, initial);

  std::ofstream series = open_out(dir / "timeseries.csv");
  series << "step,t,vorticity_l1,divergence_l1,total_u,total_v,total_p\n";
  int last_dump = -1;
  auto dump = [&](int step, const State& q) {
    if (step == last_dump) return;
    last_dump = step;
    for (const char* stem : {"fields", "nodes"}) {
      const std::string name = step_name(stem, step);
      if (stem[0] == 'f')
        write_fields_csv((dir / name).string(), mesh, q);
      else
        write_nodes_csv((dir / name).string(), mesh, q);
      summary.files.push_back(name);
    }
  };

  TimeControl control;
  control.cfl = config.cfl;
  control.t_end = config.t_end;
  control.order = config.scheme.order;
  control.observe_every = 1;
  const Observer observer = [&](int step, double t, const State& q) {
    const cases::Diagnostics d = cases::diagnostics(mesh, q);
    const auto tot = totals(mesh, q);
    series << step << ',' << t << ',' << d.vorticity_l1 << ',' << d.divergence_l1 << ',' << tot[0] << ',' << tot[1]
           << ',' << tot[2] << '\n';
    if (step == 0 || (config.output_every > 0 && step % config.output_every == 0)) dump(step, q);
  };
  const RunResult result = run(mesh, initial, control, config.scheme, {observer});
  dump(result.steps, result.state);
  series.close();
  if (!series) throw std::ios_base::failure("cannot write timeseries.csv");
  summary.files.push_back("timeseries.csv");

  summary.steps = result.steps;
  summary.t = result.t;
  summary.dt = result.dt;
  summary.final_totals = totals(mesh, result.state);
  summary.final = cases::diagnostics(mesh, result.state);
  summary.max_abs = max_abs(result.state);

  if (const auto* o = std::get_if<cases::ObliqueWave>(&config.case_spec)) {
    const auto err = cases::error_l1(mesh, result.state, [&](const Vec2& x) {
      return cases::exact_oblique(result.t, x.x(), x.y(), o->lambda, o->theta);
    });
    summary.error_l1 = err.l1;
  } else {
    std::vector<double> field(mesh.num_cells());
    Vec2 center(0.5, 0.5);
    if (std::holds_alternative<cases::FourQuadrant>(config.case_spec)) {
      field = result.state.v;
    } else if (const auto* s = std::get_if<cases::SphericalRP>(&config.case_spec)) {
      field = result.state.p;
      center = s->center;
    } else if (const auto* s = std::get_if<cases::StationaryVortex>(&config.case_spec)) {
      for (std::size_t c = 0; c < field.size(); ++c) field[c] = std::hypot(result.state.u[c], result.state.v[c]);
      center = s->center;
    }
    std::ofstream out = open_out(dir / "radial.csv");
    cases::write_radial_csv(out, cases::radial_profile(mesh, field, center));
    if (!out) throw std::ios_base::failure("cannot write radial.csv");
    summary.files.push_back("radial.csv");
  }

  summary.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  json j{{"steps", summary.steps},
         {"t", summary.t},
         {"dt", summary.dt},
         {"cells", mesh.num_physical_cells()},
         {"totals_initial", summary.initial_totals},
         {"totals_final", summary.final_totals},
         {"diagnostics_initial", diagnostics_json(summary.initial)},
         {"diagnostics_final", diagnostics_json(summary.final)},
         {"max_abs", summary.max_abs},
         {"wall_time_s", summary.wall_time},
         {"warnings", summary.warnings}};
  if (summary.error_l1) j["error_l1"] = {{"u", (*summary.error_l1)[0]}, {"v", (*summary.error_l1)[1]}, {"p", (*summary.error_l1)[2]}};
  write_json(dir / "summary.json", j);
  summary.files.push_back("summary.json");
  return summary;
}

std::vector<cases::ConvergenceLevel> run_convergence(const RunConfig& config) {
  const auto* wave = std::get_if<cases::ObliqueWave>(&config.case_spec);
  if (!wave) throw ConfigError("case", "convergence studies need the oblique_wave case");
  if (config.mesh_file) throw ConfigError("mesh_file", "convergence studies use generated mesh families");
  const fs::path dir = prepare_dir(config);
  write_manifest(dir, config, "converge");
  cases::ConvergenceOptions opt;
  opt.family = config.mesh;
  opt.levels = config.levels;
  opt.scheme = config.scheme;
  opt.cfl = config.cfl;
  opt.t_end = config.t_end;
  opt.seed = config.seed;
  opt.params = config.family;
  const auto table = cases::convergence_study(*wave, opt);
  std::ofstream out = open_out(dir / "convergence.csv");
  cases::write_convergence_csv(out, table);
  if (!out) throw std::ios_base::failure("cannot write convergence.csv");
  return table;
}

double run_fourier(const RunConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  const fs::path dir = prepare_dir(config);
  write_manifest(dir, config, "fourier");
  const auto scan = fourier::stability_scan(config.fourier_scheme, config.cfl, config.samples, config.dx, config.dy, 0, true);
  std::ofstream out = open_out(dir / "fourier_scan.csv");
  out << "k_x,k_y,kernel_dim,spectral_radius\n";
  for (const auto& p : scan.points) out << p.kx << ',' << p.ky << ',' << p.kernel_dim << ',' << p.spectral_radius << '\n';
  if (!out) throw std::ios_base::failure("cannot write fourier_scan.csv");
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  write_json(dir / "summary.json", {{"scheme", fourier::to_string(config.fourier_scheme)},
                                    {"cfl", config.cfl},
                                    {"samples", config.samples},
                                    {"max_spectral_radius", scan.max_radius},
                                    {"stable", scan.max_radius <= 1 + 1e-10},
                                    {"wall_time_s", wall}});
  return scan.max_radius;
}

}  // namespace vfv
