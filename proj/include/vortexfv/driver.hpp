#pragma once

#include <array>
#include <string>
#include <vector>

#include "vortexfv/cases.hpp"
#include "vortexfv/config.hpp"
#include "vortexfv/mesh.hpp"

namespace vfv {

// Generated from the config, or read from config.mesh_file.
Mesh make_config_mesh(const RunConfig& config);

// Sets the OpenMP thread count: config.threads, else VORTEXFV_THREADS, else the runtime default.
void apply_threads(const RunConfig& config);

struct RunSummary {
  int steps = 0;
  double t = 0, dt = 0;
  std::array<double, 3> initial_totals{}, final_totals{};
  cases::Diagnostics initial, final;
  std::optional<std::array<double, 3>> error_l1;  // oblique wave only
  double max_abs = 0;
  double wall_time = 0;
  std::vector<std::string> files;
  std::vector<std::string> warnings;
};

// Writes into config.output_dir:
//   manifest.json, fields_<step>.csv, nodes_<step>.csv, timeseries.csv,
//   radial.csv (not for the oblique wave) and summary.json.
RunSummary run_simulation(const RunConfig& config);

// Oblique-wave refinement study on config.levels; writes convergence.csv and manifest.json.
std::vector<cases::ConvergenceLevel> run_convergence(const RunConfig& config);

// Stability scan of config.fourier_scheme at config.cfl; writes fourier_scan.csv,
// manifest.json and summary.json. Returns the maximum spectral radius.
double run_fourier(const RunConfig& config);

void write_fields_csv(const std::string& path, const Mesh& mesh, const State& q);
void write_nodes_csv(const std::string& path, const Mesh& mesh, const State& q);

}  // namespace vfv
