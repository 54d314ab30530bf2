// Command line driver: run, converge, fourier, mesh gen, mesh check, operators check.

#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <iostream>

#include "vortexfv/driver.hpp"
#include "vortexfv/errors.hpp"
#include "vortexfv/mesh_io.hpp"
#include "vortexfv/operators.hpp"

namespace {

enum Exit { kOk = 0, kFailed = 1, kConfig = 2, kNumerical = 3, kIO = 4 };

struct Options {
  std::string config_file;
  std::vector<std::string> sets;
  std::map<std::string, std::string> flags;
};

// Every config key is also a flag (--t_end 0.5 or --t-end 0.5), plus --set key=value.
void add_config_options(CLI::App* app, Options& opts) {
  app->add_option("-c,--config", opts.config_file, "key = value configuration file");
  app->add_option("--set", opts.sets, "override: key=value (repeatable)");
  for (const auto& [key, help] : vfv::config_keys()) {
    std::string names = "--" + key;
    std::string dashed = key;
    std::replace(dashed.begin(), dashed.end(), '_', '-');
    if (dashed != key) names += ",--" + dashed;
    app->add_option_function<std::string>(names, [&opts, key = key](const std::string& v) { opts.flags[key] = v; }, help);
  }
}

vfv::RunConfig resolve(const Options& opts) {
  vfv::ConfigMap overrides = opts.flags;
  for (const auto& s : opts.sets) {
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw vfv::ConfigError(s, "--set expects key=value");
    overrides[s.substr(0, eq)] = s.substr(eq + 1);
  }
  std::optional<std::string> path;
  if (!opts.config_file.empty()) path = opts.config_file;
  return vfv::parse_config(path, overrides);
}

void print_mesh_stats(const vfv::Mesh& m) {
  std::printf("cells %d (physical %d)\nnodes %d (physical %d)\nedges %d\nboundary %s\nmax cell size %d\n",
              static_cast<int>(m.num_cells()), static_cast<int>(m.num_physical_cells()), static_cast<int>(m.num_nodes()),
              static_cast<int>(m.num_physical_nodes()), static_cast<int>(m.num_edges()), vfv::to_string(m.boundary()),
              m.max_cell_size());
  std::printf("domain area %.15g\nmin length scale %.6g\n", m.domain_area(), m.min_length_scale());
}

int operators_check(const vfv::Mesh& m, std::uint64_t seed) {
  bool ok = true;
  for (const auto& t : vfv::check_identities(m, seed)) {
    const char* status = !t.applicable ? "n/a " : t.holds() ? "PASS" : "FAIL";
    std::printf("%s  %-30s residual %.3e\n", status, t.name.c_str(), t.residual);
    if (t.applicable && !t.holds()) ok = false;
  }
  return ok ? kOk : kFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Vorticity-preserving finite volume solver for linear acoustics on polygonal meshes"};
  app.set_version_flag("--version", VORTEXFV_VERSION);
  app.require_subcommand(1);

  Options run_opts, conv_opts, four_opts, gen_opts, opcheck_opts;
  auto* run = app.add_subcommand("run", "run one simulation");
  add_config_options(run, run_opts);
  auto* conv = app.add_subcommand("converge", "oblique-wave convergence study");
  add_config_options(conv, conv_opts);
  auto* four = app.add_subcommand("fourier", "von Neumann stability scan");
  add_config_options(four, four_opts);

  auto* mesh = app.add_subcommand("mesh", "mesh utilities");
  mesh->require_subcommand(1);
  auto* gen = mesh->add_subcommand("gen", "generate a mesh file");
  add_config_options(gen, gen_opts);
  std::string gen_out;
  gen->add_option("-o,--output", gen_out, "mesh file to write")->required();
  auto* check = mesh->add_subcommand("check", "validate a mesh file");
  std::string check_file;
  check->add_option("file", check_file, "mesh file")->required();

  auto* ops = app.add_subcommand("operators", "discrete operator utilities");
  ops->require_subcommand(1);
  auto* opcheck = ops->add_subcommand("check", "evaluate the operator identities on a mesh");
  add_config_options(opcheck, opcheck_opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfig;
  }

  try {
    if (*run) {
      const auto cfg = resolve(run_opts);
      vfv::apply_threads(cfg);
      const auto s = vfv::run_simulation(cfg);
      std::printf("steps %d  t %.6g  dt %.6g\n", s.steps, s.t, s.dt);
      std::printf("vorticity L1 %.3e  divergence L1 %.3e  (initial %.3e, %.3e)\n", s.final.vorticity_l1,
                  s.final.divergence_l1, s.initial.vorticity_l1, s.initial.divergence_l1);
      if (s.error_l1) std::printf("L1 error u %.4e  v %.4e  p %.4e\n", (*s.error_l1)[0], (*s.error_l1)[1], (*s.error_l1)[2]);
      std::printf("wall time %.2f s, output in %s\n", s.wall_time, cfg.output_dir.c_str());
    } else if (*conv) {
      const auto cfg = resolve(conv_opts);
      vfv::apply_threads(cfg);
      const auto table = vfv::run_convergence(cfg);
      vfv::cases::write_convergence_csv(std::cout, table);
    } else if (*four) {
      const auto cfg = resolve(four_opts);
      vfv::apply_threads(cfg);
      const double r = vfv::run_fourier(cfg);
      std::printf("%s cfl %g: max spectral radius %.15g (%s)\n", vfv::fourier::to_string(cfg.fourier_scheme), cfg.cfl, r,
                  r <= 1 + 1e-10 ? "stable" : "unstable");
    } else if (*gen) {
      const auto cfg = resolve(gen_opts);
      const vfv::Mesh m = vfv::make_config_mesh(cfg);
      vfv::write_mesh(m, gen_out);
      print_mesh_stats(m);
    } else if (*check) {
      const vfv::Mesh m = vfv::read_mesh(check_file);
      print_mesh_stats(m);
      std::printf("valid\n");
    } else if (*opcheck) {
      const auto cfg = resolve(opcheck_opts);
      vfv::apply_threads(cfg);
      const vfv::Mesh m = vfv::make_config_mesh(cfg);
      return operators_check(m, cfg.seed);
    }
  } catch (const vfv::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfig;
  } catch (const vfv::ParseError& e) {
    std::cerr << "mesh file: " << e.what() << '\n';
    return kConfig;
  } catch (const vfv::MeshError& e) {
    std::cerr << "invalid mesh (" << vfv::to_string(e.kind()) << "): " << e.what() << '\n';
    return kConfig;
  } catch (const vfv::NonFiniteState& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kNumerical;
  } catch (const vfv::SingularNodalSystem& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kNumerical;
  } catch (const std::ios_base::failure& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return kIO;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return kIO;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFailed;
  }
  return kOk;
}
