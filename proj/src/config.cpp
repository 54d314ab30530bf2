#include "vortexfv/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "vortexfv/errors.hpp"

namespace vfv {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& value) {
  double out = 0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || ptr != value.data() + value.size() || !std::isfinite(out))
    throw ConfigError(key, "expected a number, got '" + value + "'");
  return out;
}

long long to_int(const std::string& key, const std::string& value) {
  long long out = 0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || ptr != value.data() + value.size())
    throw ConfigError(key, "expected an integer, got '" + value + "'");
  return out;
}

std::string format(double x) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

template <class F>
auto parse_enum(const std::string& key, const std::string& value, F f) {
  try {
    return f(value);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(key, e.what());
  }
}

}  // namespace

BoundaryKind RunConfig::resolved_boundary() const {
  return boundary ? *boundary : cases::default_boundary(case_spec);
}

const std::vector<std::pair<std::string, std::string>>& config_keys() {
  static const std::vector<std::pair<std::string, std::string>> keys{
      {"case", "oblique_wave | four_quadrant | spherical_rp | vortex"},
      {"lambda", "oblique wave length"},
      {"theta", "oblique wave angle (radians)"},
      {"radius", "spherical RP radius"},
      {"w", "vortex width"},
      {"mesh", "cartesian | quad | triquad | polygonal"},
      {"mesh_file", "read the mesh from this file instead of generating it"},
      {"n", "cells per direction"},
      {"boundary", "periodic | zero_gradient (default depends on the case)"},
      {"perturbation", "perturbed-quad node displacement (fraction of dx)"},
      {"split_fraction", "tri-quad fraction of split quads"},
      {"seed", "mesh random seed"},
      {"scheme", "nodal_pressure | nodal_velocity"},
      {"order", "1 | 2"},
      {"stencil", "node | edge (second-order reconstruction)"},
      {"cfl", "Courant number"},
      {"t_end", "final time"},
      {"output_every", "field dump cadence in steps (0: first and last only)"},
      {"output_dir", "output directory"},
      {"threads", "OpenMP threads (0: default)"},
      {"levels", "comma separated resolutions for converge"},
      {"fourier_scheme", "nodal_pressure_1 | nodal_pressure_2 | nodal_velocity_1"},
      {"samples", "Fourier samples per direction"},
      {"dx", "Fourier grid spacing in x"},
      {"dy", "Fourier grid spacing in y"},
  };
  return keys;
}

ConfigMap read_config_map(std::istream& in) {
  ConfigMap out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto h = line.find('#'); h != std::string::npos) line.erase(h);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(lineno), "expected 'key = value', got '" + line + "'");
    const std::string key = trim(line.substr(0, eq));
    out[key] = trim(line.substr(eq + 1));
  }
  return out;
}

ConfigMap read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::ios_base::failure("cannot open config file " + path);
  return read_config_map(in);
}

RunConfig resolve_config(const ConfigMap& entries) {
  RunConfig c;
  for (const auto& [key, value] : entries) {
    bool known = false;
    for (const auto& k : config_keys()) known = known || k.first == key;
    if (!known) throw ConfigError(key, "unknown key");
  }
  auto get = [&](const std::string& key) -> std::optional<std::string> {
    const auto it = entries.find(key);
    if (it == entries.end()) return std::nullopt;
    return it->second;
  };

  if (auto v = get("case")) c.case_spec = parse_enum("case", *v, cases::case_from_string);
  if (auto* o = std::get_if<cases::ObliqueWave>(&c.case_spec)) {
    if (auto v = get("lambda")) o->lambda = to_double("lambda", *v);
    if (auto v = get("theta")) o->theta = to_double("theta", *v);
    if (!(o->lambda > 0)) throw ConfigError("lambda", "must be positive");
    if (!(std::abs(std::cos(o->theta)) > 1e-12)) throw ConfigError("theta", "cos(theta) must not vanish");
  }
  if (auto* s = std::get_if<cases::SphericalRP>(&c.case_spec)) {
    if (auto v = get("radius")) s->radius = to_double("radius", *v);
    if (!(s->radius > 0)) throw ConfigError("radius", "must be positive");
  }
  if (auto* s = std::get_if<cases::StationaryVortex>(&c.case_spec)) {
    if (auto v = get("w")) s->w = to_double("w", *v);
    if (!(s->w > 0)) throw ConfigError("w", "must be positive");
  }

  if (auto v = get("mesh")) c.mesh = parse_enum("mesh", *v, cases::family_from_string);
  if (auto v = get("mesh_file"); v && !v->empty()) c.mesh_file = *v;
  if (auto v = get("n")) c.n = static_cast<int>(to_int("n", *v));
  if (c.n < 2) throw ConfigError("n", "must be at least 2");
  if (c.mesh == cases::MeshFamily::Polygonal && c.n % 2 != 0) throw ConfigError("n", "polygonal meshes need even n");
  if (auto v = get("boundary"); v && *v != "auto") c.boundary = parse_enum("boundary", *v, boundary_from_string);
  if (auto v = get("perturbation")) c.family.perturbation = to_double("perturbation", *v);
  if (c.family.perturbation < 0 || c.family.perturbation > 0.3) throw ConfigError("perturbation", "must lie in [0, 0.3]");
  if (auto v = get("split_fraction")) c.family.split_fraction = to_double("split_fraction", *v);
  if (c.family.split_fraction < 0 || c.family.split_fraction > 1)
    throw ConfigError("split_fraction", "must lie in [0, 1]");
  if (auto v = get("seed")) {
    const long long s = to_int("seed", *v);
    if (s < 0) throw ConfigError("seed", "must be non-negative");
    c.seed = static_cast<std::uint64_t>(s);
  }

  if (auto v = get("scheme")) {
    if (*v == "nodal_pressure") c.scheme.kind = SchemeKind::NodalPressure;
    else if (*v == "nodal_velocity") c.scheme.kind = SchemeKind::NodalVelocity;
    else throw ConfigError("scheme", "expected nodal_pressure or nodal_velocity, got '" + *v + "'");
  }
  if (auto v = get("order")) c.scheme.order = static_cast<int>(to_int("order", *v));
  if (c.scheme.order != 1 && c.scheme.order != 2) throw ConfigError("order", "must be 1 or 2");
  if (c.scheme.kind == SchemeKind::NodalVelocity && c.scheme.order == 2)
    throw UnsupportedCombination("order", "the nodal-velocity scheme is first order only");
  if (auto v = get("stencil")) c.scheme.stencil = parse_enum("stencil", *v, stencil_from_string);
  if (auto v = get("cfl")) c.cfl = to_double("cfl", *v);
  if (!(c.cfl > 0)) throw ConfigError("cfl", "must be positive");
  if (auto v = get("t_end")) c.t_end = to_double("t_end", *v);
  if (!(c.t_end >= 0)) throw ConfigError("t_end", "must be non-negative");
  if (auto v = get("output_every")) c.output_every = static_cast<int>(to_int("output_every", *v));
  if (c.output_every < 0) throw ConfigError("output_every", "must be non-negative");
  if (auto v = get("output_dir")) c.output_dir = *v;
  if (c.output_dir.empty()) throw ConfigError("output_dir", "must not be empty");
  if (auto v = get("threads")) c.threads = static_cast<int>(to_int("threads", *v));
  if (c.threads < 0) throw ConfigError("threads", "must be non-negative");

  if (auto v = get("levels")) {
    c.levels.clear();
    std::istringstream is(*v);
    std::string item;
    while (std::getline(is, item, ',')) {
      const int lvl = static_cast<int>(to_int("levels", trim(item)));
      if (lvl < 2) throw ConfigError("levels", "resolutions must be at least 2");
      c.levels.push_back(lvl);
    }
    if (c.levels.size() < 2) throw ConfigError("levels", "need at least two resolutions");
  }
  if (auto v = get("fourier_scheme")) c.fourier_scheme = parse_enum("fourier_scheme", *v, fourier::scheme_from_string);
  if (auto v = get("samples")) c.samples = static_cast<int>(to_int("samples", *v));
  if (c.samples < 1) throw ConfigError("samples", "must be at least 1");
  if (auto v = get("dx")) c.dx = to_double("dx", *v);
  if (auto v = get("dy")) c.dy = to_double("dy", *v);
  if (!(c.dx > 0)) throw ConfigError("dx", "must be positive");
  if (!(c.dy > 0)) throw ConfigError("dy", "must be positive");
  return c;
}

RunConfig parse_config(const std::optional<std::string>& path, const ConfigMap& overrides) {
  ConfigMap entries;
  if (path) entries = read_config_file(*path);
  for (const auto& [k, v] : overrides) entries[k] = v;
  return resolve_config(entries);
}

ConfigMap to_map(const RunConfig& c) {
  ConfigMap m;
  m["case"] = cases::case_name(c.case_spec);
  if (auto* o = std::get_if<cases::ObliqueWave>(&c.case_spec)) {
    m["lambda"] = format(o->lambda);
    m["theta"] = format(o->theta);
  }
  if (auto* s = std::get_if<cases::SphericalRP>(&c.case_spec)) m["radius"] = format(s->radius);
  if (auto* s = std::get_if<cases::StationaryVortex>(&c.case_spec)) m["w"] = format(s->w);
  m["mesh"] = cases::to_string(c.mesh);
  if (c.mesh_file) m["mesh_file"] = *c.mesh_file;
  m["n"] = std::to_string(c.n);
  m["boundary"] = to_string(c.resolved_boundary());
  m["perturbation"] = format(c.family.perturbation);
  m["split_fraction"] = format(c.family.split_fraction);
  m["seed"] = std::to_string(c.seed);
  m["scheme"] = to_string(c.scheme.kind);
  m["order"] = std::to_string(c.scheme.order);
  m["stencil"] = to_string(c.scheme.stencil);
  m["cfl"] = format(c.cfl);
  m["t_end"] = format(c.t_end);
  m["output_every"] = std::to_string(c.output_every);
  m["output_dir"] = c.output_dir;
  m["threads"] = std::to_string(c.threads);
  std::string lv;
  for (std::size_t i = 0; i < c.levels.size(); ++i) lv += (i ? "," : "") + std::to_string(c.levels[i]);
  m["levels"] = lv;
  m["fourier_scheme"] = fourier::to_string(c.fourier_scheme);
  m["samples"] = std::to_string(c.samples);
  m["dx"] = format(c.dx);
  m["dy"] = format(c.dy);
  return m;
}

}  // namespace vfv
