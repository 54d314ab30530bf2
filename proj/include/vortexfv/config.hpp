#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "vortexfv/cases.hpp"
#include "vortexfv/fourier.hpp"
#include "vortexfv/timeint.hpp"

namespace vfv {

using ConfigMap = std::map<std::string, std::string>;

struct RunConfig {
  cases::CaseSpec case_spec = cases::StationaryVortex{};

  // Mesh source: a generator family, or a mesh file when mesh_file is set.
  cases::MeshFamily mesh = cases::MeshFamily::Cartesian;
  std::optional<std::string> mesh_file;
  int n = 64;
  std::optional<BoundaryKind> boundary;  // none: the case default
  cases::FamilyParams family;
  std::uint64_t seed = 1;

  SchemeSpec scheme;
  double cfl = 0.3;
  double t_end = 0.1;
  int output_every = 0;  // field dumps every k steps; 0 dumps the first and last state only
  std::string output_dir = "out";
  int threads = 0;  // 0: leave the OpenMP default

  // converge
  std::vector<int> levels{32, 64, 128};
  // fourier
  fourier::Scheme fourier_scheme = fourier::Scheme::NodalPressure1;
  int samples = 64;
  double dx = 1.0, dy = 1.0;

  BoundaryKind resolved_boundary() const;
};

// Keys understood by the parser, with a one-line description each.
const std::vector<std::pair<std::string, std::string>>& config_keys();

// Flat "key = value" lines; '#' starts a comment. Unknown keys are rejected.
ConfigMap read_config_map(std::istream& in);
ConfigMap read_config_file(const std::string& path);

// Applies the entries on top of the defaults and validates the result.
// Throws ConfigError naming the offending key, UnsupportedCombination for
// nodal_velocity with order 2.
RunConfig resolve_config(const ConfigMap& entries);

// File entries, then overrides (flags win).
RunConfig parse_config(const std::optional<std::string>& path, const ConfigMap& overrides = {});

// Resolved configuration as key/value strings (round-trips through resolve_config).
ConfigMap to_map(const RunConfig& config);

}  // namespace vfv
