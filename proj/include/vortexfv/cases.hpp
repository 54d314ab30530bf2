#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "vortexfv/mesh.hpp"
#include "vortexfv/state.hpp"
#include "vortexfv/timeint.hpp"

namespace vfv::cases {

// All cases live on the unit square.
struct ObliqueWave {
  double lambda = 0.5;
  double theta = 0.7853981633974483;
};
struct FourQuadrant {};
struct SphericalRP {
  double radius = 0.2;
  Vec2 center{0.5, 0.5};
};
struct StationaryVortex {
  double w = 0.2;
  Vec2 center{0.5, 0.5};
};

using CaseSpec = std::variant<ObliqueWave, FourQuadrant, SphericalRP, StationaryVortex>;

std::string case_name(const CaseSpec& c);
// Accepts oblique_wave, four_quadrant, spherical_rp, vortex.
CaseSpec case_from_string(const std::string& name);
BoundaryKind default_boundary(const CaseSpec& c);

struct Values {
  double u = 0, v = 0, p = 0;
};

Values initial_value(const CaseSpec& c, const Vec2& x);
// Centroid point values; ghost cells are refreshed from their donors.
State initialize(const CaseSpec& c, const Mesh& mesh);

Values exact_oblique(double t, double x, double y, double lambda, double theta);
// Radial velocity component of the four-quadrant problem; none for r > t.
std::optional<double> exact_fourquadrant_v(double t, double r);
double vortex_speed(double r, double w);

using ExactSolution = std::function<Values(const Vec2&)>;

struct ErrorReport {
  std::array<double, 3> l1{};  // u, v, p
  double h = 0;
};

// Sum over physical cells of |c| |q_c - q(x_c)| with x_c the wrapped centroid.
ErrorReport error_l1(const Mesh& mesh, const State& q, const ExactSolution& exact);

enum class MeshFamily { Cartesian, PerturbedQuad, TriQuad, Polygonal };

const char* to_string(MeshFamily f);
MeshFamily family_from_string(const std::string& s);

struct FamilyParams {
  double perturbation = 0.2;     // perturbed-quad amplitude
  double split_fraction = 0.5;   // tri-quad
  double triquad_perturbation = 0.0;
  double polygon_perturbation = 0.15;
};

// n x n lattice on the unit square.
Mesh make_mesh(MeshFamily family, int n, BoundaryKind boundary, std::uint64_t seed,
               const FamilyParams& params = {});

struct ConvergenceLevel {
  int n = 0;
  int cells = 0;
  double h = 0;  // 1/sqrt(number of cells)
  std::array<double, 3> l1{};
  std::array<double, 3> rate{};  // NaN on the first level
};

struct ConvergenceOptions {
  MeshFamily family = MeshFamily::Cartesian;
  std::vector<int> levels{32, 64, 128};
  SchemeSpec scheme;
  double cfl = 0.3;
  double t_end = 0.5;
  std::uint64_t seed = 1;
  FamilyParams params;
};

// Oblique wave on a refinement family; level k uses seed + k.
std::vector<ConvergenceLevel> convergence_study(const ObliqueWave& wave, const ConvergenceOptions& options);
void write_convergence_csv(std::ostream& os, const std::vector<ConvergenceLevel>& table);

// Nodes whose cell ring is closed and free of ghost cells. Boundary nodes next
// to ghost cells are excluded: the ghost copies are not driven by the nodal
// gradient, so the discrete curl is not conserved there.
std::vector<char> interior_nodes(const Mesh& mesh);

// Norms are sums of |c_n| |value_n| over interior nodes.
struct Diagnostics {
  double vorticity_l1 = 0;   // C_n v
  double divergence_l1 = 0;  // D_n v
  double boundary_vorticity_l1 = 0;  // C_n v on the remaining physical nodes
  std::optional<double> stencil_vorticity_l1;  // Cartesian lattices only
};

Diagnostics diagnostics(const Mesh& mesh, const State& q);

struct RadialSample {
  double r, value;
};

// One sample per physical cell, distance of the centroid to center.
std::vector<RadialSample> radial_profile(const Mesh& mesh, const std::vector<double>& field, const Vec2& center);
void write_radial_csv(std::ostream& os, const std::vector<RadialSample>& samples);

struct ProfileComparison {
  double relative_l1 = 0;
  int cells = 0;
};

// Relative L1 deviation of v from the singular profile over s_min <= r/t <= s_max,
// skipping cells whose centroid lies within band of the initial discontinuity lines.
ProfileComparison compare_fourquadrant(const Mesh& mesh, const State& q, double t, double s_min, double s_max,
                                       double band = 0.01);

}  // namespace vfv::cases
