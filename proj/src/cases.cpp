#include "vortexfv/cases.hpp"

#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "vortexfv/cartesian.hpp"
#include "vortexfv/errors.hpp"
#include "vortexfv/mesh_generators.hpp"
#include "vortexfv/operators.hpp"

namespace vfv::cases {

namespace {
template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
}  // namespace

std::string case_name(const CaseSpec& c) {
  return std::visit(overloaded{[](const ObliqueWave&) { return "oblique_wave"; },
                               [](const FourQuadrant&) { return "four_quadrant"; },
                               [](const SphericalRP&) { return "spherical_rp"; },
                               [](const StationaryVortex&) { return "vortex"; }},
                    c);
}

CaseSpec case_from_string(const std::string& name) {
  if (name == "oblique_wave" || name == "oblique") return ObliqueWave{};
  if (name == "four_quadrant" || name == "fourquadrant") return FourQuadrant{};
  if (name == "spherical_rp" || name == "spherical") return SphericalRP{};
  if (name == "vortex" || name == "stationary_vortex") return StationaryVortex{};
  throw std::invalid_argument("unknown case '" + name + "'");
}

BoundaryKind default_boundary(const CaseSpec& c) {
  if (std::holds_alternative<ObliqueWave>(c) || std::holds_alternative<StationaryVortex>(c))
    return BoundaryKind::Periodic;
  return BoundaryKind::ZeroGradient;
}

double vortex_speed(double r, double w) {
  if (r < w) return r / w;
  if (r < 2 * w) return 2 - r / w;
  return 0;
}

Values initial_value(const CaseSpec& c, const Vec2& x) {
  return std::visit(
      overloaded{[&](const ObliqueWave& o) { return exact_oblique(0.0, x.x(), x.y(), o.lambda, o.theta); },
                 [&](const FourQuadrant&) { return Values{x.x() > 0.5 && x.y() > 0.5 ? 1.0 : 0.0, 0.0, 0.0}; },
                 [&](const SphericalRP& s) { return Values{0, 0, (x - s.center).norm() < s.radius ? 1.0 : 0.0}; },
                 [&](const StationaryVortex& s) {
                   const Vec2 d = x - s.center;
                   const double r = d.norm();
                   if (r == 0) return Values{};
                   const double speed = vortex_speed(r, s.w);
                   return Values{-speed * d.y() / r, speed * d.x() / r, 0.0};
                 }},
      c);
}

State initialize(const CaseSpec& c, const Mesh& mesh) {
  State q(mesh.num_cells());
  for (CellId k = 0; k < static_cast<CellId>(mesh.num_cells()); ++k) {
    if (mesh.is_ghost(k)) continue;
    const Values val = initial_value(c, mesh.cell_center(k));
    q.u[k] = val.u;
    q.v[k] = val.v;
    q.p[k] = val.p;
  }
  refresh_ghosts(mesh, q);
  return q;
}

Values exact_oblique(double t, double x, double y, double lambda, double theta) {
  const double xi = x * std::cos(theta) + y * std::sin(theta);
  const double k = 2 * M_PI / (lambda * std::cos(theta));
  const double plus = std::cos(k * (xi + t)), minus = std::cos(k * (xi - t));
  const double a = -0.5 * (plus - minus);
  return {a * std::cos(theta), a * std::sin(theta), 0.5 * (plus + minus)};
}

std::optional<double> exact_fourquadrant_v(double t, double r) {
  if (!(t > 0)) throw DomainError("four-quadrant profile needs t > 0");
  const double s = r / t;
  if (!(s > 0)) throw DomainError("four-quadrant profile needs r/t > 0");
  if (s > 1) return std::nullopt;
  return std::log((1 + std::sqrt(1 - s * s)) / s) / (2 * M_PI);
}

ErrorReport error_l1(const Mesh& mesh, const State& q, const ExactSolution& exact) {
  ErrorReport rep;
  for (CellId c = 0; c < static_cast<CellId>(mesh.num_physical_cells()); ++c) {
    const Values e = exact(mesh.cell_center(c));
    const double a = mesh.cell_area(c);
    rep.l1[0] += a * std::abs(q.u[c] - e.u);
    rep.l1[1] += a * std::abs(q.v[c] - e.v);
    rep.l1[2] += a * std::abs(q.p[c] - e.p);
  }
  rep.h = 1.0 / std::sqrt(static_cast<double>(mesh.num_physical_cells()));
  return rep;
}

const char* to_string(MeshFamily f) {
  switch (f) {
    case MeshFamily::Cartesian: return "cartesian";
    case MeshFamily::PerturbedQuad: return "quad";
    case MeshFamily::TriQuad: return "triquad";
    case MeshFamily::Polygonal: return "polygonal";
  }
  return "?";
}

MeshFamily family_from_string(const std::string& s) {
  if (s == "cartesian") return MeshFamily::Cartesian;
  if (s == "quad" || s == "perturbed_quad") return MeshFamily::PerturbedQuad;
  if (s == "triquad" || s == "tri_quad") return MeshFamily::TriQuad;
  if (s == "polygonal" || s == "pentagon") return MeshFamily::Polygonal;
  throw std::invalid_argument("unknown mesh family '" + s + "'");
}

Mesh make_mesh(MeshFamily family, int n, BoundaryKind boundary, std::uint64_t seed, const FamilyParams& params) {
  const LatticeSpec spec = LatticeSpec::unit_square(n, n, boundary);
  switch (family) {
    case MeshFamily::Cartesian: return generate_cartesian(spec);
    case MeshFamily::PerturbedQuad: return generate_perturbed_quad(spec, params.perturbation, seed);
    case MeshFamily::TriQuad:
      return generate_mixed_triquad(spec, params.split_fraction, seed, params.triquad_perturbation);
    case MeshFamily::Polygonal: return generate_polygonal(spec, seed, params.polygon_perturbation);
  }
  throw std::invalid_argument("unknown mesh family");
}

std::vector<ConvergenceLevel> convergence_study(const ObliqueWave& wave, const ConvergenceOptions& options) {
  std::vector<ConvergenceLevel> table;
  for (std::size_t k = 0; k < options.levels.size(); ++k) {
    const Mesh mesh = make_mesh(options.family, options.levels[k], BoundaryKind::Periodic, options.seed + k,
                                options.params);
    TimeControl control;
    control.cfl = options.cfl;
    control.t_end = options.t_end;
    control.order = options.scheme.order;
    control.observe_every = std::numeric_limits<int>::max();
    const RunResult res = run(mesh, initialize(wave, mesh), control, options.scheme, {});
    const ErrorReport err = error_l1(mesh, res.state, [&](const Vec2& x) {
      return exact_oblique(res.t, x.x(), x.y(), wave.lambda, wave.theta);
    });
    ConvergenceLevel lvl;
    lvl.n = options.levels[k];
    lvl.cells = mesh.num_physical_cells();
    lvl.h = err.h;
    lvl.l1 = err.l1;
    lvl.rate.fill(std::numeric_limits<double>::quiet_NaN());
    if (!table.empty()) {
      const ConvergenceLevel& prev = table.back();
      for (int i = 0; i < 3; ++i) lvl.rate[i] = std::log(prev.l1[i] / lvl.l1[i]) / std::log(prev.h / lvl.h);
    }
    table.push_back(lvl);
  }
  return table;
}

void write_convergence_csv(std::ostream& os, const std::vector<ConvergenceLevel>& table) {
  os << "n,cells,h,err_u,err_v,err_p,rate_u,rate_v,rate_p\n";
  os.precision(10);
  for (const auto& l : table) {
    os << l.n << ',' << l.cells << ',' << l.h;
    for (double e : l.l1) os << ',' << e;
    for (double r : l.rate) {
      os << ',';
      if (!std::isnan(r)) os << r;
    }
    os << '\n';
  }
}

std::vector<char> interior_nodes(const Mesh& mesh) {
  std::vector<char> mask(mesh.num_nodes(), 0);
  for (NodeId n = 0; n < static_cast<NodeId>(mesh.num_nodes()); ++n) {
    if (!mesh.node_complete(n)) continue;
    bool ok = true;
    for (CornerId k : mesh.node_corners(n)) ok = ok && !mesh.is_ghost(mesh.corner_cell(k));
    mask[n] = ok;
  }
  return mask;
}

namespace {
double masked_l1(const Mesh& mesh, const std::vector<double>& f, const std::vector<char>& mask) {
  double sum = 0;
  for (NodeId n = 0; n < static_cast<NodeId>(mesh.num_nodes()); ++n)
    if (mask[n] && !std::isnan(f[n])) sum += mesh.dual_area(n) * std::abs(f[n]);
  return sum;
}
}  // namespace

Diagnostics diagnostics(const Mesh& mesh, const State& q) {
  const CellVectorField v = q.velocity_field();
  const std::vector<char> mask = interior_nodes(mesh);
  Diagnostics d;
  d.vorticity_l1 = masked_l1(mesh, curl_C(mesh, v), mask);
  d.divergence_l1 = masked_l1(mesh, divergence_D(mesh, v), mask);
  d.boundary_vorticity_l1 = nodal_l1(mesh, curl_C(mesh, v)) - d.vorticity_l1;
  if (mesh.lattice()) d.stencil_vorticity_l1 = masked_l1(mesh, cartesian::vorticity_stencil(mesh, q), mask);
  return d;
}

std::vector<RadialSample> radial_profile(const Mesh& mesh, const std::vector<double>& field, const Vec2& center) {
  std::vector<RadialSample> out;
  out.reserve(mesh.num_physical_cells());
  for (CellId c = 0; c < static_cast<CellId>(mesh.num_physical_cells()); ++c)
    out.push_back({(mesh.cell_center(c) - center).norm(), field[c]});
  return out;
}

void write_radial_csv(std::ostream& os, const std::vector<RadialSample>& samples) {
  os << "r,value\n";
  os.precision(17);
  for (const auto& s : samples) os << s.r << ',' << s.value << '\n';
}

ProfileComparison compare_fourquadrant(const Mesh& mesh, const State& q, double t, double s_min, double s_max,
                                       double band) {
  ProfileComparison cmp;
  double diff = 0, norm = 0;
  const Vec2 center(0.5, 0.5);
  for (CellId c = 0; c < static_cast<CellId>(mesh.num_physical_cells()); ++c) {
    const Vec2 x = mesh.cell_center(c);
    if (std::abs(x.x() - 0.5) < band && x.y() > 0.5) continue;
    if (std::abs(x.y() - 0.5) < band && x.x() > 0.5) continue;
    const double r = (x - center).norm();
    const double s = r / t;
    if (s < s_min || s > s_max) continue;
    const double exact = *exact_fourquadrant_v(t, r);
    diff += mesh.cell_area(c) * std::abs(q.v[c] - exact);
    norm += mesh.cell_area(c) * std::abs(exact);
    ++cmp.cells;
  }
  cmp.relative_l1 = norm > 0 ? diff / norm : 0.0;
  return cmp;
}

}  // namespace vfv::cases
