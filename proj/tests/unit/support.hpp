#pragma once

// Hand-rolled generators for the property tests.

#include <cstdint>
#include <random>

#include "vortexfv/cases.hpp"
#include "vortexfv/mesh.hpp"
#include "vortexfv/mesh_generators.hpp"
#include "vortexfv/operators.hpp"
#include "vortexfv/state.hpp"

namespace testing {

using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double a = -1.0, double b = 1.0) {
  return std::uniform_real_distribution<double>(a, b)(rng);
}

inline int uniform_int(Rng& rng, int a, int b) { return std::uniform_int_distribution<int>(a, b)(rng); }

// Random physical values; ghost cells copy their donors.
inline vfv::State random_state(const vfv::Mesh& mesh, Rng& rng) {
  vfv::State q(mesh.num_cells());
  for (std::size_t c = 0; c < mesh.num_cells(); ++c) {
    q.u[c] = uniform(rng);
    q.v[c] = uniform(rng);
    q.p[c] = uniform(rng);
  }
  vfv::refresh_ghosts(mesh, q);
  return q;
}

inline std::vector<double> random_nodal(const vfv::Mesh& mesh, Rng& rng) {
  std::vector<double> f(mesh.num_nodes());
  for (double& x : f) x = uniform(rng);
  return f;
}

inline vfv::CellVectorField random_cell_vectors(const vfv::Mesh& mesh, Rng& rng) {
  vfv::CellVectorField v(mesh.num_cells());
  for (auto& x : v) x = vfv::Vec2(uniform(rng), uniform(rng));
  return v;
}

// Families whose cells have at most four nodes.
inline vfv::cases::MeshFamily random_quadlike_family(Rng& rng) {
  using F = vfv::cases::MeshFamily;
  const F all[] = {F::Cartesian, F::PerturbedQuad, F::TriQuad};
  return all[uniform_int(rng, 0, 2)];
}

inline vfv::Mesh random_mesh(Rng& rng, vfv::BoundaryKind boundary, bool allow_polygonal = false) {
  using F = vfv::cases::MeshFamily;
  F family = random_quadlike_family(rng);
  if (allow_polygonal && uniform_int(rng, 0, 3) == 0) family = F::Polygonal;
  int n = uniform_int(rng, 3, 9);
  if (family == F::Polygonal) n = 2 * uniform_int(rng, 2, 5);
  vfv::cases::FamilyParams params;
  params.perturbation = uniform(rng, 0.0, 0.25);
  params.split_fraction = uniform(rng, 0.0, 1.0);
  params.triquad_perturbation = uniform(rng, 0.0, 0.15);
  return vfv::cases::make_mesh(family, n, boundary, rng(), params);
}

inline double sum_abs(const std::vector<double>& f) {
  double s = 0;
  for (double x : f) s += std::abs(x);
  return s;
}

inline double max_abs_physical(const vfv::Mesh& mesh, const vfv::State& q) {
  double m = 0;
  for (std::size_t c = 0; c < mesh.num_cells(); ++c) {
    if (mesh.is_ghost(static_cast<vfv::CellId>(c))) continue;
    m = std::max({m, std::abs(q.u[c]), std::abs(q.v[c]), std::abs(q.p[c])});
  }
  return m;
}

inline double max_diff(const vfv::Mesh& mesh, const vfv::State& a, const vfv::State& b) {
  double m = 0;
  for (std::size_t c = 0; c < mesh.num_cells(); ++c) {
    if (mesh.is_ghost(static_cast<vfv::CellId>(c))) continue;
    m = std::max({m, std::abs(a.u[c] - b.u[c]), std::abs(a.v[c] - b.v[c]), std::abs(a.p[c] - b.p[c])});
  }
  return m;
}

}  // namespace testing
