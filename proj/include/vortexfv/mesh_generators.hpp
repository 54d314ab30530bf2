#pragma once

#include <cstdint>

#include "vortexfv/mesh.hpp"

namespace vfv {

struct LatticeSpec {
  int nx = 1, ny = 1;
  double dx = 1, dy = 1;
  BoundaryKind boundary = BoundaryKind::Periodic;
  Vec2 origin = Vec2::Zero();

  // nx-by-ny cells covering [0,1]^2.
  static LatticeSpec unit_square(int nx, int ny, BoundaryKind boundary);
};

// Zero-gradient meshes carry a one-cell ghost ring; periodic meshes need nx, ny >= 2.
Mesh generate_cartesian(int nx, int ny, double dx, double dy, BoundaryKind boundary,
                        Vec2 origin = Vec2::Zero());
Mesh generate_cartesian(const LatticeSpec& spec);

// Interior nodes moved by at most amplitude*min(dx,dy).
Mesh generate_perturbed_quad(const LatticeSpec& spec, double amplitude, std::uint64_t seed);

// A random subset of the lattice quads is split along a random diagonal.
Mesh generate_mixed_triquad(const LatticeSpec& spec, double split_fraction, std::uint64_t seed,
                            double amplitude = 0.0);

// Rows of unit quads alternate with rows of double-width bricks (pattern Q B Q B B);
// bricks whose neighbouring rows have more vertices become pentagons and
// hexagons. nx must be even. A small perturbation removes the straight angles.
Mesh generate_polygonal(const LatticeSpec& spec, std::uint64_t seed, double amplitude = 0.15);

}  // namespace vfv
