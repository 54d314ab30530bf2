#pragma once

// Closed-form Cartesian versions of the schemes, written with lattice index
// arithmetic only. They serve as an independent check of the general-mesh code
// and require a mesh produced by generate_cartesian.

#include <vector>

#include "vortexfv/mesh.hpp"
#include "vortexfv/state.hpp"

namespace vfv::cartesian {

enum class Stencil { S5, S9 };

// Values at mesh node ids; entries for nodes outside the lattice range are NaN.
std::vector<double> nodal_pressure(const Mesh& mesh, const State& q);
State rhs_nodal_pressure(const Mesh& mesh, const State& q);
// Fully expanded 3x3 stencils; only for dx == dy.
State rhs_nodal_pressure_expanded(const Mesh& mesh, const State& q);

std::vector<Vec2> nodal_velocity(const Mesh& mesh, const State& q);
State rhs_nodal_velocity(const Mesh& mesh, const State& q);

// Explicit least-squares slopes on 5- and 9-point stencils; periodic meshes only.
struct Slopes {
  std::vector<Vec2> u, v, p;
};
Slopes slopes(const Mesh& mesh, const State& q, Stencil stencil);
std::vector<double> nodal_pressure_2(const Mesh& mesh, const State& q, Stencil stencil);
State rhs_second_order(const Mesh& mesh, const State& q, Stencil stencil);

// {[u]}-type vorticity stencil at each node: [{u}]/(2 dy) - {[v]}/(2 dx).
std::vector<double> vorticity_stencil(const Mesh& mesh, const State& q);

}  // namespace vfv::cartesian
