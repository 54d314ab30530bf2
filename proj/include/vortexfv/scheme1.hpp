#pragma once

#include <array>
#include <vector>

#include "vortexfv/mesh.hpp"
#include "vortexfv/state.hpp"

namespace vfv {

enum class SchemeKind { NodalPressure, NodalVelocity };

const char* to_string(SchemeKind kind);

// Nodal-pressure closure p*_n (subedge form).
std::vector<double> nodal_pressure(const Mesh& mesh, const State& q);
// The same closure written with the nodal divergence; valid at nodes with a complete ring.
std::vector<double> nodal_pressure_via_divergence(const Mesh& mesh, const State& q);
State rhs_nodal_pressure(const Mesh& mesh, const State& q);

// Nodal-velocity closure v*_n; throws SingularNodalSystem on degenerate geometry.
std::vector<Vec2> nodal_velocity(const Mesh& mesh, const State& q);
State rhs_nodal_velocity(const Mesh& mesh, const State& q);

// Fluxes of one subedge as seen from its two cells, in global components.
// flux_v is the velocity flux (p-bar n_s), flux_p the pressure flux (u-bar),
// both measured along n_s. On a boundary subedge the right side mirrors the left.
struct SubEdgeFlux {
  NodeId node;
  EdgeId edge;
  double length;
  Vec2 flux_v_L, flux_v_R;
  double flux_p_L, flux_p_R;
};

// Literal per-subedge assembly from the one-sided Riemann solvers, with the
// nodal closure inserted. Used as an independent reference for the RHS.
std::vector<SubEdgeFlux> subedge_fluxes(const Mesh& mesh, const State& q, SchemeKind kind);
State rhs_subedge_assembly(const Mesh& mesh, const State& q, SchemeKind kind);
// Per node: sum over all subedges around it of |s| (f_L - f_R), components (u, v, p).
std::vector<std::array<double, 3>> nodal_conservation_residual(const Mesh& mesh, const State& q, SchemeKind kind);

}  // namespace vfv
