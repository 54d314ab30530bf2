#include "vortexfv/scheme1.hpp"

#include <cassert>
#include <cmath>

#include "nodal_core.hpp"
#include "vortexfv/operators.hpp"
#include "vortexfv/riemann.hpp"

namespace vfv {

const char* to_string(SchemeKind kind) {
  return kind == SchemeKind::NodalPressure ? "nodal_pressure" : "nodal_velocity";
}

namespace {

struct CellValues {
  const Mesh& mesh;
  const State& q;
  detail::CornerValue operator()(CornerId k) const {
    const CellId c = mesh.corner_cell(k);
    return {q.u[c], q.v[c], q.p[c]};
  }
};

#ifndef NDEBUG
void check_against_divergence_form(const Mesh& mesh, const State& q, const std::vector<double>& pstar) {
  const std::vector<double> alt = nodal_pressure_via_divergence(mesh, q);
  const double scale = 1.0 + max_abs(q);
  for (std::size_t n = 0; n < mesh.num_nodes(); ++n)
    if (mesh.node_complete(static_cast<NodeId>(n))) assert(std::abs(alt[n] - pstar[n]) <= 1e-10 * scale);
}
#endif

}  // namespace

std::vector<double> nodal_pressure(const Mesh& mesh, const State& q) {
  std::vector<double> pstar;
  detail::nodal_pressure_kernel(mesh, CellValues{mesh, q}, pstar);
#ifndef NDEBUG
  check_against_divergence_form(mesh, q, pstar);
#endif
  return pstar;
}

std::vector<double> nodal_pressure_via_divergence(const Mesh& mesh, const State& q) {
  const NodalScalarField div = divergence_D(mesh, q.velocity_field());
  std::vector<double> out(mesh.num_nodes());
  for (std::size_t n = 0; n < mesh.num_nodes(); ++n) {
    double avg = 0, den = 0;
    for (const SubEdge& s : mesh.node_subedges(static_cast<NodeId>(n))) {
      const CellId L = mesh.corner_cell(s.left);
      const CellId R = s.right == kNoCorner ? L : mesh.corner_cell(s.right);
      avg += s.length * 0.5 * (q.p[L] + q.p[R]);
      den += s.length;
    }
    out[n] = (avg - 0.5 * mesh.dual_area(static_cast<NodeId>(n)) * div[n]) / den;
  }
  return out;
}

State rhs_nodal_pressure(const Mesh& mesh, const State& q) {
  const std::vector<double> pstar = nodal_pressure(mesh, q);
  State out;
  // The velocity contribution to the pressure update vanishes because the
  // node normals of a cell sum to zero (checked when the mesh is built).
  detail::nodal_pressure_update(mesh, CellValues{mesh, q}, pstar, false, out);
#ifndef NDEBUG
  State full;
  detail::nodal_pressure_update(mesh, CellValues{mesh, q}, pstar, true, full);
  const double scale = 1e-9 * (1.0 + max_abs(q));
  for (std::size_t c = 0; c < out.size(); ++c)
    assert(std::abs(full.p[c] - out.p[c]) <= scale / std::sqrt(mesh.cell_area(static_cast<CellId>(c))));
#endif
  return out;
}

std::vector<Vec2> nodal_velocity(const Mesh& mesh, const State& q) {
  std::vector<Vec2> vstar;
  detail::nodal_velocity_kernel(mesh, CellValues{mesh, q}, vstar);
  return vstar;
}

State rhs_nodal_velocity(const Mesh& mesh, const State& q) {
  const std::vector<Vec2> vstar = nodal_velocity(mesh, q);
  const auto nc = static_cast<CellId>(mesh.num_cells());
  State out(nc);
#pragma omp parallel for schedule(static)
  for (CellId c = 0; c < nc; ++c) {
    if (mesh.is_ghost(c)) continue;
    const Vec2 vc = q.velocity(c);
    Vec2 fv = Vec2::Zero();
    double fp = 0;
    for (CornerId k = mesh.corner_begin(c); k < mesh.corner_end(c); ++k) {
      const Vec2& vs = vstar[mesh.corner_node(k)];
      for (const CornerSubEdge& s : mesh.corner_subedges(k)) fv += s.length * (q.p[c] + (vc - vs).dot(s.normal)) * s.normal;
      fp += mesh.corner_normal(k).dot(vs);
    }
    const double inv = 1.0 / mesh.cell_area(c);
    out.u[c] = -fv.x() * inv;
    out.v[c] = -fv.y() * inv;
    out.p[c] = -fp * inv;
  }
  return out;
}

std::vector<SubEdgeFlux> subedge_fluxes(const Mesh& mesh, const State& q, SchemeKind kind) {
  std::vector<double> pstar;
  std::vector<Vec2> vstar;
  if (kind == SchemeKind::NodalPressure)
    pstar = nodal_pressure(mesh, q);
  else
    vstar = nodal_velocity(mesh, q);
  std::vector<SubEdgeFlux> out;
  for (std::size_t n = 0; n < mesh.num_nodes(); ++n) {
    for (const SubEdge& s : mesh.node_subedges(static_cast<NodeId>(n))) {
      const riemann::Rotation rot(s.normal);
      const CellId L = mesh.corner_cell(s.left);
      const CellId R = s.right == kNoCorner ? L : mesh.corner_cell(s.right);
      const riemann::AcousticState qL = riemann::rotate_in(q.velocity(L), q.p[L], rot);
      const riemann::AcousticState qR = riemann::rotate_in(q.velocity(R), q.p[R], rot);
      riemann::SplitFlux f;
      if (kind == SchemeKind::NodalPressure) {
        f = riemann::flux_free_pressure(qL, qR, pstar[n]);
      } else {
        f = riemann::flux_free_velocity(qL, qR, vstar[n].dot(s.normal));
      }
      // The velocity flux has no tangential component.
      out.push_back({static_cast<NodeId>(n), s.edge, s.length, riemann::rotate_out(f.flux_u_L, 0.0, rot),
                     riemann::rotate_out(f.flux_u_R, 0.0, rot), f.flux_p_L, f.flux_p_R});
    }
  }
  return out;
}

State rhs_subedge_assembly(const Mesh& mesh, const State& q, SchemeKind kind) {
  const std::vector<SubEdgeFlux> fluxes = subedge_fluxes(mesh, q, kind);
  State acc(mesh.num_cells());
  std::size_t i = 0;
  for (std::size_t n = 0; n < mesh.num_nodes(); ++n) {
    for (const SubEdge& s : mesh.node_subedges(static_cast<NodeId>(n))) {
      const SubEdgeFlux& f = fluxes[i++];
      const CellId L = mesh.corner_cell(s.left);
      acc.u[L] += s.length * f.flux_v_L.x();
      acc.v[L] += s.length * f.flux_v_L.y();
      acc.p[L] += s.length * f.flux_p_L;
      if (s.right != kNoCorner) {
        const CellId R = mesh.corner_cell(s.right);
        acc.u[R] -= s.length * f.flux_v_R.x();
        acc.v[R] -= s.length * f.flux_v_R.y();
        acc.p[R] -= s.length * f.flux_p_R;
      }
    }
  }
  State out(mesh.num_cells());
  for (std::size_t c = 0; c < mesh.num_cells(); ++c) {
    if (mesh.is_ghost(static_cast<CellId>(c))) continue;
    const double inv = 1.0 / mesh.cell_area(static_cast<CellId>(c));
    out.u[c] = -acc.u[c] * inv;
    out.v[c] = -acc.v[c] * inv;
    out.p[c] = -acc.p[c] * inv;
  }
  return out;
}

std::vector<std::array<double, 3>> nodal_conservation_residual(const Mesh& mesh, const State& q, SchemeKind kind) {
  const std::vector<SubEdgeFlux> fluxes = subedge_fluxes(mesh, q, kind);
  std::vector<std::array<double, 3>> res(mesh.num_nodes(), {0, 0, 0});
  for (const SubEdgeFlux& f : fluxes) {
    auto& r = res[f.node];
    r[0] += f.length * (f.flux_v_L.x() - f.flux_v_R.x());
    r[1] += f.length * (f.flux_v_L.y() - f.flux_v_R.y());
    r[2] += f.length * (f.flux_p_L - f.flux_p_R);
  }
  return res;
}

}  // namespace vfv
