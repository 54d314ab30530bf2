#pragma once

// Closure and update kernels shared by the first- and second-order schemes.
// Values entering the kernels are "corner values": the state of the corner's
// cell evaluated at the node (the cell average at first order).

#include <cmath>
#include <string>
#include <vector>

#include "vortexfv/errors.hpp"
#include "vortexfv/mesh.hpp"
#include "vortexfv/state.hpp"

namespace vfv::detail {

struct CornerValue {
  double u, v, p;
};

// p*_n = sum_s |s| ((pL + pR)/2 - (vR - vL).n_s / 2) / sum_s |s|.
// A subedge without a right cell uses the left state on both sides.
template <class Corner>
void nodal_pressure_kernel(const Mesh& mesh, Corner&& value, std::vector<double>& pstar) {
  const auto nn = static_cast<NodeId>(mesh.num_nodes());
  pstar.resize(nn);
#pragma omp parallel for schedule(static)
  for (NodeId n = 0; n < nn; ++n) {
    double num = 0, den = 0;
    for (const SubEdge& s : mesh.node_subedges(n)) {
      const CornerValue L = value(s.left);
      const CornerValue R = s.right == kNoCorner ? L : value(s.right);
      const double jump = (R.u - L.u) * s.normal.x() + (R.v - L.v) * s.normal.y();
      num += s.length * (0.5 * (L.p + R.p) - 0.5 * jump);
      den += s.length;
    }
    pstar[n] = num / den;
  }
}

// dv_c = -1/|c| sum_k l_k n_k p*_n ;
// dp_c = -1/|c| sum_k [v_k . l_k n_k + w_k (p_k - p*_n)] (velocity term optional).
template <class Corner>
void nodal_pressure_update(const Mesh& mesh, Corner&& value, const std::vector<double>& pstar,
                           bool velocity_term, State& out) {
  const auto nc = static_cast<CellId>(mesh.num_cells());
  out = State(nc);
#pragma omp parallel for schedule(static)
  for (CellId c = 0; c < nc; ++c) {
    if (mesh.is_ghost(c)) continue;
    Vec2 gv = Vec2::Zero();
    double dp = 0;
    for (CornerId k = mesh.corner_begin(c); k < mesh.corner_end(c); ++k) {
      const Vec2& ln = mesh.corner_normal(k);
      const double ps = pstar[mesh.corner_node(k)];
      const CornerValue q = value(k);
      gv += ln * ps;
      dp += mesh.corner_weight(k) * (q.p - ps);
      if (velocity_term) dp += ln.x() * q.u + ln.y() * q.v;
    }
    const double inv = 1.0 / mesh.cell_area(c);
    out.u[c] = -gv.x() * inv;
    out.v[c] = -gv.y() * inv;
    out.p[c] = -dp * inv;
  }
}

// Solve [sum_s |s| 2 n n^T] v* = sum_s |s| (pL - pR + (vL + vR).n) n.
template <class Corner>
void nodal_velocity_kernel(const Mesh& mesh, Corner&& value, std::vector<Vec2>& vstar) {
  const auto nn = static_cast<NodeId>(mesh.num_nodes());
  vstar.resize(nn);
  bool singular = false;
  NodeId bad = 0;
#pragma omp parallel for schedule(static)
  for (NodeId n = 0; n < nn; ++n) {
    double a = 0, b = 0, d = 0;
    Vec2 rhs = Vec2::Zero();
    for (const SubEdge& s : mesh.node_subedges(n)) {
      const CornerValue L = value(s.left);
      const CornerValue R = s.right == kNoCorner ? L : value(s.right);
      const Vec2& nv = s.normal;
      a += 2 * s.length * nv.x() * nv.x();
      b += 2 * s.length * nv.x() * nv.y();
      d += 2 * s.length * nv.y() * nv.y();
      const double w = L.p - R.p + (L.u + R.u) * nv.x() + (L.v + R.v) * nv.y();
      rhs += s.length * w * nv;
    }
    const double det = a * d - b * b;
    if (!(std::abs(det) > 1e-12 * (a + d) * (a + d))) {
#pragma omp critical
      {
        singular = true;
        bad = n;
      }
      continue;
    }
    vstar[n] = Vec2(d * rhs.x() - b * rhs.y(), -b * rhs.x() + a * rhs.y()) / det;
  }
  if (singular) throw SingularNodalSystem("nodal velocity system is singular at node " + std::to_string(bad));
}

}  // namespace vfv::detail
