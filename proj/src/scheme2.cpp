#include "vortexfv/scheme2.hpp"

#include <Eigen/Eigenvalues>
#include <cassert>
#include <cmath>
#include <stdexcept>

#include "nodal_core.hpp"

namespace vfv {

const char* to_string(StencilKind kind) {
  return kind == StencilKind::EdgeNeighbors ? "edge" : "node";
}

StencilKind stencil_from_string(const std::string& s) {
  if (s == "edge" || s == "edges") return StencilKind::EdgeNeighbors;
  if (s == "node" || s == "nodes") return StencilKind::NodeNeighbors;
  throw std::invalid_argument("unknown stencil '" + s + "'");
}

Reconstructor::Reconstructor(const Mesh& mesh, StencilKind stencil) : mesh_(&mesh), stencil_(stencil) {
  const auto nc = static_cast<CellId>(mesh.num_cells());
  offsets_.assign(nc + 1, 0);
  inverse_.resize(nc);
  std::vector<Entry> local;
  for (CellId c = 0; c < nc; ++c) {
    local.clear();
    const Vec2& xc = mesh.cell_centroid(c);
    auto add = [&](CornerId own, CornerId other) {
      const CellId d = mesh.corner_cell(other);
      // Carry the neighbour into this cell's frame through the shared node.
      const Vec2 off = mesh.corner_pos(own) + (mesh.cell_centroid(d) - mesh.corner_pos(other)) - xc;
      if (d == c && off.norm() < 1e-12 * std::sqrt(mesh.cell_area(c))) return;
      for (const Entry& e : local)
        if (e.cell == d && (e.offset - off).norm() < 1e-9 * std::sqrt(mesh.cell_area(c))) return;
      local.push_back({d, off});
    };
    for (CornerId k = mesh.corner_begin(c); k < mesh.corner_end(c); ++k) {
      if (stencil == StencilKind::NodeNeighbors) {
        for (CornerId o : mesh.node_corners(mesh.corner_node(k))) add(k, o);
      } else {
        // Edge leaving this corner: the other cell's corner at the same node.
        const EdgeId e = mesh.corner_edges(k)[1];
        const auto& ec = mesh.edge_corners(e);
        for (CornerId o : ec)
          if (o != kNoCorner && mesh.corner_cell(o) != c && mesh.corner_node(o) == mesh.corner_node(k)) add(k, o);
      }
    }
    Eigen::Matrix2d m = Eigen::Matrix2d::Zero();
    for (const Entry& e : local) m += e.offset * e.offset.transpose();
    const Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> eig(m);
    const double lo = eig.eigenvalues()(0), hi = eig.eigenvalues()(1);
    if (local.size() < 2 || !(lo > 0) || hi / lo > 1e12)
      throw DegenerateStencil("least-squares stencil of cell " + std::to_string(c) + " is degenerate");
    inverse_[c] = m.inverse();
    entries_.insert(entries_.end(), local.begin(), local.end());
    offsets_[c + 1] = static_cast<int>(entries_.size());
  }
}

GradientField Reconstructor::operator()(const State& q) const {
  const auto nc = static_cast<CellId>(mesh_->num_cells());
  GradientField g;
  g.u.resize(nc);
  g.v.resize(nc);
  g.p.resize(nc);
#pragma omp parallel for schedule(static)
  for (CellId c = 0; c < nc; ++c) {
    Vec2 bu = Vec2::Zero(), bv = Vec2::Zero(), bp = Vec2::Zero();
    for (const Entry& e : neighbours(c)) {
      bu += e.offset * (q.u[e.cell] - q.u[c]);
      bv += e.offset * (q.v[e.cell] - q.v[c]);
      bp += e.offset * (q.p[e.cell] - q.p[c]);
    }
    g.u[c] = inverse_[c] * bu;
    g.v[c] = inverse_[c] * bv;
    g.p[c] = inverse_[c] * bp;
  }
  return g;
}

GradientField reconstruct(const Mesh& mesh, const State& q, StencilKind stencil) {
  return Reconstructor(mesh, stencil)(q);
}

namespace {

struct ReconstructedValues {
  const Mesh& mesh;
  const State& q;
  const GradientField& g;
  detail::CornerValue operator()(CornerId k) const {
    const CellId c = mesh.corner_cell(k);
    const Vec2 d = mesh.corner_pos(k) - mesh.cell_centroid(c);
    return {q.u[c] + g.u[c].dot(d), q.v[c] + g.v[c].dot(d), q.p[c] + g.p[c].dot(d)};
  }
};

}  // namespace

std::vector<double> nodal_pressure_2(const Mesh& mesh, const State& q, const GradientField& grad) {
  std::vector<double> pstar;
  detail::nodal_pressure_kernel(mesh, ReconstructedValues{mesh, q, grad}, pstar);
  return pstar;
}

State rhs_second_order(const Mesh& mesh, const State& q, const GradientField& grad) {
  const ReconstructedValues values{mesh, q, grad};
  std::vector<double> pstar;
  detail::nodal_pressure_kernel(mesh, values, pstar);
  State out;
  detail::nodal_pressure_update(mesh, values, pstar, true, out);
#ifndef NDEBUG
  const TraceCheck t = velocity_self_contribution(mesh, q, grad);
  for (std::size_t c = 0; c < t.trace.size(); ++c)
    assert(std::abs(t.trace[c] - t.subedge_sum[c]) <= 1e-8 * (1.0 + std::abs(t.trace[c])));
#endif
  return out;
}

TraceCheck velocity_self_contribution(const Mesh& mesh, const State& q, const GradientField& grad) {
  const ReconstructedValues values{mesh, q, grad};
  TraceCheck t;
  t.subedge_sum.assign(mesh.num_cells(), 0.0);
  t.trace.assign(mesh.num_cells(), 0.0);
  for (std::size_t c = 0; c < mesh.num_cells(); ++c) {
    const auto id = static_cast<CellId>(c);
    double s = 0;
    for (CornerId k = mesh.corner_begin(id); k < mesh.corner_end(id); ++k) {
      const detail::CornerValue v = values(k);
      for (const CornerSubEdge& se : mesh.corner_subedges(k)) s += se.length * (v.u * se.normal.x() + v.v * se.normal.y());
    }
    t.subedge_sum[c] = s / mesh.cell_area(id);
    t.trace[c] = grad.u[c].x() + grad.v[c].y();
  }
  return t;
}

}  // namespace vfv
