#pragma once

#include <vector>

#include "vortexfv/mesh.hpp"
#include "vortexfv/state.hpp"

namespace vfv {

enum class StencilKind { EdgeNeighbors, NodeNeighbors };

const char* to_string(StencilKind kind);
StencilKind stencil_from_string(const std::string& s);

// Per-cell slopes (a1, a2) of q_c + a1 (x - x_c) + a2 (y - y_c).
struct GradientField {
  std::vector<Vec2> u, v, p;
};

// Least-squares fit of neighbour averages; the geometry-only part (stencil,
// centroid offsets, inverse normal matrices) is computed once per mesh.
class Reconstructor {
 public:
  Reconstructor(const Mesh& mesh, StencilKind stencil);
  GradientField operator()(const State& q) const;
  StencilKind stencil() const { return stencil_; }

  struct Entry {
    CellId cell;
    Vec2 offset;  // neighbour centroid relative to the cell centroid
  };
  std::span<const Entry> neighbours(CellId c) const {
    return {entries_.data() + offsets_[c], static_cast<std::size_t>(offsets_[c + 1] - offsets_[c])};
  }

 private:
  const Mesh* mesh_;
  StencilKind stencil_;
  std::vector<int> offsets_;
  std::vector<Entry> entries_;
  std::vector<Eigen::Matrix2d> inverse_;
};

GradientField reconstruct(const Mesh& mesh, const State& q, StencilKind stencil);

// Nodal pressure with corner values taken from the reconstruction.
std::vector<double> nodal_pressure_2(const Mesh& mesh, const State& q, const GradientField& grad);
State rhs_second_order(const Mesh& mesh, const State& q, const GradientField& grad);

// Both routes to the velocity self-contribution of the pressure update:
// sum over corners of v_r(x_n) . l n / |c|, and the trace of the velocity slope.
struct TraceCheck {
  std::vector<double> subedge_sum, trace;
};
TraceCheck velocity_self_contribution(const Mesh& mesh, const State& q, const GradientField& grad);

}  // namespace vfv
