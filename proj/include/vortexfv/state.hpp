#pragma once

#include <array>
#include <vector>

#include "vortexfv/mesh.hpp"
#include "vortexfv/operators.hpp"

namespace vfv {

struct State {
  std::vector<double> u, v, p;

  State() = default;
  explicit State(std::size_t n) : u(n, 0.0), v(n, 0.0), p(n, 0.0) {}
  std::size_t size() const { return u.size(); }
  Vec2 velocity(CellId c) const { return {u[c], v[c]}; }
  CellVectorField velocity_field() const;
  bool operator==(const State&) const = default;
};

// Copy donor values into ghost cells.
void refresh_ghosts(const Mesh& mesh, State& q);
// y += a * x
void axpy(double a, const State& x, State& y);
bool all_finite(const State& q);
double max_abs(const State& q);
// Sum of |c| q_c over physical cells, per field (u, v, p).
std::array<double, 3> totals(const Mesh& mesh, const State& q);
// Sum over physical cells of |c| (|du| + |dv| + |dp|).
double l1_difference(const Mesh& mesh, const State& a, const State& b);

}  // namespace vfv
