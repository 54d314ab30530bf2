#include "vortexfv/state.hpp"

#include <algorithm>
#include <cmath>

namespace vfv {

CellVectorField State::velocity_field() const {
  CellVectorField out(size());
  for (std::size_t c = 0; c < size(); ++c) out[c] = Vec2(u[c], v[c]);
  return out;
}

void refresh_ghosts(const Mesh& mesh, State& q) {
  for (auto [g, d] : mesh.ghosts()) {
    q.u[g] = q.u[d];
    q.v[g] = q.v[d];
    q.p[g] = q.p[d];
  }
}

void axpy(double a, const State& x, State& y) {
  const std::size_t n = y.size();
  for (std::size_t i = 0; i < n; ++i) {
    y.u[i] += a * x.u[i];
    y.v[i] += a * x.v[i];
    y.p[i] += a * x.p[i];
  }
}

bool all_finite(const State& q) {
  auto ok = [](const std::vector<double>& f) {
    return std::all_of(f.begin(), f.end(), [](double x) { return std::isfinite(x); });
  };
  return ok(q.u) && ok(q.v) && ok(q.p);
}

double max_abs(const State& q) {
  double m = 0;
  for (std::size_t i = 0; i < q.size(); ++i)
    m = std::max({m, std::abs(q.u[i]), std::abs(q.v[i]), std::abs(q.p[i])});
  return m;
}

std::array<double, 3> totals(const Mesh& mesh, const State& q) {
  std::array<double, 3> t{0, 0, 0};
  for (std::size_t c = 0; c < mesh.num_cells(); ++c) {
    if (mesh.is_ghost(static_cast<CellId>(c))) continue;
    const double a = mesh.cell_area(static_cast<CellId>(c));
    t[0] += a * q.u[c];
    t[1] += a * q.v[c];
    t[2] += a * q.p[c];
  }
  return t;
}

double l1_difference(const Mesh& mesh, const State& a, const State& b) {
  double s = 0;
  for (std::size_t c = 0; c < mesh.num_cells(); ++c) {
    if (mesh.is_ghost(static_cast<CellId>(c))) continue;
    s += mesh.cell_area(static_cast<CellId>(c)) *
         (std::abs(a.u[c] - b.u[c]) + std::abs(a.v[c] - b.v[c]) + std::abs(a.p[c] - b.p[c]));
  }
  return s;
}

}  // namespace vfv
