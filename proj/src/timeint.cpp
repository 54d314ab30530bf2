#include "vortexfv/timeint.hpp"

#include <cmath>
#include <stdexcept>

#include "vortexfv/errors.hpp"

namespace vfv {

Discretization::Discretization(const Mesh& mesh, SchemeSpec spec) : mesh_(&mesh), spec_(spec) {
  if (spec.order != 1 && spec.order != 2) throw std::invalid_argument("scheme order must be 1 or 2");
  if (spec.kind == SchemeKind::NodalVelocity && spec.order == 2)
    throw std::invalid_argument("the nodal-velocity scheme has no second-order variant");
  if (spec.order == 2) recon_ = std::make_unique<Reconstructor>(mesh, spec.stencil);
}

State Discretization::rhs(const State& q) const {
  if (spec_.order == 2) return rhs_second_order(*mesh_, q, (*recon_)(q));
  if (spec_.kind == SchemeKind::NodalPressure) return rhs_nodal_pressure(*mesh_, q);
  return rhs_nodal_velocity(*mesh_, q);
}

namespace {

void check_finite(const State& q) {
  if (!all_finite(q)) throw NonFiniteState("state contains non-finite values");
}

}  // namespace

State step_euler(const Mesh& mesh, const State& q, double dt, const RhsFunction& rhs) {
  State in = q;
  refresh_ghosts(mesh, in);
  State out = in;
  axpy(dt, rhs(in), out);
  refresh_ghosts(mesh, out);
  check_finite(out);
  return out;
}

State step_rk2(const Mesh& mesh, const State& q, double dt, const RhsFunction& rhs) {
  State in = q;
  refresh_ghosts(mesh, in);
  const State k1 = rhs(in);
  State mid = in;
  axpy(dt, k1, mid);
  refresh_ghosts(mesh, mid);
  const State k2 = rhs(mid);
  State out = in;
  axpy(0.5 * dt, k1, out);
  axpy(0.5 * dt, k2, out);
  refresh_ghosts(mesh, out);
  check_finite(out);
  return out;
}

double time_step(const Mesh& mesh, const TimeControl& control) {
  if (!(control.cfl > 0)) throw std::invalid_argument("cfl must be positive");
  const double h = control.h > 0 ? control.h : mesh.min_length_scale();
  return control.cfl * h;
}

RunResult run(const Mesh& mesh, State initial, const TimeControl& control, const SchemeSpec& scheme,
              const std::vector<Observer>& observers) {
  if (!(control.t_end >= 0)) throw std::invalid_argument("t_end must be non-negative");
  const Discretization disc(mesh, scheme);
  const RhsFunction rhs = [&disc](const State& q) { return disc.rhs(q); };
  const int order = control.order;
  RunResult r;
  r.dt = time_step(mesh, control);
  r.state = std::move(initial);
  refresh_ghosts(mesh, r.state);
  auto notify = [&] {
    for (const Observer& o : observers) o(r.steps, r.t, r.state);
  };
  notify();
  const int every = std::max(1, control.observe_every);
  if (control.t_end == 0) return r;
  // Whole steps up to t_end; the last one is clipped so the run ends exactly there.
  const double ratio = control.t_end / r.dt;
  const long total = std::max(1L, static_cast<long>(std::ceil(ratio * (1 - 1e-12))));
  for (long k = 0; k < total; ++k) {
    const bool last = k + 1 == total;
    const double t_next = last ? control.t_end : static_cast<double>(k + 1) * r.dt;
    const double dt = last ? control.t_end - static_cast<double>(k) * r.dt : r.dt;
    r.state = order == 2 ? step_rk2(mesh, r.state, dt, rhs) : step_euler(mesh, r.state, dt, rhs);
    ++r.steps;
    r.t = t_next;
    if (last || r.steps % every == 0) notify();
  }
  return r;
}

}  // namespace vfv
