#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "vortexfv/mesh.hpp"
#include "vortexfv/scheme1.hpp"
#include "vortexfv/scheme2.hpp"
#include "vortexfv/state.hpp"

namespace vfv {

struct SchemeSpec {
  SchemeKind kind = SchemeKind::NodalPressure;
  int order = 1;
  StencilKind stencil = StencilKind::NodeNeighbors;
};

// Semi-discrete operator dq/dt = L(q) for one scheme on one mesh. The input
// must have its ghost cells refreshed; ghost entries of the result are zero.
class Discretization {
 public:
  Discretization(const Mesh& mesh, SchemeSpec spec);
  State rhs(const State& q) const;
  const Mesh& mesh() const { return *mesh_; }
  const SchemeSpec& spec() const { return spec_; }

 private:
  const Mesh* mesh_;
  SchemeSpec spec_;
  std::unique_ptr<Reconstructor> recon_;
};

using RhsFunction = std::function<State(const State&)>;

// q + dt L(q)
State step_euler(const Mesh& mesh, const State& q, double dt, const RhsFunction& rhs);
// Heun: q + dt/2 (L(q) + L(q + dt L(q)))
State step_rk2(const Mesh& mesh, const State& q, double dt, const RhsFunction& rhs);

struct TimeControl {
  double cfl = 0.3;
  double t_end = 0.0;
  int order = 1;  // 1: forward Euler, 2: Heun
  // Length scale; when <= 0 the mesh value min 4|c|/|dc| is used.
  double h = 0.0;
  // Call observers every this many steps (and always at the start and the end).
  int observe_every = 1;
};

double time_step(const Mesh& mesh, const TimeControl& control);

using Observer = std::function<void(int step, double t, const State& q)>;

struct RunResult {
  State state;
  int steps = 0;
  double t = 0.0;
  double dt = 0.0;
};

RunResult run(const Mesh& mesh, State initial, const TimeControl& control, const SchemeSpec& scheme,
              const std::vector<Observer>& observers = {});

}  // namespace vfv
