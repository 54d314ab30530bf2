#pragma once

#include <utility>

#include "vortexfv/mesh.hpp"

namespace vfv::riemann {

// Velocity decomposed along an edge normal: u normal, v tangential.
struct AcousticState {
  double u = 0, v = 0, p = 0;
};

struct StarState {
  double u = 0, p = 0;
};

// Fluxes seen from each side: flux of u is a pressure, flux of p a velocity.
struct SplitFlux {
  double flux_u_L = 0, flux_u_R = 0;
  double flux_p_L = 0, flux_p_R = 0;
};

// Intermediate states of the three-wave (-1, 0, 1) fan.
struct FanStates {
  AcousticState left, right;
};

StarState solve_classical(const AcousticState& qL, const AcousticState& qR);
SplitFlux flux_classical(const AcousticState& qL, const AcousticState& qR);
// One-sided fluxes with a prescribed interface pressure.
SplitFlux flux_free_pressure(const AcousticState& qL, const AcousticState& qR, double p_star);
// One-sided fluxes with a prescribed interface normal velocity.
SplitFlux flux_free_velocity(const AcousticState& qL, const AcousticState& qR, double u_star);
FanStates fan_free_pressure(const AcousticState& qL, const AcousticState& qR, double p_star);
FanStates fan_free_velocity(const AcousticState& qL, const AcousticState& qR, double u_star);

class Rotation {
 public:
  explicit Rotation(const Vec2& n);
  double nx() const { return n_.x(); }
  double ny() const { return n_.y(); }
  const Vec2& normal() const { return n_; }

 private:
  Vec2 n_;
};

// (n . v, n_perp . v) with n_perp = (-n_y, n_x).
std::pair<double, double> rotate_in(const Vec2& v, const Rotation& n);
Vec2 rotate_out(double normal, double tangential, const Rotation& n);
AcousticState rotate_in(const Vec2& v, double p, const Rotation& n);

}  // namespace vfv::riemann
