#include "vortexfv/riemann.hpp"

#include <cmath>
#include <stdexcept>

namespace vfv::riemann {

StarState solve_classical(const AcousticState& qL, const AcousticState& qR) {
  return {0.5 * (qL.u + qR.u) - 0.5 * (qR.p - qL.p), 0.5 * (qL.p + qR.p) - 0.5 * (qR.u - qL.u)};
}

SplitFlux flux_classical(const AcousticState& qL, const AcousticState& qR) {
  const StarState s = solve_classical(qL, qR);
  return {s.p, s.p, s.u, s.u};
}

SplitFlux flux_free_pressure(const AcousticState& qL, const AcousticState& qR, double p_star) {
  SplitFlux f;
  f.flux_u_L = f.flux_u_R = p_star;
  f.flux_p_L = qL.u + qL.p - p_star;
  f.flux_p_R = qR.u - qR.p + p_star;
  return f;
}

SplitFlux flux_free_velocity(const AcousticState& qL, const AcousticState& qR, double u_star) {
  SplitFlux f;
  f.flux_p_L = f.flux_p_R = u_star;
  f.flux_u_L = qL.p + qL.u - u_star;
  f.flux_u_R = qR.p - qR.u + u_star;
  return f;
}

// The stationary wave carries the tangential velocity unchanged; the star
// states on either side hold the one-sided (u, p) pair.
FanStates fan_free_pressure(const AcousticState& qL, const AcousticState& qR, double p_star) {
  const SplitFlux f = flux_free_pressure(qL, qR, p_star);
  return {{f.flux_p_L, qL.v, p_star}, {f.flux_p_R, qR.v, p_star}};
}

FanStates fan_free_velocity(const AcousticState& qL, const AcousticState& qR, double u_star) {
  const SplitFlux f = flux_free_velocity(qL, qR, u_star);
  return {{u_star, qL.v, f.flux_u_L}, {u_star, qR.v, f.flux_u_R}};
}

Rotation::Rotation(const Vec2& n) : n_(n) {
  if (std::abs(n.squaredNorm() - 1.0) > 1e-12) throw std::invalid_argument("rotation normal must have unit length");
}

std::pair<double, double> rotate_in(const Vec2& v, const Rotation& n) {
  return {n.nx() * v.x() + n.ny() * v.y(), -n.ny() * v.x() + n.nx() * v.y()};
}

Vec2 rotate_out(double normal, double tangential, const Rotation& n) {
  return {n.nx() * normal - n.ny() * tangential, n.ny() * normal + n.nx() * tangential};
}

AcousticState rotate_in(const Vec2& v, double p, const Rotation& n) {
  const auto [a, b] = rotate_in(v, n);
  return {a, b, p};
}

}  // namespace vfv::riemann
