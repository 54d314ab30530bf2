#pragma once

#include <Eigen/Core>
#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "vortexfv/cartesian.hpp"

namespace vfv::fourier {

using Complex = std::complex<double>;
using Matrix3c = Eigen::Matrix3cd;
using Vector3c = Eigen::Vector3cd;
using RowVector3c = Eigen::RowVector3cd;

enum class Scheme { NodalVelocity1, NodalPressure1, NodalPressure2 };

const char* to_string(Scheme s);
Scheme scheme_from_string(const std::string& s);

// E such that d/dt q^ + E q^ = 0 for the plane wave q_{i+a,j+b} = q^ t_x^a t_y^b,
// assembled from the closed-form Cartesian stencils. The second-order symbol
// uses the given reconstruction stencil.
Matrix3c symbol(Scheme scheme, Complex tx, Complex ty, double dx, double dy,
                cartesian::Stencil stencil = cartesian::Stencil::S9);

// The nodal-velocity rate matrix in its widely circulated printed form
// (d/dt q^ = E q^, with the 1/(2dx), 1/(2dy) factors missing from the first
// two diagonal entries). Kept for reporting only.
Matrix3c printed_nodal_velocity_matrix(Complex tx, Complex ty, double dx, double dy);
// Closed-form determinant of the nodal-velocity rate matrix.
Complex nodal_velocity_determinant(Complex tx, Complex ty, double dx, double dy);
// Fourier transform of the discrete vorticity: left null vector of the nodal-pressure symbols.
RowVector3c involution_vector(Complex tx, Complex ty, double dx, double dy);

int kernel_dimension(const Matrix3c& E, double tolerance = 1e-10);
// Basis row r with r E = 0 when the left kernel is one-dimensional.
std::optional<RowVector3c> left_kernel(const Matrix3c& E, double tolerance = 1e-10);
std::optional<Vector3c> right_kernel(const Matrix3c& E, double tolerance = 1e-10);
// |a - proj_b a| / |a|: zero when a and b are complex-collinear.
double collinearity_residual(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b);

// Amplification matrix of one step: forward Euler (order 1) or Heun (order 2).
Matrix3c amplification(const Matrix3c& E, double dt, int time_order);
double spectral_radius(const Matrix3c& G);

struct ScanPoint {
  double kx, ky;  // phase angles k dx, k dy in [0, 2 pi)
  int kernel_dim;
  double spectral_radius;
};

struct ScanResult {
  double max_radius = 0;
  std::vector<ScanPoint> points;
};

// Samples n x n phase pairs on the torus; dt = cfl * 2 dx dy / (dx + dy).
// time_order 0 picks Euler for first-order schemes and Heun for second order.
ScanResult stability_scan(Scheme scheme, double cfl, int samples, double dx = 1.0, double dy = 1.0,
                          int time_order = 0, bool keep_points = false);

}  // namespace vfv::fourier
