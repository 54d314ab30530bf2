#include "vortexfv/fourier.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <cmath>
#include <stdexcept>

namespace vfv::fourier {

const char* to_string(Scheme s) {
  switch (s) {
    case Scheme::NodalVelocity1: return "nodal_velocity_1";
    case Scheme::NodalPressure1: return "nodal_pressure_1";
    case Scheme::NodalPressure2: return "nodal_pressure_2";
  }
  return "?";
}

Scheme scheme_from_string(const std::string& s) {
  if (s == "nodal_velocity_1" || s == "nodal_velocity") return Scheme::NodalVelocity1;
  if (s == "nodal_pressure_1" || s == "nodal_pressure") return Scheme::NodalPressure1;
  if (s == "nodal_pressure_2") return Scheme::NodalPressure2;
  throw std::invalid_argument("unknown Fourier scheme '" + s + "'");
}

namespace {

// Node (i+1/2, j+1/2) collects the four cells (i, j), (i+1, j), (i, j+1), (i+1, j+1);
// cell (i, j) sees its four nodes at shifts (0|-1, 0|-1). All symbols below are
// written for the rate form d/dt q^ = A q^ and negated at the end.
struct NodeRow {
  Complex u, v, p;  // coefficients of u^, v^, p^ in a nodal quantity at node (i+1/2, j+1/2)
};

// Per-variable factors of the four cells around a node, evaluated at the node:
// cell shift t_x^a t_y^b times the reconstruction 1 + a1 dx_c + a2 dy_c.
struct CornerFactors {
  Complex c00, c10, c01, c11;
  Complex sum() const { return c00 + c10 + c01 + c11; }
  Complex x_jump() const { return (c10 - c00) + (c11 - c01); }
  Complex y_jump() const { return (c01 - c00) + (c11 - c10); }
};

CornerFactors corners(Complex tx, Complex ty, Complex a1, Complex a2, double dx, double dy) {
  auto f = [&](int a, int b, double sx, double sy) {
    return std::pow(tx, a) * std::pow(ty, b) * (1.0 + a1 * (sx * 0.5 * dx) + a2 * (sy * 0.5 * dy));
  };
  return {f(0, 0, 1, 1), f(1, 0, -1, 1), f(0, 1, 1, -1), f(1, 1, -1, -1)};
}

// Nodal value (node at upper right) carried back to cell (i, j): sum over the
// four nodes of the cell with signs sx, sy of their position.
struct CellSums {
  Complex all, x_diff, y_diff;
};

CellSums cell_sums(Complex tx, Complex ty) {
  const Complex ur = 1.0, ul = 1.0 / tx, lr = 1.0 / ty, ll = 1.0 / (tx * ty);
  return {ur + ul + lr + ll, (ur - ul) + (lr - ll), (ur - lr) + (ul - ll)};
}

Matrix3c nodal_pressure_rate(Complex tx, Complex ty, double dx, double dy, int order, cartesian::Stencil stencil) {
  Complex a1 = 0.0, a2 = 0.0;
  if (order == 2) {
    if (stencil == cartesian::Stencil::S5) {
      a1 = (tx - 1.0 / tx) / (2 * dx);
      a2 = (ty - 1.0 / ty) / (2 * dy);
    } else {
      a1 = (tx - 1.0 / tx) * (1.0 / ty + 1.0 + ty) / (6 * dx);
      a2 = (ty - 1.0 / ty) * (1.0 / tx + 1.0 + tx) / (6 * dy);
    }
  }
  const CornerFactors f = corners(tx, ty, a1, a2, dx, dy);
  const double wx = dy / (dx + dy), wy = dx / (dx + dy);
  // p* = 1/4 sum p_r - 1/4 (wx {[u_r]} + wy [{v_r}])
  const NodeRow ps{-0.25 * wx * f.x_jump(), -0.25 * wy * f.y_jump(), 0.25 * f.sum()};
  const CellSums s = cell_sums(tx, ty);
  Matrix3c A = Matrix3c::Zero();
  // du/dt = -{[p*]} / (2 dx), dv/dt = -[{p*}] / (2 dy)
  A(0, 0) = -s.x_diff * ps.u / (2 * dx);
  A(0, 1) = -s.x_diff * ps.v / (2 * dx);
  A(0, 2) = -s.x_diff * ps.p / (2 * dx);
  A(1, 0) = -s.y_diff * ps.u / (2 * dy);
  A(1, 1) = -s.y_diff * ps.v / (2 * dy);
  A(1, 2) = -s.y_diff * ps.p / (2 * dy);
  // dp/dt = -1/|c| sum_corners [ (dy/2) sx u_r + (dx/2) sy v_r + w (p_r - p*) ]
  const double area = dx * dy, w = 0.5 * (dx + dy);
  Complex pu = 0, pv = 0, pp = 0, pstar = 0;
  for (int sy = -1; sy <= 1; sy += 2)
    for (int sx = -1; sx <= 1; sx += 2) {
      const Complex rec_u = 1.0 + a1 * (sx * 0.5 * dx) + a2 * (sy * 0.5 * dy);
      pu += sx * 0.5 * dy * rec_u;
      pv += sy * 0.5 * dx * rec_u;
      pp += w * rec_u;
      pstar += std::pow(tx, (sx - 1) / 2) * std::pow(ty, (sy - 1) / 2);
    }
  A(2, 0) = -(pu - w * pstar * ps.u) / area;
  A(2, 1) = -(pv - w * pstar * ps.v) / area;
  A(2, 2) = -(pp - w * pstar * ps.p) / area;
  return A;
}

Matrix3c nodal_velocity_rate(Complex tx, Complex ty, double dx, double dy) {
  const CornerFactors f = corners(tx, ty, 0.0, 0.0, dx, dy);
  // u* = {{u}}/4 - {[p]}/4, v* = {{v}}/4 - [{p}]/4
  const NodeRow us{0.25 * f.sum(), 0.0, -0.25 * f.x_jump()};
  const NodeRow vs{0.0, 0.25 * f.sum(), -0.25 * f.y_jump()};
  const CellSums s = cell_sums(tx, ty);
  Matrix3c A = Matrix3c::Zero();
  A(0, 0) = (-4.0 + s.all * us.u) / (2 * dx);
  A(0, 2) = s.all * us.p / (2 * dx);
  A(1, 1) = (-4.0 + s.all * vs.v) / (2 * dy);
  A(1, 2) = s.all * vs.p / (2 * dy);
  // dp/dt = -{[u*]}/(2 dx) - [{v*}]/(2 dy)
  A(2, 0) = -s.x_diff * us.u / (2 * dx);
  A(2, 1) = -s.y_diff * vs.v / (2 * dy);
  A(2, 2) = -s.x_diff * us.p / (2 * dx) - s.y_diff * vs.p / (2 * dy);
  return A;
}

}  // namespace

Matrix3c symbol(Scheme scheme, Complex tx, Complex ty, double dx, double dy, cartesian::Stencil stencil) {
  switch (scheme) {
    case Scheme::NodalVelocity1: return -nodal_velocity_rate(tx, ty, dx, dy);
    case Scheme::NodalPressure1: return -nodal_pressure_rate(tx, ty, dx, dy, 1, stencil);
    case Scheme::NodalPressure2: return -nodal_pressure_rate(tx, ty, dx, dy, 2, stencil);
  }
  throw std::invalid_argument("unknown scheme");
}

Matrix3c printed_nodal_velocity_matrix(Complex tx, Complex ty, double dx, double dy) {
  const Complex t = tx * ty;
  Matrix3c E;
  const Complex d = -4.0 + (tx + 1.0) * (tx + 1.0) * (ty + 1.0) * (ty + 1.0) / (4.0 * t);
  const Complex e02 = -(tx - 1.0) * (tx + 1.0) * (ty + 1.0) * (ty + 1.0) / (8.0 * dx * t);
  const Complex e12 = -(tx + 1.0) * (tx + 1.0) * (ty - 1.0) * (ty + 1.0) / (8.0 * dy * t);
  const Complex e22 = (tx + 1.0) * (tx + 1.0) * (ty - 1.0) * (ty - 1.0) / (8.0 * dy * t) +
                      (tx - 1.0) * (tx - 1.0) * (ty + 1.0) * (ty + 1.0) / (8.0 * dx * t);
  E << d, 0.0, e02, 0.0, d, e12, e02, e12, e22;
  return E;
}

Complex nodal_velocity_determinant(Complex tx, Complex ty, double dx, double dy) {
  const Complex a = dx * (tx + 1.0) * (tx + 1.0) * (ty - 1.0) * (ty - 1.0) + dy * (tx - 1.0) * (tx - 1.0) * (ty + 1.0) * (ty + 1.0);
  const Complex b = (ty + 1.0) * (ty + 1.0) + tx * tx * (ty + 1.0) * (ty + 1.0) + 2.0 * tx * (1.0 + (-6.0 + ty) * ty);
  return -a / (32.0 * dx * dx * dy * dy * tx * tx * ty * ty) * b;
}

RowVector3c involution_vector(Complex tx, Complex ty, double dx, double dy) {
  RowVector3c r;
  r << (ty - 1.0) * (tx + 1.0) / (2.0 * dy), -(tx - 1.0) * (ty + 1.0) / (2.0 * dx), 0.0;
  return r;
}

int kernel_dimension(const Matrix3c& E, double tolerance) {
  const Eigen::JacobiSVD<Matrix3c> svd(E);
  const auto& s = svd.singularValues();
  const double smax = s(0);
  if (smax == 0) return 3;
  int dim = 0;
  for (int i = 0; i < 3; ++i)
    if (s(i) < tolerance * smax) ++dim;
  return dim;
}

std::optional<Vector3c> right_kernel(const Matrix3c& E, double tolerance) {
  if (kernel_dimension(E, tolerance) != 1) return std::nullopt;
  const Eigen::JacobiSVD<Matrix3c> svd(E, Eigen::ComputeFullV);
  return Vector3c(svd.matrixV().col(2));
}

std::optional<RowVector3c> left_kernel(const Matrix3c& E, double tolerance) {
  // r E = 0  <=>  E^T r^T = 0
  const auto k = right_kernel(E.transpose(), tolerance);
  if (!k) return std::nullopt;
  return RowVector3c(k->transpose());
}

double collinearity_residual(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) {
  const Complex proj = b.dot(a) / b.dot(b);  // dot conjugates its first argument
  return (a - proj * b).norm() / a.norm();
}

Matrix3c amplification(const Matrix3c& E, double dt, int time_order) {
  const Matrix3c I = Matrix3c::Identity();
  const Matrix3c D = dt * E;
  if (time_order == 2) return I - D + 0.5 * D * D;
  return I - D;
}

double spectral_radius(const Matrix3c& G) {
  const Eigen::ComplexEigenSolver<Matrix3c> es(G, false);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

ScanResult stability_scan(Scheme scheme, double cfl, int samples, double dx, double dy, int time_order,
                          bool keep_points) {
  if (!(cfl > 0)) throw std::invalid_argument("cfl must be positive");
  if (samples < 1) throw std::invalid_argument("samples must be >= 1");
  if (time_order == 0) time_order = scheme == Scheme::NodalPressure2 ? 2 : 1;
  const double dt = cfl * 2.0 * dx * dy / (dx + dy);
  ScanResult r;
  for (int a = 0; a < samples; ++a)
    for (int b = 0; b < samples; ++b) {
      const double kx = 2 * M_PI * a / samples, ky = 2 * M_PI * b / samples;
      const Matrix3c E = symbol(scheme, std::polar(1.0, kx), std::polar(1.0, ky), dx, dy);
      const double rho = spectral_radius(amplification(E, dt, time_order));
      r.max_radius = std::max(r.max_radius, rho);
      if (keep_points) r.points.push_back({kx, ky, kernel_dimension(E), rho});
    }
  return r;
}

}  // namespace vfv::fourier
