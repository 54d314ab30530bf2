#include "vortexfv/operators.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <random>

namespace vfv {

CellVectorField gradient_G(const Mesh& mesh, const NodalScalarField& phi) {
  const auto nc = static_cast<CellId>(mesh.num_cells());
  CellVectorField g(nc);
#pragma omp parallel for schedule(static)
  for (CellId c = 0; c < nc; ++c) {
    Vec2 s = Vec2::Zero();
    for (CornerId k = mesh.corner_begin(c); k < mesh.corner_end(c); ++k)
      s += mesh.corner_normal(k) * phi[mesh.corner_node(k)];
    g[c] = s / mesh.cell_area(c);
  }
  return g;
}

NodalScalarField divergence_D(const Mesh& mesh, const CellVectorField& v) {
  const auto nn = static_cast<NodeId>(mesh.num_nodes());
  NodalScalarField d(nn);
#pragma omp parallel for schedule(static)
  for (NodeId n = 0; n < nn; ++n) {
    double s = 0;
    for (CornerId k : mesh.node_corners(n)) s += mesh.corner_normal(k).dot(v[mesh.corner_cell(k)]);
    d[n] = -s / mesh.dual_area(n);
  }
  return d;
}

NodalScalarField curl_C(const Mesh& mesh, const CellVectorField& v) {
  const auto nn = static_cast<NodeId>(mesh.num_nodes());
  NodalScalarField r(nn);
#pragma omp parallel for schedule(static)
  for (NodeId n = 0; n < nn; ++n) {
    double s = 0;
    for (CornerId k : mesh.node_corners(n)) s += cross(mesh.corner_normal(k), v[mesh.corner_cell(k)]);
    r[n] = -s / mesh.dual_area(n);
  }
  return r;
}

std::vector<double> alpha_coeffs(const Mesh& mesh) {
  // Sum of subedge lengths around each node.
  std::vector<double> ring(mesh.num_nodes(), 0.0);
  for (std::size_t n = 0; n < mesh.num_nodes(); ++n)
    for (const SubEdge& s : mesh.node_subedges(static_cast<NodeId>(n))) ring[n] += s.length;
  std::vector<double> alpha(mesh.num_corners());
  for (std::size_t k = 0; k < mesh.num_corners(); ++k) {
    const auto id = static_cast<CornerId>(k);
    const NodeId n = mesh.corner_node(id);
    alpha[k] = mesh.corner_weight(id) / ring[n] * 0.5 * mesh.dual_area(n) / mesh.cell_area(mesh.corner_cell(id));
  }
  return alpha;
}

std::vector<double> cell_divergence_Dtilde(const Mesh& mesh, const CellVectorField& v) {
  const NodalScalarField d = divergence_D(mesh, v);
  const std::vector<double> alpha = alpha_coeffs(mesh);
  std::vector<double> out(mesh.num_cells(), 0.0);
  for (std::size_t c = 0; c < mesh.num_cells(); ++c)
    for (CornerId k = mesh.corner_begin(static_cast<CellId>(c)); k < mesh.corner_end(static_cast<CellId>(c)); ++k)
      out[c] += alpha[k] * d[mesh.corner_node(k)];
  return out;
}

double nodal_l1(const Mesh& mesh, const NodalScalarField& f) {
  double s = 0;
  for (std::size_t n = 0; n < mesh.num_nodes(); ++n)
    if (mesh.node_physical(static_cast<NodeId>(n))) s += mesh.dual_area(static_cast<NodeId>(n)) * std::abs(f[n]);
  return s;
}

namespace {

double max_abs(const NodalScalarField& f, const std::vector<char>& mask) {
  double m = 0;
  for (std::size_t n = 0; n < f.size(); ++n)
    if (mask[n]) m = std::max(m, std::abs(f[n]));
  return m;
}

}  // namespace

std::vector<IdentityCheck> check_identities(const Mesh& mesh, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  const bool periodic = mesh.boundary() == BoundaryKind::Periodic;
  const auto nc = static_cast<CellId>(mesh.num_cells());
  const auto nn = static_cast<NodeId>(mesh.num_nodes());
  std::vector<IdentityCheck> out;

  IdentityCheck t41i{"node_normals_sum"};
  IdentityCheck t41ii{"area_tensor"};
  IdentityCheck t42i{"gradient_affine"};
  for (CellId c = 0; c < nc; ++c) {
    Vec2 sum = Vec2::Zero();
    Eigen::Matrix2d tensor = Eigen::Matrix2d::Zero();
    Vec2 grad = Vec2::Zero();
    for (CornerId k = mesh.corner_begin(c); k < mesh.corner_end(c); ++k) {
      const Vec2& ln = mesh.corner_normal(k);
      const Vec2 x = mesh.corner_pos(k) - mesh.cell_centroid(c);
      sum += ln;
      tensor += ln * x.transpose();
      grad += ln * (3 * mesh.corner_pos(k).x() - 2 * mesh.corner_pos(k).y() + 1);
    }
    grad /= mesh.cell_area(c);
    const double a = mesh.cell_area(c);
    t41i.residual = std::max(t41i.residual, sum.norm() / mesh.cell_perimeter(c));
    t41ii.residual = std::max(t41ii.residual, (tensor - a * Eigen::Matrix2d::Identity()).cwiseAbs().maxCoeff() / a);
    t42i.residual = std::max(t42i.residual, (grad - Vec2(3, -2)).norm() / std::sqrt(13.0));
  }
  out.push_back(t41i);
  out.push_back(t41ii);
  out.push_back(t42i);

  // Random nodal and cell data for the bilinear identities.
  IdentityCheck t42ii{"gradient_divergence_duality"};
  IdentityCheck t43{"alpha_quadrature"};
  t42ii.applicable = t43.applicable = periodic;
  if (periodic) {
    const std::vector<double> alpha = alpha_coeffs(mesh);
    for (int trial = 0; trial < 10; ++trial) {
      NodalScalarField phi(nn);
      CellVectorField v(nc);
      for (auto& x : phi) x = uni(rng);
      for (auto& x : v) x = Vec2(uni(rng), uni(rng));
      const NodalScalarField d = divergence_D(mesh, v);
      const CellVectorField g = gradient_G(mesh, phi);
      double lhs = 0, rhs = 0, scale = 0;
      for (NodeId n = 0; n < nn; ++n) {
        lhs += d[n] * phi[n] * mesh.dual_area(n);
        scale += std::abs(d[n] * phi[n]) * mesh.dual_area(n);
      }
      for (CellId c = 0; c < nc; ++c) {
        rhs += v[c].dot(g[c]) * mesh.cell_area(c);
        scale += std::abs(v[c].dot(g[c])) * mesh.cell_area(c);
      }
      t42ii.residual = std::max(t42ii.residual, std::abs(lhs + rhs) / scale);

      double cells = 0, nodes = 0, mag = 0;
      for (CellId c = 0; c < nc; ++c) {
        double s = 0;
        for (CornerId k = mesh.corner_begin(c); k < mesh.corner_end(c); ++k) s += alpha[k] * phi[mesh.corner_node(k)];
        cells += mesh.cell_area(c) * s;
      }
      for (NodeId n = 0; n < nn; ++n) {
        nodes += mesh.dual_area(n) * phi[n];
        mag += mesh.dual_area(n) * std::abs(phi[n]);
      }
      t43.residual = std::max(t43.residual, std::abs(cells - nodes) / mag);
    }
  }
  out.push_back(t42ii);
  out.push_back(t43);

  IdentityCheck l51{"corner_cross_product"};
  l51.applicable = false;
  for (CellId c = 0; c < nc; ++c) {
    const int sz = mesh.cell_size(c);
    if (sz > 4) continue;
    l51.applicable = true;
    for (int i = 0; i < sz; ++i) {
      const CornerId a = mesh.corner_begin(c) + i, b = mesh.corner_begin(c) + (i + 1) % sz;
      const double r = 2 * cross(mesh.corner_normal(a), mesh.corner_normal(b)) / mesh.cell_area(c);
      l51.residual = std::max(l51.residual, std::abs(r - 1));
    }
  }
  out.push_back(l51);

  // C G on the canonical basis (random data on large meshes), complete nodes only.
  IdentityCheck t52{"curl_of_gradient"};
  t52.applicable = mesh.max_cell_size() <= 4;
  std::vector<char> mask(nn);
  for (NodeId n = 0; n < nn; ++n) mask[n] = mesh.node_complete(n);
  const double h = mesh.min_length_scale();
  const bool basis = nn <= 4096;
  const int count = basis ? nn : 64;
  for (int i = 0; i < count; ++i) {
    NodalScalarField phi(nn, 0.0);
    if (basis)
      phi[i] = 1.0;
    else
      for (auto& x : phi) x = uni(rng);
    double norm = 0;
    for (double x : phi) norm = std::max(norm, std::abs(x));
    const double r = max_abs(curl_C(mesh, gradient_G(mesh, phi)), mask) * h / norm;
    t52.residual = std::max(t52.residual, r);
  }
  out.push_back(t52);
  return out;
}

}  // namespace vfv
