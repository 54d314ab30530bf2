#include "doctest.h"
#include "support.hpp"

#include <cmath>

#include "vortexfv/mesh_generators.hpp"
#include "vortexfv/operators.hpp"

using namespace vfv;

namespace {

// Sum over physical nodes of |c_n| (D v)_n phi_n + sum over physical cells of |c| v_c . (G phi)_c
double duality_residual(const Mesh& m, const CellVectorField& v, const NodalScalarField& phi) {
  const auto d = divergence_D(m, v);
  const auto g = gradient_G(m, phi);
  double s = 0;
  for (NodeId n = 0; n < static_cast<NodeId>(m.num_nodes()); ++n)
    if (m.node_physical(n)) s += m.dual_area(n) * d[n] * phi[n];
  for (CellId c = 0; c < static_cast<CellId>(m.num_cells()); ++c)
    if (!m.is_ghost(c)) s += m.cell_area(c) * v[c].dot(g[c]);
  return std::abs(s);
}

double norm2(const NodalScalarField& f) {
  double s = 0;
  for (double x : f) s += x * x;
  return std::sqrt(s);
}

double norm2(const CellVectorField& f) {
  double s = 0;
  for (const Vec2& x : f) s += x.squaredNorm();
  return std::sqrt(s);
}

}  // namespace

TEST_CASE("gradient_G") {
  SUBCASE("constant nodal field") {
    const Mesh m = cases::make_mesh(cases::MeshFamily::TriQuad, 8, BoundaryKind::Periodic, 3);
    for (const Vec2& g : gradient_G(m, NodalScalarField(m.num_nodes(), 7.0))) CHECK(g.norm() < 1e-12);
  }
  SUBCASE("phi = x on the unit square cell") {
    MeshInput in;
    in.nodes = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
    in.cells = {{0, 1, 2, 3}};
    const Mesh m = build_mesh(in);
    const auto g = gradient_G(m, {0, 1, 1, 0});
    CHECK(g[0].x() == doctest::Approx(1.0));
    CHECK(g[0].y() == doctest::Approx(0.0));
  }
  SUBCASE("exact on affine data") {
    testing::Rng rng(5);
    for (int trial = 0; trial < 10; ++trial) {
      const Mesh m = testing::random_mesh(rng, BoundaryKind::ZeroGradient, true);
      NodalScalarField phi(m.num_nodes());
      for (NodeId n = 0; n < static_cast<NodeId>(m.num_nodes()); ++n) phi[n] = 3 * m.node(n).x() - 2 * m.node(n).y() + 1;
      const auto g = gradient_G(m, phi);
      for (CellId c = 0; c < static_cast<CellId>(m.num_cells()); ++c) {
        CHECK(std::abs(g[c].x() - 3) < 1e-12);
        CHECK(std::abs(g[c].y() + 2) < 1e-12);
      }
    }
  }
}

TEST_CASE("divergence_D") {
  SUBCASE("constant field on a periodic mesh") {
    const Mesh m = generate_cartesian(6, 5, 0.3, 0.2, BoundaryKind::Periodic);
    for (double d : divergence_D(m, CellVectorField(m.num_cells(), Vec2(1, 0)))) CHECK(std::abs(d) < 1e-12);
  }
  SUBCASE("2x2 periodic lattice against the bracket stencil") {
    const Mesh m = generate_cartesian(2, 2, 1, 1, BoundaryKind::Periodic);
    const LatticeInfo& lat = *m.lattice();
    CellVectorField v(m.num_cells(), Vec2::Zero());
    v[lat.cell(0, 0)] = Vec2(1, 0);
    const auto d = divergence_D(m, v);
    auto u = [&](int i, int j) { return v[lat.cell(((i % 2) + 2) % 2, ((j % 2) + 2) % 2)].x(); };
    for (int j = 0; j < 2; ++j)
      for (int i = 0; i < 2; ++i) {
        const double bracket = (u(i + 1, j) - u(i, j)) + (u(i + 1, j + 1) - u(i, j + 1));
        CHECK(d[lat.node(i, j)] == doctest::Approx(bracket / 2));
      }
  }
  SUBCASE("property: duality with G on periodic tri-quad meshes") {
    testing::Rng rng(17);
    for (int trial = 0; trial < 100; ++trial) {
      const Mesh m = cases::make_mesh(cases::MeshFamily::TriQuad, testing::uniform_int(rng, 3, 8),
                                      BoundaryKind::Periodic, rng());
      const auto v = testing::random_cell_vectors(m, rng);
      const auto phi = testing::random_nodal(m, rng);
      CHECK(duality_residual(m, v, phi) <= 1e-12 * norm2(v) * norm2(phi));
    }
  }
}

TEST_CASE("curl_C") {
  SUBCASE("constant field") {
    const Mesh m = cases::make_mesh(cases::MeshFamily::PerturbedQuad, 8, BoundaryKind::Periodic, 3);
    for (double c : curl_C(m, CellVectorField(m.num_cells(), Vec2(0.3, -2)))) CHECK(std::abs(c) < 1e-12);
  }
  SUBCASE("property: C G = 0 on periodic tri-quad meshes") {
    testing::Rng rng(23);
    for (int trial = 0; trial < 100; ++trial) {
      cases::FamilyParams params;
      params.triquad_perturbation = testing::uniform(rng, 0.0, 0.15);
      const int n = testing::uniform_int(rng, 3, 8);
      const Mesh m = cases::make_mesh(cases::MeshFamily::TriQuad, n, BoundaryKind::Periodic, rng(), params);
      const auto phi = testing::random_nodal(m, rng);
      const auto c = curl_C(m, gradient_G(m, phi));
      double worst = 0;
      for (double x : c) worst = std::max(worst, std::abs(x));
      CHECK(worst <= 1e-12 * norm2(phi) * n);
    }
  }
  SUBCASE("C G does not vanish on the pentagon/hexagon mesh") {
    testing::Rng rng(29);
    const Mesh m = cases::make_mesh(cases::MeshFamily::Polygonal, 8, BoundaryKind::Periodic, 1);
    const auto phi = testing::random_nodal(m, rng);
    double worst = 0;
    for (double x : curl_C(m, gradient_G(m, phi))) worst = std::max(worst, std::abs(x));
    CHECK(worst > 1e-6 * norm2(phi) * 8);
  }
}

TEST_CASE("alpha coefficients and the cell divergence") {
  testing::Rng rng(31);
  SUBCASE("property: alpha-weighted sums reproduce dual-cell quadrature") {
    for (int trial = 0; trial < 20; ++trial) {
      const Mesh m = testing::random_mesh(rng, BoundaryKind::Periodic, true);
      const auto alpha = alpha_coeffs(m);
      const auto phi = testing::random_nodal(m, rng);
      double lhs = 0, rhs = 0, scale = 0;
      for (CellId c = 0; c < static_cast<CellId>(m.num_cells()); ++c)
        for (CornerId k = m.corner_begin(c); k < m.corner_end(c); ++k)
          lhs += m.cell_area(c) * alpha[k] * phi[m.corner_node(k)];
      for (NodeId n = 0; n < static_cast<NodeId>(m.num_nodes()); ++n) {
        rhs += m.dual_area(n) * phi[n];
        scale += m.dual_area(n) * std::abs(phi[n]);
      }
      CHECK(std::abs(lhs - rhs) <= 1e-12 * scale);
    }
  }
  SUBCASE("constant field has zero cell divergence") {
    const Mesh m = cases::make_mesh(cases::MeshFamily::TriQuad, 7, BoundaryKind::Periodic, 2);
    for (double d : cell_divergence_Dtilde(m, CellVectorField(m.num_cells(), Vec2(1, 2)))) CHECK(std::abs(d) < 1e-12);
  }
  SUBCASE("Cartesian: cell divergence is the mean of the four nodal divergences") {
    const Mesh m = generate_cartesian(6, 6, 0.25, 0.25, BoundaryKind::Periodic);
    const auto v = testing::random_cell_vectors(m, rng);
    const auto dn = divergence_D(m, v);
    const auto dc = cell_divergence_Dtilde(m, v);
    for (CellId c = 0; c < static_cast<CellId>(m.num_cells()); ++c) {
      double mean = 0;
      for (NodeId n : m.cell_nodes(c)) mean += 0.25 * dn[n];
      CHECK(dc[c] == doctest::Approx(mean).epsilon(1e-12));
    }
  }
}

TEST_CASE("theorem checks") {
  for (auto family : {cases::MeshFamily::Cartesian, cases::MeshFamily::PerturbedQuad, cases::MeshFamily::TriQuad}) {
    for (auto boundary : {BoundaryKind::Periodic, BoundaryKind::ZeroGradient}) {
      const Mesh m = cases::make_mesh(family, 8, boundary, 4);
      for (const auto& t : check_identities(m)) {
        CAPTURE(t.name);
        CAPTURE(t.residual);
        if (t.applicable) CHECK(t.holds());
      }
    }
  }
  const Mesh poly = cases::make_mesh(cases::MeshFamily::Polygonal, 8, BoundaryKind::Periodic, 4);
  bool curl_gradient_fails = false;
  for (const auto& t : check_identities(poly))
    if (t.name.find("curl_of_gradient") != std::string::npos) curl_gradient_fails = !t.holds();
  CHECK(curl_gradient_fails);
}

TEST_CASE("nodal_l1 weights by dual area") {
  const Mesh m = generate_cartesian(4, 4, 0.25, 0.25, BoundaryKind::Periodic);
  CHECK(nodal_l1(m, NodalScalarField(m.num_nodes(), -2.0)) == doctest::Approx(2.0));
}
