#include "doctest.h"
#include "support.hpp"

#include <cmath>
#include <sstream>

#include "vortexfv/errors.hpp"

using namespace vfv;
using namespace vfv::cases;

TEST_CASE("initial data") {
  SUBCASE("vortex profile") {
    const StationaryVortex vx;
    const Vec2 c = vx.center;
    auto speed = [&](double r) {
      const Values v = initial_value(vx, c + Vec2(r * 0.6, r * 0.8));
      return std::hypot(v.u, v.v);
    };
    CHECK(speed(0.2) == doctest::Approx(1.0));
    CHECK(speed(0.4) == doctest::Approx(0.0));
    CHECK(speed(0.3) == doctest::Approx(0.5));
    CHECK(speed(0.1) == doctest::Approx(0.5));
    CHECK(vortex_speed(0.3, 0.2) == doctest::Approx(0.5));
    // rotational: velocity orthogonal to the radius, zero pressure
    const Values v = initial_value(vx, c + Vec2(0.15, 0));
    CHECK(v.u == doctest::Approx(0.0));
    CHECK(v.p == 0.0);
  }
  SUBCASE("four-quadrant problem") {
    const Values v = initial_value(FourQuadrant{}, Vec2(0.75, 0.75));
    CHECK(v.u == 1.0);
    CHECK(v.v == 0.0);
    CHECK(v.p == 0.0);
  }
  SUBCASE("oblique wave") {
    const Values v = initial_value(ObliqueWave{0.5, 0.0}, Vec2(0, 0.3));
    CHECK(v.p == doctest::Approx(1.0));
    CHECK(v.u == 0.0);
    CHECK(v.v == 0.0);
  }
  SUBCASE("spherical Riemann problem") {
    CHECK(initial_value(SphericalRP{}, Vec2(0.55, 0.5)).p == 1.0);
    CHECK(initial_value(SphericalRP{}, Vec2(0.9, 0.5)).p == 0.0);
  }
}

TEST_CASE("exact oblique wave") {
  SUBCASE("t = 0 is the initial data") {
    testing::Rng rng(181);
    for (int i = 0; i < 50; ++i) {
      const double x = testing::uniform(rng, 0, 1), y = testing::uniform(rng, 0, 1);
      const Values a = exact_oblique(0, x, y, 0.5, M_PI / 4);
      const Values b = initial_value(ObliqueWave{}, Vec2(x, y));
      CHECK(a.p == doctest::Approx(b.p));
      CHECK(std::abs(a.u) < 1e-15);
    }
  }
  SUBCASE("half period") {
    const Values v = exact_oblique(0.25, 0, 0, 0.5, 0);
    CHECK(v.p == doctest::Approx(-1.0));
    CHECK(std::abs(v.u) < 1e-15);
  }
  SUBCASE("u = v at 45 degrees") {
    testing::Rng rng(191);
    for (int i = 0; i < 50; ++i) {
      const Values v = exact_oblique(testing::uniform(rng, 0, 2), testing::uniform(rng), testing::uniform(rng), 0.5,
                                     M_PI / 4);
      CHECK(v.u == doctest::Approx(v.v));
    }
  }
  SUBCASE("property: satisfies the acoustic equations") {
    testing::Rng rng(193);
    const double eps = 1e-5;
    for (int i = 0; i < 50; ++i) {
      const double t = testing::uniform(rng, 0, 1), x = testing::uniform(rng), y = testing::uniform(rng);
      const double lambda = testing::uniform(rng, 0.3, 1), theta = testing::uniform(rng, -1.2, 1.2);
      auto at = [&](double dt, double ddx, double ddy) { return exact_oblique(t + dt, x + ddx, y + ddy, lambda, theta); };
      const auto d = [&](auto field, int axis) {
        const double h[3][3] = {{eps, 0, 0}, {0, eps, 0}, {0, 0, eps}};
        return (field(at(h[axis][0], h[axis][1], h[axis][2])) - field(at(-h[axis][0], -h[axis][1], -h[axis][2]))) /
               (2 * eps);
      };
      auto U = [](const Values& v) { return v.u; };
      auto V = [](const Values& v) { return v.v; };
      auto P = [](const Values& v) { return v.p; };
      const double scale = 2 * M_PI / (lambda * std::cos(theta));
      CHECK(std::abs(d(U, 0) + d(P, 1)) < 1e-6 * scale);
      CHECK(std::abs(d(V, 0) + d(P, 2)) < 1e-6 * scale);
      CHECK(std::abs(d(P, 0) + d(U, 1) + d(V, 2)) < 1e-6 * scale);
    }
  }
}

TEST_CASE("four-quadrant radial profile") {
  CHECK(*exact_fourquadrant_v(1.0, 1.0) == doctest::Approx(0.0));
  CHECK(*exact_fourquadrant_v(1.0, 0.6) == doctest::Approx(std::log(3.0) / (2 * M_PI)));
  CHECK(*exact_fourquadrant_v(2.0, 1.2) == doctest::Approx(std::log(3.0) / (2 * M_PI)));
  CHECK_FALSE(exact_fourquadrant_v(1.0, 1.5).has_value());
  CHECK_THROWS_AS(exact_fourquadrant_v(1.0, 0.0), DomainError);
  CHECK_THROWS_AS(exact_fourquadrant_v(0.0, 0.5), DomainError);
  // small-s expansion: 2 pi v = -ln(s/2) - s^2/4 + O(s^4)
  for (double s : {1e-2, 1e-3}) {
    const double L = 2 * M_PI * *exact_fourquadrant_v(1.0, s);
    CHECK(std::abs(L + std::log(s / 2) + s * s / 4) < 2 * std::pow(s, 4));
  }
}

TEST_CASE("error norms") {
  const Mesh m = make_mesh(MeshFamily::TriQuad, 12, BoundaryKind::Periodic, 3);
  const ObliqueWave w;
  auto exact = [&](const Vec2& x) { return exact_oblique(0.0, x.x(), x.y(), w.lambda, w.theta); };
  const State q = initialize(w, m);
  const ErrorReport e = error_l1(m, q, exact);
  for (double x : e.l1) CHECK(x == 0.0);
  CHECK(e.h == doctest::Approx(1 / std::sqrt(static_cast<double>(m.num_physical_cells()))));
  State shifted = q;
  for (double& p : shifted.p) p += 0.5;
  CHECK(error_l1(m, shifted, exact).l1[2] == doctest::Approx(0.5));
}

TEST_CASE("mirrored oblique waves have equal errors") {
  const Mesh m = make_mesh(MeshFamily::Cartesian, 16, BoundaryKind::Periodic, 1);
  std::array<double, 3> errors[2];
  const double thetas[2] = {M_PI / 4, 3 * M_PI / 4};
  for (int k = 0; k < 2; ++k) {
    const ObliqueWave w{0.5, thetas[k]};
    TimeControl c;
    c.t_end = 0.2;
    const RunResult r = run(m, initialize(w, m), c, {});
    errors[k] = error_l1(m, r.state, [&](const Vec2& x) {
                  return exact_oblique(r.t, x.x(), x.y(), w.lambda, w.theta);
                }).l1;
  }
  for (int v = 0; v < 3; ++v) CHECK(std::abs(errors[0][v] - errors[1][v]) < 1e-13);
  // at 45 degrees the two velocity components carry the same error
  CHECK(std::abs(errors[0][0] - errors[0][1]) < 1e-13);
}

TEST_CASE("convergence study bookkeeping") {
  ConvergenceOptions opt;
  opt.levels = {8, 16};
  opt.t_end = 0.05;
  const auto table = convergence_study(ObliqueWave{}, opt);
  REQUIRE(table.size() == 2);
  CHECK(std::isnan(table[0].rate[0]));
  CHECK(table[1].cells == 256);
  CHECK(table[1].h == doctest::Approx(1.0 / 16));
  CHECK(table[1].rate[2] == doctest::Approx(std::log(table[0].l1[2] / table[1].l1[2]) / std::log(2.0)));
  std::ostringstream os;
  write_convergence_csv(os, table);
  CHECK(os.str().rfind("n,cells,h,err_u,err_v,err_p,rate_u,rate_v,rate_p\n", 0) == 0);
}

TEST_CASE("diagnostics") {
  SUBCASE("zero velocity") {
    const Mesh m = make_mesh(MeshFamily::Polygonal, 8, BoundaryKind::ZeroGradient, 1);
    const Diagnostics d = diagnostics(m, State(m.num_cells()));
    CHECK(d.vorticity_l1 == 0.0);
    CHECK(d.divergence_l1 == 0.0);
    CHECK(d.boundary_vorticity_l1 == 0.0);
  }
  SUBCASE("spherical RP starts without vorticity") {
    const Mesh m = make_mesh(MeshFamily::TriQuad, 16, BoundaryKind::ZeroGradient, 1);
    CHECK(diagnostics(m, initialize(SphericalRP{}, m)).vorticity_l1 == 0.0);
  }
  SUBCASE("vortex data has a non-zero discrete divergence") {
    const Mesh m = make_mesh(MeshFamily::Cartesian, 32, BoundaryKind::Periodic, 1);
    const Diagnostics d = diagnostics(m, initialize(StationaryVortex{}, m));
    CHECK(d.divergence_l1 > 1e-6);
    CHECK(d.vorticity_l1 > 0.1);
    REQUIRE(d.stencil_vorticity_l1.has_value());
    CHECK(*d.stencil_vorticity_l1 > 0.1);
  }
  SUBCASE("interior nodes avoid the ghost ring") {
    const Mesh m = make_mesh(MeshFamily::Cartesian, 6, BoundaryKind::ZeroGradient, 1);
    const auto mask = interior_nodes(m);
    int count = 0;
    for (char c : mask) count += c;
    CHECK(count == 5 * 5);
    const Mesh p = make_mesh(MeshFamily::Cartesian, 6, BoundaryKind::Periodic, 1);
    count = 0;
    for (char c : interior_nodes(p)) count += c;
    CHECK(count == 36);
  }
}

TEST_CASE("radial output and the four-quadrant comparison") {
  const Mesh m = make_mesh(MeshFamily::Cartesian, 40, BoundaryKind::ZeroGradient, 1);
  std::vector<double> field(m.num_cells(), 2.0);
  const auto samples = radial_profile(m, field, Vec2(0.5, 0.5));
  CHECK(samples.size() == m.num_physical_cells());
  std::ostringstream os;
  write_radial_csv(os, samples);
  CHECK(os.str().rfind("r,value\n", 0) == 0);

  // A state carrying the exact profile compares perfectly.
  const double t = 0.4;
  State q(m.num_cells());
  for (CellId c = 0; c < static_cast<CellId>(m.num_cells()); ++c) {
    const Vec2 x = m.cell_center(c) - Vec2(0.5, 0.5);
    const auto v = exact_fourquadrant_v(t, x.norm());
    if (v) q.v[c] = *v;
  }
  const ProfileComparison cmp = compare_fourquadrant(m, q, t, 0.2, 0.9);
  CHECK(cmp.cells > 100);
  CHECK(cmp.relative_l1 < 1e-15);
}

TEST_CASE("names and mesh families") {
  for (const char* n : {"oblique_wave", "four_quadrant", "spherical_rp", "vortex"})
    CHECK(case_name(case_from_string(n)) == n);
  CHECK_THROWS(case_from_string("sod"));
  CHECK(default_boundary(ObliqueWave{}) == BoundaryKind::Periodic);
  CHECK(default_boundary(FourQuadrant{}) == BoundaryKind::ZeroGradient);
  for (auto f : {MeshFamily::Cartesian, MeshFamily::PerturbedQuad, MeshFamily::TriQuad, MeshFamily::Polygonal}) {
    CHECK(family_from_string(to_string(f)) == f);
    const Mesh m = make_mesh(f, 8, BoundaryKind::Periodic, 1);
    CHECK(m.domain_area() == doctest::Approx(1.0));
  }
}
