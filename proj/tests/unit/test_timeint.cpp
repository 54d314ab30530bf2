#include "doctest.h"
#include "support.hpp"

#include <cmath>

#include "vortexfv/cartesian.hpp"
#include "vortexfv/errors.hpp"
#include "vortexfv/fourier.hpp"
#include "vortexfv/timeint.hpp"

using namespace vfv;

TEST_CASE("single steps") {
  SUBCASE("a stationary state is returned unchanged") {
    const Mesh m = generate_cartesian(8, 8, 0.125, 0.125, BoundaryKind::Periodic);
    State q(m.num_cells());
    std::fill(q.p.begin(), q.p.end(), 1.5);
    std::fill(q.u.begin(), q.u.end(), -0.25);
    const Discretization d(m, {SchemeKind::NodalPressure, 1});
    const RhsFunction f = [&](const State& s) { return d.rhs(s); };
    CHECK(step_euler(m, q, 0.01, f) == q);
    CHECK(step_rk2(m, q, 0.01, f) == q);
  }
  SUBCASE("Euler step on a Fourier mode") {
    const int n = 16;
    const double h = 1.0 / n;
    const Mesh m = generate_cartesian(n, n, h, h, BoundaryKind::Periodic);
    const LatticeInfo& lat = *m.lattice();
    const int a = 3, b = 5;
    const fourier::Complex tx = std::polar(1.0, 2 * M_PI * a / n), ty = std::polar(1.0, 2 * M_PI * b / n);
    const fourier::Vector3c qhat(fourier::Complex(0.3, 0.1), fourier::Complex(-0.2, 0.4), fourier::Complex(1.0, 0));
    for (auto [kind, scheme] : {std::pair{SchemeKind::NodalPressure, fourier::Scheme::NodalPressure1},
                                std::pair{SchemeKind::NodalVelocity, fourier::Scheme::NodalVelocity1}}) {
      const double dt = 0.2 * h;
      const fourier::Vector3c next =
          (fourier::Matrix3c::Identity() - dt * fourier::symbol(scheme, tx, ty, h, h)) * qhat;
      State q(m.num_cells());
      for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
          const fourier::Complex phase = std::pow(tx, i) * std::pow(ty, j);
          const CellId c = lat.cell(i, j);
          q.u[c] = (qhat(0) * phase).real();
          q.v[c] = (qhat(1) * phase).real();
          q.p[c] = (qhat(2) * phase).real();
        }
      const Discretization d(m, {kind, 1});
      const State r = step_euler(m, q, dt, [&](const State& s) { return d.rhs(s); });
      for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
          const fourier::Complex phase = std::pow(tx, i) * std::pow(ty, j);
          const CellId c = lat.cell(i, j);
          CHECK(std::abs(r.u[c] - (next(0) * phase).real()) < 1e-12);
          CHECK(std::abs(r.v[c] - (next(1) * phase).real()) < 1e-12);
          CHECK(std::abs(r.p[c] - (next(2) * phase).real()) < 1e-12);
        }
    }
  }
}

TEST_CASE("time step control") {
  const Mesh m = generate_cartesian(10, 10, 0.1, 0.1, BoundaryKind::Periodic);
  TimeControl c;
  c.cfl = 0.4;
  CHECK(time_step(m, c) == doctest::Approx(0.04));
  c.h = 0.5;
  CHECK(time_step(m, c) == doctest::Approx(0.2));
  const Mesh tri = cases::make_mesh(cases::MeshFamily::TriQuad, 10, BoundaryKind::Periodic, 2);
  c.h = 0;
  CHECK(time_step(tri, c) == doctest::Approx(0.4 * tri.min_length_scale()));
}

TEST_CASE("run") {
  const Mesh m = cases::make_mesh(cases::MeshFamily::Cartesian, 16, BoundaryKind::Periodic, 1);
  const State q0 = cases::initialize(cases::StationaryVortex{}, m);
  SUBCASE("t_end = 0") {
    TimeControl c;
    const RunResult r = run(m, q0, c, {});
    CHECK(r.steps == 0);
    CHECK(r.state == q0);
  }
  SUBCASE("last step is clipped") {
    TimeControl c;
    c.t_end = 0.1234;
    const RunResult r = run(m, q0, c, {});
    CHECK(std::abs(r.t - 0.1234) < 1e-14);
    CHECK(r.steps == static_cast<int>(std::ceil(0.1234 / time_step(m, c) - 1e-12)));
  }
  SUBCASE("observers see the start and the end") {
    TimeControl c;
    c.t_end = 0.1;
    c.observe_every = 1000;
    std::vector<int> seen;
    const RunResult r = run(m, q0, c, {}, {[&](int step, double, const State&) { seen.push_back(step); }});
    REQUIRE(seen.size() == 2);
    CHECK(seen.front() == 0);
    CHECK(seen.back() == r.steps);
  }
}

TEST_CASE("stability of the nodal-pressure scheme around cfl 1/2") {
  const Mesh m = cases::make_mesh(cases::MeshFamily::Cartesian, 32, BoundaryKind::Periodic, 1);
  const State q0 = cases::initialize(cases::ObliqueWave{}, m);
  const double dt = 1.0 / 32;
  TimeControl c;
  c.cfl = 0.45;
  c.t_end = 1000 * 0.45 * dt;
  const RunResult r = run(m, q0, c, {});
  CHECK(r.steps == 1000);
  CHECK(all_finite(r.state));
  CHECK(max_abs(r.state) <= 1.0 + 1e-12);
  c.cfl = 0.75;
  c.t_end = 2000 * 0.75 * dt;
  CHECK_THROWS_AS(run(m, q0, c, {}), NonFiniteState);
}

TEST_CASE("property: totals are conserved in time") {
  testing::Rng rng(131);
  for (int trial = 0; trial < 8; ++trial) {
    const Mesh m = testing::random_mesh(rng, BoundaryKind::Periodic);
    const State q0 = testing::random_state(m, rng);
    const auto t0 = totals(m, q0);
    for (SchemeSpec spec : {SchemeSpec{SchemeKind::NodalPressure, 1}, SchemeSpec{SchemeKind::NodalPressure, 2},
                            SchemeSpec{SchemeKind::NodalVelocity, 1}}) {
      TimeControl c;
      c.order = spec.order;
      c.t_end = 20 * time_step(m, c);
      const RunResult r = run(m, q0, c, spec);
      const auto t1 = totals(m, r.state);
      for (int k = 0; k < 3; ++k) CHECK(std::abs(t1[k] - t0[k]) <= 1e-11 * (1 + std::abs(t0[k])));
    }
  }
}

TEST_CASE("property: the Cartesian vorticity stencil is constant in time") {
  testing::Rng rng(137);
  for (int trial = 0; trial < 4; ++trial) {
    const int nx = testing::uniform_int(rng, 4, 12), ny = testing::uniform_int(rng, 4, 12);
    const Mesh m = generate_cartesian(nx, ny, 1.0 / nx, 1.0 / ny, BoundaryKind::Periodic);
    const State q0 = testing::random_state(m, rng);
    const auto w0 = cartesian::vorticity_stencil(m, q0);
    for (int order : {1, 2}) {
      TimeControl c;
      c.order = order;
      c.t_end = 30 * time_step(m, c);
      const RunResult r = run(m, q0, c, {SchemeKind::NodalPressure, order});
      const auto w1 = cartesian::vorticity_stencil(m, r.state);
      for (std::size_t n = 0; n < w0.size(); ++n)
        if (!std::isnan(w0[n])) CHECK(std::abs(w1[n] - w0[n]) < 1e-12);
    }
  }
}
