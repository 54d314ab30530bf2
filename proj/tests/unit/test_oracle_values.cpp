// Values produced by tests/oracles/cartesian_oracle.py, an independent numpy
// implementation of the Cartesian schemes, and frozen here.

#include "doctest.h"

#include <cmath>

#include "vortexfv/cases.hpp"
#include "vortexfv/fourier.hpp"
#include "vortexfv/timeint.hpp"

using namespace vfv;

namespace {

struct Frozen {
  double sum_abs_u, sum_abs_p, u_9_5, p_9_5;
};

void check_vortex_run(SchemeKind kind, const Frozen& ref) {
  const int n = 16;
  const Mesh m = cases::make_mesh(cases::MeshFamily::Cartesian, n, BoundaryKind::Periodic, 1);
  State q = cases::initialize(cases::StationaryVortex{}, m);
  const Discretization d(m, {kind, 1});
  const double dt = 0.3 / n;
  for (int k = 0; k < 20; ++k) q = step_euler(m, q, dt, [&](const State& s) { return d.rhs(s); });
  double su = 0, sp = 0;
  for (CellId c = 0; c < static_cast<CellId>(m.num_cells()); ++c) {
    su += std::abs(q.u[c]) * m.cell_area(c);
    sp += std::abs(q.p[c]) * m.cell_area(c);
  }
  const CellId c = m.lattice()->cell(9, 5);
  CHECK(su == doctest::Approx(ref.sum_abs_u).epsilon(1e-12));
  CHECK(sp == doctest::Approx(ref.sum_abs_p).epsilon(1e-11));
  CHECK(q.u[c] == doctest::Approx(ref.u_9_5).epsilon(1e-12));
  CHECK(q.p[c] == doctest::Approx(ref.p_9_5).epsilon(1e-11));
}

}  // namespace

TEST_CASE("vortex, 20 forward Euler steps on 16x16") {
  SUBCASE("nodal pressure") {
    check_vortex_run(SchemeKind::NodalPressure,
                     {0.16154056116884985, 0.00019655455128105969, 0.77996225622838822, -8.5880174223036671e-05});
  }
  SUBCASE("nodal velocity") {
    check_vortex_run(SchemeKind::NodalVelocity,
                     {0.10304992852053574, 0.00035329032618414466, 0.2656567877094359, -0.00020238255840097553});
  }
}

TEST_CASE("rate matrices at a sample wavevector") {
  using fourier::Complex;
  const Complex tx = std::polar(1.0, 2 * M_PI * 3 / 16), ty = std::polar(1.0, 2 * M_PI * 5 / 16);
  const Complex I(0, 1);
  SUBCASE("nodal pressure") {
    const fourier::Matrix3c A = -fourier::symbol(fourier::Scheme::NodalPressure1, tx, ty, 0.5, 0.25);
    fourier::Matrix3c ref;
    ref << -0.12702658155884883, -0.56903559372884893, -0.57032614191801134 * I,  //
        -0.56903559372884893, -2.549084632182542, -2.5548658462091187 * I,       //
        -0.57032614191801123 * I, -2.5548658462091183 * I, -9.4393398282201826;
    CHECK((A - ref).norm() < 1e-13);
  }
  SUBCASE("nodal velocity") {
    const fourier::Matrix3c A = -fourier::symbol(fourier::Scheme::NodalVelocity1, tx, ty, 0.5, 0.25);
    fourier::Matrix3c ref;
    ref << -3.1464466094067274, 0.0, -0.57032614191801123 * I,  //
        0.0, -6.2928932188134548, -2.5548658462091183 * I,     //
        -0.57032614191801134 * I, -2.5548658462091187 * I, -4.20470669295036;
    CHECK((A - ref).norm() < 1e-13);
  }
}

TEST_CASE("nodal-velocity determinant, closed form") {
  using fourier::Complex;
  const Complex a = fourier::nodal_velocity_determinant(Complex(0, 1), 1.0, 1.0, 1.0);
  CHECK(a.real() == doctest::Approx(-2.0));
  CHECK(std::abs(a.imag()) < 1e-14);
  const Complex b = fourier::nodal_velocity_determinant(std::polar(1.0, 0.3), std::polar(1.0, 1.1), 0.5, 0.25);
  CHECK(b.real() == doctest::Approx(-20.39207534056305).epsilon(1e-13));
  CHECK(std::abs(b.imag()) < 1e-12);
}

TEST_CASE("analytic solutions") {
  CHECK(*cases::exact_fourquadrant_v(1.0, 0.3) == doctest::Approx(0.29822775406389218).epsilon(1e-14));
  const cases::Values v = cases::exact_oblique(0.1, 0.3, 0.7, 0.5, M_PI / 6);
  CHECK(v.u == doctest::Approx(0.46848760943699463).epsilon(1e-14));
  CHECK(v.v == doctest::Approx(0.2704814474204531).epsilon(1e-14));
  CHECK(v.p == doctest::Approx(-0.10017906764504271).epsilon(1e-14));
}
