#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "vortexfv/cases.hpp"
#include "vortexfv/config.hpp"
#include "vortexfv/driver.hpp"
#include "vortexfv/errors.hpp"
#include "vortexfv/fourier.hpp"
#include "vortexfv/mesh_generators.hpp"
#include "vortexfv/mesh_io.hpp"
#include "vortexfv/operators.hpp"
#include "vortexfv/timeint.hpp"

namespace py = pybind11;
using namespace vfv;

namespace {

py::array_t<double> to_array(const std::vector<double>& v) { return py::array_t<double>(v.size(), v.data()); }

std::vector<double> from_array(const py::array_t<double, py::array::c_style | py::array::forcecast>& a, std::size_t n,
                               const char* what) {
  if (a.ndim() != 1 || static_cast<std::size_t>(a.shape(0)) != n)
    throw py::value_error(std::string(what) + " must be a 1-d array of length " + std::to_string(n));
  return {a.data(), a.data() + n};
}

py::array_t<double> points(const std::vector<Vec2>& v) {
  py::array_t<double> out({static_cast<py::ssize_t>(v.size()), py::ssize_t{2}});
  auto r = out.mutable_unchecked<2>();
  for (std::size_t i = 0; i < v.size(); ++i) {
    r(i, 0) = v[i].x();
    r(i, 1) = v[i].y();
  }
  return out;
}

CellVectorField velocity(const Mesh& m, const py::array_t<double, py::array::c_style | py::array::forcecast>& a) {
  if (a.ndim() != 2 || static_cast<std::size_t>(a.shape(0)) != m.num_cells() || a.shape(1) != 2)
    throw py::value_error("velocity must have shape (num_cells, 2)");
  CellVectorField v(m.num_cells());
  auto r = a.unchecked<2>();
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = Vec2(r(i, 0), r(i, 1));
  return v;
}

fourier::Scheme fourier_scheme(const std::string& s) {
  try {
    return fourier::scheme_from_string(s);
  } catch (const std::invalid_argument& e) {
    throw py::value_error(e.what());
  }
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Vorticity-preserving finite volume schemes for linear acoustics";
  m.attr("__version__") = VORTEXFV_VERSION;

  py::register_exception<MeshError>(m, "MeshError", PyExc_ValueError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<NonFiniteState>(m, "NonFiniteState", PyExc_ArithmeticError);
  py::register_exception<SingularNodalSystem>(m, "SingularNodalSystem", PyExc_ArithmeticError);
  py::register_exception<DegenerateStencil>(m, "DegenerateStencil", PyExc_ValueError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);

  py::class_<Mesh>(m, "Mesh")
      .def_property_readonly("num_cells", &Mesh::num_cells)
      .def_property_readonly("num_nodes", &Mesh::num_nodes)
      .def_property_readonly("num_edges", &Mesh::num_edges)
      .def_property_readonly("num_physical_cells", &Mesh::num_physical_cells)
      .def_property_readonly("max_cell_size", &Mesh::max_cell_size)
      .def_property_readonly("domain_area", &Mesh::domain_area)
      .def_property_readonly("min_length_scale", &Mesh::min_length_scale)
      .def_property_readonly("boundary", [](const Mesh& self) { return std::string(to_string(self.boundary())); })
      .def("cell_areas",
           [](const Mesh& self) {
             std::vector<double> a(self.num_cells());
             for (std::size_t c = 0; c < a.size(); ++c) a[c] = self.cell_area(static_cast<CellId>(c));
             return to_array(a);
           })
      .def("cell_centers",
           [](const Mesh& self) {
             std::vector<Vec2> x(self.num_cells());
             for (std::size_t c = 0; c < x.size(); ++c) x[c] = self.cell_center(static_cast<CellId>(c));
             return points(x);
           })
      .def("node_positions", [](const Mesh& self) { return points(self.nodes()); })
      .def("dual_areas",
           [](const Mesh& self) {
             std::vector<double> a(self.num_nodes());
             for (std::size_t n = 0; n < a.size(); ++n) a[n] = self.dual_area(static_cast<NodeId>(n));
             return to_array(a);
           })
      .def("is_ghost", &Mesh::is_ghost);

  m.def(
      "make_mesh",
      [](const std::string& family, int n, const std::string& boundary, std::uint64_t seed) {
        return cases::make_mesh(cases::family_from_string(family), n, boundary_from_string(boundary), seed);
      },
      py::arg("family") = "cartesian", py::arg("n") = 16, py::arg("boundary") = "periodic", py::arg("seed") = 1,
      "Generate a mesh on the unit square: cartesian, quad, triquad or polygonal.");
  m.def("read_mesh", [](const std::string& path) { return read_mesh(path); }, py::arg("path"));
  m.def("write_mesh", [](const Mesh& mesh, const std::string& path) { write_mesh(mesh, path); }, py::arg("mesh"),
        py::arg("path"));

  m.def(
      "gradient",
      [](const Mesh& mesh, const py::array_t<double, py::array::c_style | py::array::forcecast>& phi) {
        return points(gradient_G(mesh, from_array(phi, mesh.num_nodes(), "phi")));
      },
      py::arg("mesh"), py::arg("phi"));
  m.def(
      "divergence",
      [](const Mesh& mesh, const py::array_t<double, py::array::c_style | py::array::forcecast>& v) {
        return to_array(divergence_D(mesh, velocity(mesh, v)));
      },
      py::arg("mesh"), py::arg("velocity"));
  m.def(
      "curl",
      [](const Mesh& mesh, const py::array_t<double, py::array::c_style | py::array::forcecast>& v) {
        return to_array(curl_C(mesh, velocity(mesh, v)));
      },
      py::arg("mesh"), py::arg("velocity"));
  m.def(
      "check_identities",
      [](const Mesh& mesh, std::uint64_t seed) {
        py::list out;
        for (const auto& t : check_identities(mesh, seed))
          out.append(py::dict(py::arg("name") = t.name, py::arg("applicable") = t.applicable,
                              py::arg("residual") = t.residual, py::arg("holds") = t.holds()));
        return out;
      },
      py::arg("mesh"), py::arg("seed") = 1);

  m.def(
      "initialize",
      [](const std::string& name, const Mesh& mesh) {
        const State q = cases::initialize(cases::case_from_string(name), mesh);
        return py::dict(py::arg("u") = to_array(q.u), py::arg("v") = to_array(q.v), py::arg("p") = to_array(q.p));
      },
      py::arg("case"), py::arg("mesh"), "Initial data of a benchmark: oblique_wave, four_quadrant, spherical_rp, vortex.");

  m.def(
      "rhs",
      [](const Mesh& mesh, py::array_t<double> u, py::array_t<double> v, py::array_t<double> p,
         const std::string& scheme, int order) {
        State q;
        q.u = from_array(u, mesh.num_cells(), "u");
        q.v = from_array(v, mesh.num_cells(), "v");
        q.p = from_array(p, mesh.num_cells(), "p");
        refresh_ghosts(mesh, q);
        SchemeSpec spec{scheme == "nodal_velocity" ? SchemeKind::NodalVelocity : SchemeKind::NodalPressure, order};
        if (scheme != "nodal_velocity" && scheme != "nodal_pressure") throw py::value_error("unknown scheme " + scheme);
        if (spec.kind == SchemeKind::NodalVelocity && order == 2)
          throw UnsupportedCombination("order", "the nodal-velocity scheme is first order only");
        const State r = Discretization(mesh, spec).rhs(q);
        return py::make_tuple(to_array(r.u), to_array(r.v), to_array(r.p));
      },
      py::arg("mesh"), py::arg("u"), py::arg("v"), py::arg("p"), py::arg("scheme") = "nodal_pressure",
      py::arg("order") = 1, "Semi-discrete right-hand side dq/dt.");

  m.def(
      "simulate",
      [](const Mesh& mesh, const std::string& name, const std::string& scheme, int order, double t_end, double cfl) {
        const State q0 = cases::initialize(cases::case_from_string(name), mesh);
        TimeControl control;
        control.t_end = t_end;
        control.cfl = cfl;
        control.order = order;
        SchemeSpec spec{scheme == "nodal_velocity" ? SchemeKind::NodalVelocity : SchemeKind::NodalPressure, order};
        if (spec.kind == SchemeKind::NodalVelocity && order == 2)
          throw UnsupportedCombination("order", "the nodal-velocity scheme is first order only");
        RunResult r;
        {
          py::gil_scoped_release release;
          r = run(mesh, q0, control, spec, {});
        }
        const auto d = cases::diagnostics(mesh, r.state);
        return py::dict(py::arg("u") = to_array(r.state.u), py::arg("v") = to_array(r.state.v),
                        py::arg("p") = to_array(r.state.p), py::arg("t") = r.t, py::arg("steps") = r.steps,
                        py::arg("vorticity_l1") = d.vorticity_l1, py::arg("divergence_l1") = d.divergence_l1);
      },
      py::arg("mesh"), py::arg("case"), py::arg("scheme") = "nodal_pressure", py::arg("order") = 1,
      py::arg("t_end") = 0.1, py::arg("cfl") = 0.3);

  m.def(
      "exact_oblique",
      [](double t, double x, double y, double lambda, double theta) {
        const auto v = cases::exact_oblique(t, x, y, lambda, theta);
        return py::make_tuple(v.u, v.v, v.p);
      },
      py::arg("t"), py::arg("x"), py::arg("y"), py::arg("lam") = 0.5, py::arg("theta") = 0.7853981633974483);
  m.def("exact_fourquadrant_v", &cases::exact_fourquadrant_v, py::arg("t"), py::arg("r"));

  m.def(
      "symbol",
      [](const std::string& scheme, std::complex<double> tx, std::complex<double> ty, double dx, double dy) {
        return Eigen::Matrix3cd(fourier::symbol(fourier_scheme(scheme), tx, ty, dx, dy));
      },
      py::arg("scheme"), py::arg("tx"), py::arg("ty"), py::arg("dx") = 1.0, py::arg("dy") = 1.0);
  m.def(
      "kernel_dimension", [](const Eigen::Matrix3cd& e, double tol) { return fourier::kernel_dimension(e, tol); },
      py::arg("matrix"), py::arg("tolerance") = 1e-10);
  m.def(
      "stability_scan",
      [](const std::string& scheme, double cfl, int samples) {
        return fourier::stability_scan(fourier_scheme(scheme), cfl, samples).max_radius;
      },
      py::arg("scheme"), py::arg("cfl"), py::arg("samples") = 64);

  m.def(
      "run_config",
      [](const std::map<std::string, std::string>& entries) {
        const RunConfig cfg = resolve_config(entries);
        const RunSummary s = run_simulation(cfg);
        return py::dict(py::arg("steps") = s.steps, py::arg("t") = s.t, py::arg("files") = s.files,
                        py::arg("vorticity_l1") = s.final.vorticity_l1,
                        py::arg("divergence_l1") = s.final.divergence_l1, py::arg("wall_time") = s.wall_time);
      },
      py::arg("config"), "Run the CLI 'run' pipeline from key/value settings; files go to output_dir.");
}
