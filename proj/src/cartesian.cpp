#include "vortexfv/cartesian.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace vfv::cartesian {

namespace {

struct Grid {
  const LatticeInfo& L;
  bool periodic;
  int nx, ny;
  double dx, dy;

  explicit Grid(const Mesh& mesh)
      : L(require(mesh)), periodic(mesh.boundary() == BoundaryKind::Periodic), nx(L.nx), ny(L.ny), dx(L.dx), dy(L.dy) {}

  static const LatticeInfo& require(const Mesh& mesh) {
    if (!mesh.lattice()) throw std::invalid_argument("Cartesian formulas need a lattice mesh");
    return *mesh.lattice();
  }
  CellId cell(int i, int j) const {
    if (periodic) {
      i = ((i % nx) + nx) % nx;
      j = ((j % ny) + ny) % ny;
    }
    return L.cell(i, j);
  }
  NodeId node(int i, int j) const {
    if (periodic) {
      i = ((i % nx) + nx) % nx;
      j = ((j % ny) + ny) % ny;
    }
    return L.node(i, j);
  }
  // Nodes (i, j) with i in [-1, nx), j in [-1, ny) surround the physical cells.
  int nidx(int i, int j) const { return (i + 1) + (j + 1) * (nx + 1); }
  std::size_t nnodes() const { return static_cast<std::size_t>(nx + 1) * (ny + 1); }
};

// Node (i, j) sits at the upper right of cell (i, j). For a field f:
//   {[f]} = (f(i+1,j) - f(i,j)) + (f(i+1,j+1) - f(i,j+1))   differenced in x
//   [{f}] = (f(i,j+1) - f(i,j)) + (f(i+1,j+1) - f(i+1,j))   differenced in y
//   {{f}} = sum of the four
struct Quad {
  double a00, a10, a01, a11;
  double dx_jump() const { return (a10 - a00) + (a11 - a01); }
  double dy_jump() const { return (a01 - a00) + (a11 - a10); }
  double sum() const { return a00 + a10 + a01 + a11; }
};

Quad gather(const Grid& g, const std::vector<double>& f, int i, int j) {
  return {f[g.cell(i, j)], f[g.cell(i + 1, j)], f[g.cell(i, j + 1)], f[g.cell(i + 1, j + 1)]};
}

std::vector<double> node_pressure_grid(const Grid& g, const State& q) {
  std::vector<double> ps(g.nnodes());
  const double wx = g.dy / (g.dx + g.dy), wy = g.dx / (g.dx + g.dy);
  for (int j = -1; j < g.ny; ++j)
    for (int i = -1; i < g.nx; ++i) {
      const Quad u = gather(g, q.u, i, j), v = gather(g, q.v, i, j), p = gather(g, q.p, i, j);
      ps[g.nidx(i, j)] = 0.25 * p.sum() - 0.25 * (wx * u.dx_jump() + wy * v.dy_jump());
    }
  return ps;
}

// Shared velocity/pressure updates from nodal pressures on the node grid.
State updates_from_pstar(const Grid& g, const Mesh& mesh, const std::vector<double>& ps, const State& q) {
  State out(mesh.num_cells());
  const double k = 0.5 * (1.0 / g.dx + 1.0 / g.dy);
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      const double pur = ps[g.nidx(i, j)], pul = ps[g.nidx(i - 1, j)];
      const double plr = ps[g.nidx(i, j - 1)], pll = ps[g.nidx(i - 1, j - 1)];
      const CellId c = g.cell(i, j);
      out.u[c] = -0.5 * ((pur - pul) + (plr - pll)) / g.dx;
      out.v[c] = -0.5 * ((pur - plr) + (pul - pll)) / g.dy;
      out.p[c] = k * (pur + pul + plr + pll - 4.0 * q.p[c]);
    }
  return out;
}

std::vector<double> to_mesh_nodes(const Grid& g, const Mesh& mesh, const std::vector<double>& ps) {
  std::vector<double> out(mesh.num_nodes(), std::numeric_limits<double>::quiet_NaN());
  for (int j = -1; j < g.ny; ++j)
    for (int i = -1; i < g.nx; ++i) {
      const NodeId n = g.node(i, j);
      if (n >= 0) out[n] = ps[g.nidx(i, j)];
    }
  return out;
}

}  // namespace

std::vector<double> nodal_pressure(const Mesh& mesh, const State& q) {
  const Grid g(mesh);
  return to_mesh_nodes(g, mesh, node_pressure_grid(g, q));
}

State rhs_nodal_pressure(const Mesh& mesh, const State& q) {
  const Grid g(mesh);
  return updates_from_pstar(g, mesh, node_pressure_grid(g, q), q);
}

State rhs_nodal_pressure_expanded(const Mesh& mesh, const State& q) {
  const Grid g(mesh);
  if (g.dx != g.dy) throw std::invalid_argument("expanded stencils assume dx == dy");
  // Rows j+1, j, j-1; columns i-1, i, i+1. Each entry multiplies h d/dt.
  static constexpr double Uu[3][3] = {{1. / 16, -1. / 8, 1. / 16}, {1. / 8, -1. / 4, 1. / 8}, {1. / 16, -1. / 8, 1. / 16}};
  static constexpr double Uv[3][3] = {{-1. / 16, 0, 1. / 16}, {0, 0, 0}, {1. / 16, 0, -1. / 16}};
  static constexpr double Up[3][3] = {{1. / 8, 0, -1. / 8}, {1. / 4, 0, -1. / 4}, {1. / 8, 0, -1. / 8}};
  static constexpr double Vu[3][3] = {{-1. / 16, 0, 1. / 16}, {0, 0, 0}, {1. / 16, 0, -1. / 16}};
  static constexpr double Vv[3][3] = {{1. / 16, 1. / 8, 1. / 16}, {-1. / 8, -1. / 4, -1. / 8}, {1. / 16, 1. / 8, 1. / 16}};
  static constexpr double Vp[3][3] = {{-1. / 8, -1. / 4, -1. / 8}, {0, 0, 0}, {1. / 8, 1. / 4, 1. / 8}};
  static constexpr double Pu[3][3] = {{1. / 8, 0, -1. / 8}, {1. / 4, 0, -1. / 4}, {1. / 8, 0, -1. / 8}};
  static constexpr double Pv[3][3] = {{-1. / 8, -1. / 4, -1. / 8}, {0, 0, 0}, {1. / 8, 1. / 4, 1. / 8}};
  static constexpr double Pp[3][3] = {{1. / 4, 1. / 2, 1. / 4}, {1. / 2, -3, 1. / 2}, {1. / 4, 1. / 2, 1. / 4}};
  State out(mesh.num_cells());
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      double du = 0, dv = 0, dp = 0;
      for (int r = 0; r < 3; ++r)
        for (int s = 0; s < 3; ++s) {
          const CellId n = g.cell(i - 1 + s, j + 1 - r);
          du += Uu[r][s] * q.u[n] + Uv[r][s] * q.v[n] + Up[r][s] * q.p[n];
          dv += Vu[r][s] * q.u[n] + Vv[r][s] * q.v[n] + Vp[r][s] * q.p[n];
          dp += Pu[r][s] * q.u[n] + Pv[r][s] * q.v[n] + Pp[r][s] * q.p[n];
        }
      const CellId c = g.cell(i, j);
      out.u[c] = du / g.dx;
      out.v[c] = dv / g.dx;
      out.p[c] = dp / g.dx;
    }
  return out;
}

namespace {

std::vector<Vec2> node_velocity_grid(const Grid& g, const State& q) {
  std::vector<Vec2> vs(g.nnodes());
  for (int j = -1; j < g.ny; ++j)
    for (int i = -1; i < g.nx; ++i) {
      const Quad u = gather(g, q.u, i, j), v = gather(g, q.v, i, j), p = gather(g, q.p, i, j);
      vs[g.nidx(i, j)] = Vec2(0.25 * u.sum() - 0.25 * p.dx_jump(), 0.25 * v.sum() - 0.25 * p.dy_jump());
    }
  return vs;
}

}  // namespace

std::vector<Vec2> nodal_velocity(const Mesh& mesh, const State& q) {
  const Grid g(mesh);
  const std::vector<Vec2> vs = node_velocity_grid(g, q);
  std::vector<Vec2> out(mesh.num_nodes(), Vec2::Constant(std::numeric_limits<double>::quiet_NaN()));
  for (int j = -1; j < g.ny; ++j)
    for (int i = -1; i < g.nx; ++i) {
      const NodeId n = g.node(i, j);
      if (n >= 0) out[n] = vs[g.nidx(i, j)];
    }
  return out;
}

State rhs_nodal_velocity(const Mesh& mesh, const State& q) {
  const Grid g(mesh);
  const std::vector<Vec2> vs = node_velocity_grid(g, q);
  State out(mesh.num_cells());
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      const Vec2 ur = vs[g.nidx(i, j)], ul = vs[g.nidx(i - 1, j)];
      const Vec2 lr = vs[g.nidx(i, j - 1)], ll = vs[g.nidx(i - 1, j - 1)];
      const CellId c = g.cell(i, j);
      out.u[c] = (-4.0 * q.u[c] + ur.x() + ul.x() + lr.x() + ll.x()) / (2 * g.dx);
      out.v[c] = (-4.0 * q.v[c] + ur.y() + ul.y() + lr.y() + ll.y()) / (2 * g.dy);
      out.p[c] = -((ur.x() - ul.x()) + (lr.x() - ll.x())) / (2 * g.dx) - ((ur.y() - lr.y()) + (ul.y() - ll.y())) / (2 * g.dy);
    }
  return out;
}

Slopes slopes(const Mesh& mesh, const State& q, Stencil stencil) {
  const Grid g(mesh);
  if (!g.periodic) throw std::invalid_argument("Cartesian second-order formulas assume a periodic lattice");
  Slopes s;
  s.u.assign(mesh.num_cells(), Vec2::Zero());
  s.v = s.u;
  s.p = s.u;
  auto one = [&](const std::vector<double>& f, int i, int j) {
    auto at = [&](int a, int b) { return f[g.cell(i + a, j + b)]; };
    if (stencil == Stencil::S5) return Vec2((at(1, 0) - at(-1, 0)) / (2 * g.dx), (at(0, 1) - at(0, -1)) / (2 * g.dy));
    double ax = 0, ay = 0;
    for (int b = -1; b <= 1; ++b) ax += at(1, b) - at(-1, b);
    for (int a = -1; a <= 1; ++a) ay += at(a, 1) - at(a, -1);
    return Vec2(ax / (6 * g.dx), ay / (6 * g.dy));
  };
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      const CellId c = g.cell(i, j);
      s.u[c] = one(q.u, i, j);
      s.v[c] = one(q.v, i, j);
      s.p[c] = one(q.p, i, j);
    }
  return s;
}

namespace {

// Reconstruction of cell (i, j) evaluated at its corner (sx dx/2, sy dy/2).
double corner(const Grid& g, const std::vector<double>& f, const std::vector<Vec2>& a, int i, int j, int sx, int sy) {
  const CellId c = g.cell(i, j);
  return f[c] + a[c].x() * sx * 0.5 * g.dx + a[c].y() * sy * 0.5 * g.dy;
}

std::vector<double> node_pressure_grid_2(const Grid& g, const State& q, const Slopes& s) {
  std::vector<double> ps(g.nnodes());
  const double wx = g.dy / (g.dx + g.dy), wy = g.dx / (g.dx + g.dy);
  for (int j = -1; j < g.ny; ++j)
    for (int i = -1; i < g.nx; ++i) {
      auto quad = [&](const std::vector<double>& f, const std::vector<Vec2>& a) {
        return Quad{corner(g, f, a, i, j, 1, 1), corner(g, f, a, i + 1, j, -1, 1), corner(g, f, a, i, j + 1, 1, -1),
                    corner(g, f, a, i + 1, j + 1, -1, -1)};
      };
      const Quad u = quad(q.u, s.u), v = quad(q.v, s.v), p = quad(q.p, s.p);
      ps[g.nidx(i, j)] = 0.25 * p.sum() - 0.25 * (wx * u.dx_jump() + wy * v.dy_jump());
    }
  return ps;
}

}  // namespace

std::vector<double> nodal_pressure_2(const Mesh& mesh, const State& q, Stencil stencil) {
  const Grid g(mesh);
  return to_mesh_nodes(g, mesh, node_pressure_grid_2(g, q, slopes(mesh, q, stencil)));
}

State rhs_second_order(const Mesh& mesh, const State& q, Stencil stencil) {
  const Grid g(mesh);
  const Slopes s = slopes(mesh, q, stencil);
  const std::vector<double> ps = node_pressure_grid_2(g, q, s);
  State out(mesh.num_cells());
  const double w = 0.5 * (g.dx + g.dy);
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      const CellId c = g.cell(i, j);
      double du = 0, dv = 0, dp = 0;
      for (int sy = -1; sy <= 1; sy += 2)
        for (int sx = -1; sx <= 1; sx += 2) {
          const double pst = ps[g.nidx(i + (sx - 1) / 2, j + (sy - 1) / 2)];
          du += sx * 0.5 * g.dy * pst;
          dv += sy * 0.5 * g.dx * pst;
          dp += sx * 0.5 * g.dy * corner(g, q.u, s.u, i, j, sx, sy) + sy * 0.5 * g.dx * corner(g, q.v, s.v, i, j, sx, sy) +
                w * (corner(g, q.p, s.p, i, j, sx, sy) - pst);
        }
      const double area = g.dx * g.dy;
      out.u[c] = -du / area;
      out.v[c] = -dv / area;
      out.p[c] = -dp / area;
    }
  return out;
}

std::vector<double> vorticity_stencil(const Mesh& mesh, const State& q) {
  const Grid g(mesh);
  std::vector<double> out(mesh.num_nodes(), std::numeric_limits<double>::quiet_NaN());
  for (int j = -1; j < g.ny; ++j)
    for (int i = -1; i < g.nx; ++i) {
      const NodeId n = g.node(i, j);
      if (n < 0) continue;
      const Quad u = gather(g, q.u, i, j), v = gather(g, q.v, i, j);
      out[n] = u.dy_jump() / (2 * g.dy) - v.dx_jump() / (2 * g.dx);
    }
  return out;
}

}  // namespace vfv::cartesian
