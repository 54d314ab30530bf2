#include "vortexfv/mesh_generators.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>
#include <string>

#include "vortexfv/errors.hpp"

namespace vfv {

LatticeSpec LatticeSpec::unit_square(int nx, int ny, BoundaryKind boundary) {
  LatticeSpec s;
  s.nx = nx;
  s.ny = ny;
  s.dx = 1.0 / nx;
  s.dy = 1.0 / ny;
  s.boundary = boundary;
  return s;
}

namespace {

// Uniform double in [0,1) from the raw 64-bit stream, identical on every platform.
double unit_draw(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

void check_spec(const LatticeSpec& s) {
  if (s.nx < 1 || s.ny < 1) throw std::invalid_argument("lattice needs nx, ny >= 1");
  if (!(s.dx > 0) || !(s.dy > 0)) throw std::invalid_argument("lattice spacings must be positive");
  if (s.boundary == BoundaryKind::Periodic && (s.nx < 2 || s.ny < 2))
    throw std::invalid_argument("periodic lattice needs nx, ny >= 2");
}

// Mesh skeleton made of horizontal rows of cells, each row cut at integer
// breakpoints. Vertices on a horizontal line are the union of the breakpoints
// of the two rows touching it, so a cell can have more than four vertices.
struct RowFrame {
  LatticeSpec spec;
  int g = 0;  // ghost rows/columns on each side
  bool periodic = false;
  std::vector<std::vector<int>> rows;  // index j + g

  int jlo() const { return -g; }
  int jhi() const { return spec.ny + g; }
  int xlo() const { return -g; }
  int xhi() const { return spec.nx + g; }

  const std::vector<int>& row(int j) const {
    if (periodic) j = ((j % spec.ny) + spec.ny) % spec.ny;
    return rows[j + g];
  }
  bool has_row(int j) const { return periodic || (j >= jlo() && j < jhi()); }

  std::vector<int> line_points(int j) const {
    std::set<int> pts;
    for (int r : {j - 1, j})
      if (has_row(r)) pts.insert(row(r).begin(), row(r).end());
    return {pts.begin(), pts.end()};
  }
};

struct Skeleton {
  std::vector<Vec2> nodes;
  std::vector<std::array<int, 2>> node_lattice;  // canonical (x, j)
  std::vector<std::vector<NodeId>> cells;
  std::vector<std::vector<std::array<int, 2>>> images;
  std::vector<std::array<int, 3>> cell_row;  // (j, b0, b1)
  std::vector<char> cell_physical;
  std::map<std::array<int, 2>, NodeId> node_of;
};

Skeleton build_skeleton(const RowFrame& f) {
  const LatticeSpec& s = f.spec;
  Skeleton sk;
  auto canon = [&](int x, int j) -> std::array<int, 2> {
    if (f.periodic) {
      x = ((x % s.nx) + s.nx) % s.nx;
      j = ((j % s.ny) + s.ny) % s.ny;
    }
    return {x, j};
  };
  auto physical_node = [&](int x, int j) { return x >= 0 && x <= s.nx && j >= 0 && j <= s.ny; };

  // Node ids: physical nodes first, line by line.
  const int jmax = f.periodic ? s.ny - 1 : f.jhi();
  for (int pass = 0; pass < 2; ++pass) {
    for (int j = f.jlo(); j <= jmax; ++j) {
      for (int x : f.line_points(j)) {
        const auto key = canon(x, j);
        if ((pass == 0) != physical_node(x, j)) continue;
        if (sk.node_of.count(key)) continue;
        sk.node_of[key] = static_cast<NodeId>(sk.nodes.size());
        sk.nodes.push_back(s.origin + Vec2(key[0] * s.dx, key[1] * s.dy));
        sk.node_lattice.push_back(key);
      }
    }
  }
  auto nid = [&](int x, int j) { return sk.node_of.at(canon(x, j)); };

  for (int pass = 0; pass < 2; ++pass) {
    for (int j = f.jlo(); j < f.jhi(); ++j) {
      std::vector<int> bps = f.row(j);
      if (f.periodic) bps.push_back(s.nx);
      const auto bottom = f.line_points(j);
      const auto top = f.line_points(j + 1);
      for (std::size_t k = 0; k + 1 < bps.size(); ++k) {
        const int b0 = bps[k], b1 = bps[k + 1];
        const bool phys = j >= 0 && j < s.ny && b0 >= 0 && b1 <= s.nx;
        if ((pass == 0) != phys) continue;
        std::vector<NodeId> cell;
        std::vector<std::array<int, 2>> image;
        auto push = [&](int x, int jj) {
          cell.push_back(nid(x, jj));
          if (f.periodic) image.push_back({x >= s.nx ? 1 : 0, jj >= s.ny ? 1 : 0});
        };
        auto in_range = [&](int x) { return x >= b0 && x <= b1; };
        std::vector<int> bot(bottom), tp(top);
        if (f.periodic) {
          bot.push_back(s.nx);
          tp.push_back(s.nx);
        }
        std::sort(bot.begin(), bot.end());
        bot.erase(std::unique(bot.begin(), bot.end()), bot.end());
        std::sort(tp.begin(), tp.end());
        tp.erase(std::unique(tp.begin(), tp.end()), tp.end());
        for (int x : bot)
          if (in_range(x)) push(x, j);
        for (auto it = tp.rbegin(); it != tp.rend(); ++it)
          if (in_range(*it)) push(*it, j + 1);
        sk.cells.push_back(std::move(cell));
        sk.images.push_back(std::move(image));
        sk.cell_row.push_back({j, b0, b1});
        sk.cell_physical.push_back(phys);
      }
    }
  }
  return sk;
}

RowFrame quad_frame(const LatticeSpec& s) {
  RowFrame f;
  f.spec = s;
  f.periodic = s.boundary == BoundaryKind::Periodic;
  f.g = f.periodic ? 0 : 1;
  for (int j = f.jlo(); j < f.jhi(); ++j) {
    std::vector<int> r;
    for (int x = f.xlo(); x <= (f.periodic ? s.nx - 1 : f.xhi()); ++x) r.push_back(x);
    f.rows.push_back(std::move(r));
  }
  return f;
}

void perturb(Skeleton& sk, const RowFrame& f, double amplitude, std::uint64_t seed) {
  if (amplitude == 0) return;
  const LatticeSpec& s = f.spec;
  const double r = amplitude * std::min(s.dx, s.dy);
  std::mt19937_64 rng(seed);
  for (std::size_t n = 0; n < sk.nodes.size(); ++n) {
    const auto [x, j] = sk.node_lattice[n];
    // Draw unconditionally so the stream does not depend on node classification.
    const double rad = r * std::sqrt(unit_draw(rng));
    const double ang = 2 * M_PI * unit_draw(rng);
    const double t = r * (2 * unit_draw(rng) - 1);
    if (f.periodic) {
      if (x == 0 && j == 0) continue;
      if (x == 0) {
        sk.nodes[n].y() += t;
      } else if (j == 0) {
        sk.nodes[n].x() += t;
      } else {
        sk.nodes[n] += rad * Vec2(std::cos(ang), std::sin(ang));
      }
    } else {
      if (x > 0 && x < s.nx && j > 0 && j < s.ny) sk.nodes[n] += rad * Vec2(std::cos(ang), std::sin(ang));
    }
  }
}

void add_ghost_donors(MeshInput& in, const Skeleton& sk, const RowFrame& f) {
  if (f.periodic) return;
  const LatticeSpec& s = f.spec;
  // Physical cell containing lattice point (x + 1/2, j) of each row.
  std::map<std::pair<int, int>, CellId> owner;
  for (std::size_t c = 0; c < sk.cells.size(); ++c) {
    if (!sk.cell_physical[c]) continue;
    const auto [j, b0, b1] = sk.cell_row[c];
    for (int x = b0; x < b1; ++x) owner[{x, j}] = static_cast<CellId>(c);
  }
  for (std::size_t c = 0; c < sk.cells.size(); ++c) {
    if (sk.cell_physical[c]) continue;
    const auto [j, b0, b1] = sk.cell_row[c];
    const int x = std::clamp(b0, 0, s.nx - 1);
    const int jj = std::clamp(j, 0, s.ny - 1);
    in.ghosts.emplace_back(static_cast<CellId>(c), owner.at({x, jj}));
  }
}

Mesh finish(MeshInput in, double amplitude) {
  try {
    return build_mesh(std::move(in));
  } catch (const MeshError& e) {
    if (amplitude > 0) throw MeshError(MeshErrorKind::TangledMesh, std::string("perturbation broke the mesh: ") + e.what());
    throw;
  }
}

MeshInput make_input(const Skeleton& sk, const RowFrame& f) {
  MeshInput in;
  in.nodes = sk.nodes;
  in.cells = sk.cells;
  if (f.periodic) in.images = sk.images;
  in.boundary = f.spec.boundary;
  if (f.periodic) in.period = Vec2(f.spec.nx * f.spec.dx, f.spec.ny * f.spec.dy);
  in.origin = f.spec.origin;
  return in;
}

}  // namespace

Mesh generate_cartesian(const LatticeSpec& spec) {
  check_spec(spec);
  const RowFrame f = quad_frame(spec);
  const Skeleton sk = build_skeleton(f);
  MeshInput in = make_input(sk, f);
  add_ghost_donors(in, sk, f);
  Mesh mesh = build_mesh(std::move(in));

  LatticeInfo info;
  info.nx = spec.nx;
  info.ny = spec.ny;
  info.ghost = f.g;
  info.dx = spec.dx;
  info.dy = spec.dy;
  info.origin = spec.origin;
  const int w = spec.nx + 2 * f.g;
  info.cells.assign(w * (spec.ny + 2 * f.g), kNoCell);
  for (std::size_t c = 0; c < sk.cells.size(); ++c) {
    const auto [j, b0, b1] = sk.cell_row[c];
    info.cells[(b0 + f.g) + (j + f.g) * w] = static_cast<CellId>(c);
  }
  // Node (i, j) is the upper right corner of cell (i, j); index from -g-1.
  const int wn = w + 1;
  info.nodes.assign(wn * (spec.ny + 2 * f.g + 1), -1);
  for (int j = -f.g - 1; j < spec.ny + f.g; ++j)
    for (int i = -f.g - 1; i < spec.nx + f.g; ++i) {
      int x = i + 1, y = j + 1;
      if (f.periodic) {
        x = ((x % spec.nx) + spec.nx) % spec.nx;
        y = ((y % spec.ny) + spec.ny) % spec.ny;
      }
      auto it = sk.node_of.find({x, y});
      if (it != sk.node_of.end()) info.nodes[(i + f.g + 1) + (j + f.g + 1) * wn] = it->second;
    }
  return attach_lattice(std::move(mesh), std::move(info));
}

Mesh generate_cartesian(int nx, int ny, double dx, double dy, BoundaryKind boundary, Vec2 origin) {
  LatticeSpec s;
  s.nx = nx;
  s.ny = ny;
  s.dx = dx;
  s.dy = dy;
  s.boundary = boundary;
  s.origin = origin;
  return generate_cartesian(s);
}

Mesh generate_perturbed_quad(const LatticeSpec& spec, double amplitude, std::uint64_t seed) {
  check_spec(spec);
  if (!(amplitude >= 0) || amplitude > 0.3) throw std::invalid_argument("amplitude must lie in [0, 0.3]");
  const RowFrame f = quad_frame(spec);
  Skeleton sk = build_skeleton(f);
  perturb(sk, f, amplitude, seed);
  MeshInput in = make_input(sk, f);
  add_ghost_donors(in, sk, f);
  return finish(std::move(in), amplitude);
}

Mesh generate_mixed_triquad(const LatticeSpec& spec, double split_fraction, std::uint64_t seed, double amplitude) {
  check_spec(spec);
  if (!(split_fraction >= 0 && split_fraction <= 1)) throw std::invalid_argument("split_fraction must lie in [0, 1]");
  if (!(amplitude >= 0) || amplitude > 0.3) throw std::invalid_argument("amplitude must lie in [0, 0.3]");
  const RowFrame f = quad_frame(spec);
  Skeleton sk = build_skeleton(f);
  perturb(sk, f, amplitude, seed);

  // Split physical quads; ghost cells keep their shape.
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  Skeleton out = sk;
  out.cells.clear();
  out.images.clear();
  out.cell_row.clear();
  out.cell_physical.clear();
  for (std::size_t c = 0; c < sk.cells.size(); ++c) {
    const auto& q = sk.cells[c];
    const double draw = unit_draw(rng);
    const bool flip = unit_draw(rng) < 0.5;
    if (sk.cell_physical[c] && q.size() == 4 && draw < split_fraction) {
      const std::array<int, 6> idx = flip ? std::array<int, 6>{0, 1, 3, 1, 2, 3} : std::array<int, 6>{0, 1, 2, 0, 2, 3};
      for (int t = 0; t < 2; ++t) {
        std::vector<NodeId> tri;
        std::vector<std::array<int, 2>> im;
        for (int v = 0; v < 3; ++v) {
          tri.push_back(q[idx[3 * t + v]]);
          if (f.periodic) im.push_back(sk.images[c][idx[3 * t + v]]);
        }
        out.cells.push_back(std::move(tri));
        out.images.push_back(std::move(im));
      }
      out.cell_row.push_back(sk.cell_row[c]);
      out.cell_row.push_back(sk.cell_row[c]);
      out.cell_physical.push_back(1);
      out.cell_physical.push_back(1);
    } else {
      out.cells.push_back(q);
      out.images.push_back(sk.images[c]);
      out.cell_row.push_back(sk.cell_row[c]);
      out.cell_physical.push_back(sk.cell_physical[c]);
    }
  }
  MeshInput in = make_input(out, f);
  add_ghost_donors(in, out, f);
  return finish(std::move(in), amplitude);
}

Mesh generate_polygonal(const LatticeSpec& spec, std::uint64_t seed, double amplitude) {
  check_spec(spec);
  if (spec.nx % 2 != 0) throw std::invalid_argument("polygonal mesh needs an even nx");
  if (!(amplitude >= 0) || amplitude > 0.3) throw std::invalid_argument("amplitude must lie in [0, 0.3]");
  RowFrame f;
  f.spec = spec;
  f.periodic = spec.boundary == BoundaryKind::Periodic;
  f.g = f.periodic ? 0 : 1;
  static constexpr char kPattern[] = "QBQBB";
  for (int j = f.jlo(); j < f.jhi(); ++j) {
    const bool ghost_row = j < 0 || j >= spec.ny;
    const bool brick = !ghost_row && kPattern[j % 5] == 'B';
    std::vector<int> r;
    const int last = f.periodic ? spec.nx - 1 : f.xhi();
    for (int x = f.xlo(); x <= last; ++x) {
      const bool inside = x >= 0 && x <= spec.nx;
      if (brick && inside && x % 2 != 0) continue;
      r.push_back(x);
    }
    f.rows.push_back(std::move(r));
  }
  Skeleton sk = build_skeleton(f);
  perturb(sk, f, amplitude, seed);
  MeshInput in = make_input(sk, f);
  add_ghost_donors(in, sk, f);
  return finish(std::move(in), amplitude);
}

}  // namespace vfv
