#include "vortexfv/mesh_io.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>
#include <vector>

#include "vortexfv/errors.hpp"

namespace vfv {

namespace {

class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  // Next non-empty line with comments stripped, split into tokens.
  bool next(std::vector<std::string>& tokens) {
    std::string line;
    while (std::getline(in_, line)) {
      ++line_no_;
      if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
      std::istringstream ss(line);
      tokens.clear();
      for (std::string t; ss >> t;) tokens.push_back(t);
      if (!tokens.empty()) return true;
    }
    return false;
  }
  int line() const { return line_no_; }

 private:
  std::istream& in_;
  int line_no_ = 0;
};

template <class T>
T number(const std::string& tok, int line) {
  std::istringstream ss(tok);
  T v;
  ss >> v;
  if (ss.fail() || !ss.eof()) throw ParseError(line, "expected a number, got '" + tok + "'");
  return v;
}

void expect_count(const std::vector<std::string>& t, std::size_t n, int line) {
  if (t.size() != n) throw ParseError(line, "expected " + std::to_string(n) + " fields on '" + t[0] + "' line");
}

}  // namespace

Mesh parse_mesh(std::istream& in, bool allow_reorient) {
  LineReader r(in);
  std::vector<std::string> t;
  if (!r.next(t) || t.size() != 2 || t[0] != "polymesh") throw ParseError(r.line(), "missing 'polymesh 1' header");
  if (t[1] != "1") throw ParseError(r.line(), "unsupported format version " + t[1]);

  MeshInput mi;
  mi.allow_reorient = allow_reorient;
  bool have_nodes = false, have_cells = false, have_boundary = false;
  while (r.next(t)) {
    const std::string& kw = t[0];
    if (kw == "nodes") {
      expect_count(t, 2, r.line());
      const long n = number<long>(t[1], r.line());
      if (n < 0) throw ParseError(r.line(), "negative node count");
      mi.nodes.resize(n);
      for (long i = 0; i < n; ++i) {
        if (!r.next(t)) throw ParseError(r.line(), "unexpected end of file in nodes");
        if (t.size() != 2) throw ParseError(r.line(), "node line needs 'x y'");
        mi.nodes[i] = Vec2(number<double>(t[0], r.line()), number<double>(t[1], r.line()));
      }
      have_nodes = true;
    } else if (kw == "cells") {
      expect_count(t, 2, r.line());
      const long m = number<long>(t[1], r.line());
      if (m < 0) throw ParseError(r.line(), "negative cell count");
      mi.cells.resize(m);
      for (long c = 0; c < m; ++c) {
        if (!r.next(t)) throw ParseError(r.line(), "unexpected end of file in cells");
        const long k = number<long>(t[0], r.line());
        if (k < 0 || static_cast<std::size_t>(k) + 1 != t.size())
          throw ParseError(r.line(), "cell line has " + std::to_string(t.size() - 1) + " indices, declared " + t[0]);
        for (long i = 0; i < k; ++i) mi.cells[c].push_back(number<NodeId>(t[i + 1], r.line()));
      }
      have_cells = true;
    } else if (kw == "boundary") {
      expect_count(t, 2, r.line());
      try {
        mi.boundary = boundary_from_string(t[1]);
      } catch (const std::invalid_argument&) {
        throw ParseError(r.line(), "unknown boundary '" + t[1] + "'");
      }
      have_boundary = true;
    } else if (kw == "period") {
      if (t.size() != 3 && t.size() != 5) throw ParseError(r.line(), "period line needs 'Lx Ly [x0 y0]'");
      mi.period = Vec2(number<double>(t[1], r.line()), number<double>(t[2], r.line()));
      if (t.size() == 5) mi.origin = Vec2(number<double>(t[3], r.line()), number<double>(t[4], r.line()));
    } else if (kw == "images") {
      expect_count(t, 2, r.line());
      const long m = number<long>(t[1], r.line());
      mi.images.resize(m);
      for (long c = 0; c < m; ++c) {
        if (!r.next(t)) throw ParseError(r.line(), "unexpected end of file in images");
        const long k = number<long>(t[0], r.line());
        if (k < 0 || static_cast<std::size_t>(2 * k + 1) != t.size())
          throw ParseError(r.line(), "image line needs k followed by k shift pairs");
        for (long i = 0; i < k; ++i)
          mi.images[c].push_back({number<int>(t[1 + 2 * i], r.line()), number<int>(t[2 + 2 * i], r.line())});
      }
    } else if (kw == "ghosts") {
      expect_count(t, 2, r.line());
      const long k = number<long>(t[1], r.line());
      for (long i = 0; i < k; ++i) {
        if (!r.next(t)) throw ParseError(r.line(), "unexpected end of file in ghosts");
        if (t.size() != 2) throw ParseError(r.line(), "ghost line needs 'ghost donor'");
        mi.ghosts.emplace_back(number<CellId>(t[0], r.line()), number<CellId>(t[1], r.line()));
      }
    } else {
      throw ParseError(r.line(), "unknown keyword '" + kw + "'");
    }
  }
  if (!have_nodes) throw ParseError(r.line(), "missing 'nodes' section");
  if (!have_cells) throw ParseError(r.line(), "missing 'cells' section");
  if (!have_boundary) throw ParseError(r.line(), "missing 'boundary' line");
  if (mi.boundary == BoundaryKind::Periodic && !mi.period) throw ParseError(r.line(), "periodic mesh needs a 'period' line");
  return build_mesh(std::move(mi));
}

Mesh read_mesh(const std::string& path, bool allow_reorient) {
  std::ifstream f(path);
  if (!f) throw std::ios_base::failure("cannot open mesh file '" + path + "'");
  return parse_mesh(f, allow_reorient);
}

void write_mesh(const Mesh& mesh, std::ostream& out) {
  out << "polymesh 1\n" << std::setprecision(17);
  out << "nodes " << mesh.num_nodes() << "\n";
  for (const Vec2& x : mesh.nodes()) out << x.x() << " " << x.y() << "\n";
  out << "cells " << mesh.num_cells() << "\n";
  for (std::size_t c = 0; c < mesh.num_cells(); ++c) {
    auto nodes = mesh.cell_nodes(static_cast<CellId>(c));
    out << nodes.size();
    for (NodeId n : nodes) out << " " << n;
    out << "\n";
  }
  out << "boundary " << to_string(mesh.boundary()) << "\n";
  if (mesh.period()) {
    const Vec2& o = mesh.input().origin;
    out << "period " << mesh.period()->x() << " " << mesh.period()->y() << " " << o.x() << " " << o.y() << "\n";
  }
  if (mesh.period()) {
    out << "images " << mesh.num_cells() << "\n";
    for (std::size_t c = 0; c < mesh.num_cells(); ++c) {
      out << mesh.cell_size(static_cast<CellId>(c));
      for (CornerId k = mesh.corner_begin(static_cast<CellId>(c)); k < mesh.corner_end(static_cast<CellId>(c)); ++k) {
        const auto im = mesh.corner_image(k);
        out << " " << im[0] << " " << im[1];
      }
      out << "\n";
    }
  }
  if (!mesh.ghosts().empty()) {
    out << "ghosts " << mesh.ghosts().size() << "\n";
    for (auto [g, d] : mesh.ghosts()) out << g << " " << d << "\n";
  }
}

void write_mesh(const Mesh& mesh, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw std::ios_base::failure("cannot write mesh file '" + path + "'");
  write_mesh(mesh, f);
  if (!f) throw std::ios_base::failure("error while writing '" + path + "'");
}

}  // namespace vfv
