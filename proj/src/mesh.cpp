#include "vortexfv/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <sstream>
#include <tuple>

#include "vortexfv/errors.hpp"

namespace vfv {

const char* to_string(BoundaryKind kind) {
  return kind == BoundaryKind::Periodic ? "periodic" : "zerogradient";
}

BoundaryKind boundary_from_string(const std::string& s) {
  if (s == "periodic") return BoundaryKind::Periodic;
  if (s == "zerogradient" || s == "zero_gradient") return BoundaryKind::ZeroGradient;
  throw std::invalid_argument("unknown boundary kind '" + s + "'");
}

CellId LatticeInfo::cell(int i, int j) const {
  const int w = nx + 2 * ghost;
  return cells[(i + ghost) + (j + ghost) * w];
}

NodeId LatticeInfo::node(int i, int j) const {
  const int w = nx + 2 * ghost + 1;
  return nodes[(i + ghost + 1) + (j + ghost + 1) * w];
}

namespace {

double shoelace(std::span<const Vec2> p) {
  double a = 0;
  for (std::size_t k = 0; k < p.size(); ++k) a += cross(p[k], p[(k + 1) % p.size()]);
  return 0.5 * a;
}

int orient(const Vec2& a, const Vec2& b, const Vec2& c) {
  const double v = cross(b - a, c - a);
  return (v > 0) - (v < 0);
}

bool on_segment(const Vec2& a, const Vec2& b, const Vec2& p) {
  return std::min(a.x(), b.x()) <= p.x() && p.x() <= std::max(a.x(), b.x()) &&
         std::min(a.y(), b.y()) <= p.y() && p.y() <= std::max(a.y(), b.y());
}

bool segments_touch(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d) {
  const int o1 = orient(a, b, c), o2 = orient(a, b, d), o3 = orient(c, d, a), o4 = orient(c, d, b);
  if (o1 != o2 && o3 != o4) return true;
  if (o1 == 0 && on_segment(a, b, c)) return true;
  if (o2 == 0 && on_segment(a, b, d)) return true;
  if (o3 == 0 && on_segment(c, d, a)) return true;
  if (o4 == 0 && on_segment(c, d, b)) return true;
  return false;
}

bool is_simple(std::span<const Vec2> p) {
  const std::size_t k = p.size();
  for (std::size_t i = 0; i < k; ++i) {
    const Vec2& a = p[i];
    const Vec2& b = p[(i + 1) % k];
    if (a == b) return false;
    // Adjacent edges folding back onto each other.
    const Vec2& c = p[(i + 2) % k];
    if (cross(b - a, c - b) == 0 && (b - a).dot(c - b) < 0) return false;
    for (std::size_t j = i + 2; j < k; ++j) {
      if (i == 0 && j == k - 1) continue;
      if (segments_touch(a, b, p[j], p[(j + 1) % k])) return false;
    }
  }
  return true;
}

std::string cell_label(std::size_t c) { return "cell " + std::to_string(c); }

}  // namespace

Mesh build_mesh(MeshInput input) {
  Mesh m;
  const std::size_t nn = input.nodes.size();
  const std::size_t nc = input.cells.size();
  if (nc == 0) throw MeshError(MeshErrorKind::Validation, "mesh has no cells");
  const bool periodic = input.boundary == BoundaryKind::Periodic;
  if (periodic) {
    if (!input.period || !(input.period->x() > 0) || !(input.period->y() > 0))
      throw MeshError(MeshErrorKind::Validation, "periodic mesh requires a positive period");
  }
  for (const Vec2& x : input.nodes)
    if (!std::isfinite(x.x()) || !std::isfinite(x.y()))
      throw MeshError(MeshErrorKind::Validation, "non-finite node coordinate");

  // Connectivity sanity.
  std::vector<char> used(nn, 0);
  for (std::size_t c = 0; c < nc; ++c) {
    auto& cell = input.cells[c];
    if (cell.size() < 3) throw MeshError(MeshErrorKind::Validation, cell_label(c) + " has fewer than 3 nodes");
    for (NodeId n : cell) {
      if (n < 0 || static_cast<std::size_t>(n) >= nn)
        throw MeshError(MeshErrorKind::DanglingNode, cell_label(c) + " references missing node " + std::to_string(n));
      used[n] = 1;
    }
    std::vector<NodeId> sorted(cell);
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw MeshError(MeshErrorKind::NonSimplePolygon, cell_label(c) + " repeats a node");
  }
  for (std::size_t n = 0; n < nn; ++n)
    if (!used[n]) throw MeshError(MeshErrorKind::DanglingNode, "node " + std::to_string(n) + " belongs to no cell");

  const Vec2 period = periodic ? *input.period : Vec2::Zero();
  auto unwrap_near = [&](const Vec2& x, const Vec2& ref) {
    if (!periodic) return x;
    Vec2 y = x;
    y.x() += period.x() * std::round((ref.x() - x.x()) / period.x());
    y.y() += period.y() * std::round((ref.y() - x.y()) / period.y());
    return y;
  };

  // Unwrapped vertex positions, simplicity, orientation.
  std::vector<std::vector<Vec2>> pos(nc);
  for (std::size_t c = 0; c < nc; ++c) {
    auto& cell = input.cells[c];
    auto& p = pos[c];
    p.resize(cell.size());
    if (!input.images.empty()) {
      if (input.images.size() != nc || input.images[c].size() != cell.size())
        throw MeshError(MeshErrorKind::Validation, cell_label(c) + " has a mismatched image list");
      for (std::size_t k = 0; k < cell.size(); ++k) {
        const auto& im = input.images[c][k];
        p[k] = input.nodes[cell[k]] + Vec2(im[0] * period.x(), im[1] * period.y());
      }
    } else {
      p[0] = input.nodes[cell[0]];
      for (std::size_t k = 1; k < cell.size(); ++k) p[k] = unwrap_near(input.nodes[cell[k]], p[k - 1]);
    }
    if (!is_simple(p)) throw MeshError(MeshErrorKind::NonSimplePolygon, cell_label(c) + " is not a simple polygon");
    double perim = 0;
    for (std::size_t k = 0; k < p.size(); ++k) perim += (p[(k + 1) % p.size()] - p[k]).norm();
    const double a = shoelace(p);
    if (std::abs(a) <= 1e-14 * perim * perim)
      throw MeshError(MeshErrorKind::ZeroAreaCell, cell_label(c) + " has zero area");
    if (a < 0) {
      if (!input.allow_reorient)
        throw MeshError(MeshErrorKind::InconsistentOrientation, cell_label(c) + " is ordered clockwise");
      std::reverse(cell.begin(), cell.end());
      std::reverse(p.begin(), p.end());
      if (!input.images.empty()) std::reverse(input.images[c].begin(), input.images[c].end());
    }
  }

  m.boundary_ = input.boundary;
  if (periodic) m.period_ = period;
  m.nodes_ = input.nodes;

  // Cells and corners.
  m.cell_offsets_.assign(nc + 1, 0);
  for (std::size_t c = 0; c < nc; ++c) m.cell_offsets_[c + 1] = m.cell_offsets_[c] + input.cells[c].size();
  const std::size_t nk = m.cell_offsets_[nc];
  m.corner_node_.resize(nk);
  m.corner_cell_.resize(nk);
  m.corner_pos_.resize(nk);
  m.corner_normal_.resize(nk);
  m.corner_sub_.resize(nk);
  m.corner_edge_.resize(nk);
  m.cell_area_.resize(nc);
  m.cell_perimeter_.resize(nc);
  m.cell_centroid_.resize(nc);

  for (std::size_t c = 0; c < nc; ++c) {
    const auto& p = pos[c];
    const std::size_t k = p.size();
    double a = 0, perim = 0;
    Vec2 moment = Vec2::Zero();
    // Moments relative to the first vertex limit cancellation.
    const Vec2 o = p[0];
    for (std::size_t i = 0; i < k; ++i) {
      const Vec2 x0 = p[i] - o, x1 = p[(i + 1) % k] - o;
      const double w = cross(x0, x1);
      a += w;
      moment += w * (x0 + x1);
      perim += (p[(i + 1) % k] - p[i]).norm();
    }
    a *= 0.5;
    m.cell_area_[c] = a;
    m.cell_perimeter_[c] = perim;
    m.cell_centroid_[c] = o + moment / (6.0 * a);
    for (std::size_t i = 0; i < k; ++i) {
      const CornerId id = m.cell_offsets_[c] + i;
      m.corner_node_[id] = input.cells[c][i];
      m.corner_cell_[id] = static_cast<CellId>(c);
      m.corner_pos_[id] = p[i];
    }
  }

  // Edges: key (lo, hi, shift) identifies an edge uniquely on the torus.
  using Key = std::tuple<NodeId, NodeId, long, long>;
  std::map<Key, EdgeId> edge_of;
  struct Occ {
    CellId cell;
    int local;
    bool forward;  // traversed lo -> hi
  };
  std::vector<std::vector<Occ>> occ;
  std::vector<Key> keys;
  for (std::size_t c = 0; c < nc; ++c) {
    const auto& cell = input.cells[c];
    const auto& p = pos[c];
    const std::size_t k = cell.size();
    for (std::size_t i = 0; i < k; ++i) {
      NodeId a = cell[i], b = cell[(i + 1) % k];
      long sx = 0, sy = 0;
      if (periodic) {
        const Vec2 d = (p[(i + 1) % k] - p[i]) - (input.nodes[b] - input.nodes[a]);
        sx = std::lround(d.x() / period.x());
        sy = std::lround(d.y() / period.y());
      }
      const bool forward = a < b;
      Key key = forward ? Key{a, b, sx, sy} : Key{b, a, -sx, -sy};
      auto [it, inserted] = edge_of.try_emplace(key, static_cast<EdgeId>(occ.size()));
      if (inserted) {
        occ.emplace_back();
        keys.push_back(key);
      }
      occ[it->second].push_back({static_cast<CellId>(c), static_cast<int>(i), forward});
    }
  }
  const std::size_t ne = occ.size();
  m.edge_nodes_.resize(ne);
  m.edge_cells_.resize(ne);
  m.edge_normal_.resize(ne);
  m.edge_length_.resize(ne);
  m.edge_corners_.resize(ne);
  auto corner_at = [&](CellId c, int local) {
    const int k = m.cell_size(c);
    return m.cell_offsets_[c] + ((local % k) + k) % k;
  };
  for (std::size_t e = 0; e < ne; ++e) {
    auto& o = occ[e];
    if (o.size() > 2)
      throw MeshError(MeshErrorKind::NonManifoldEdge, "edge shared by more than two cells");
    if (o.size() == 2) {
      if (o[0].forward == o[1].forward)
        throw MeshError(MeshErrorKind::InconsistentOrientation,
                        cell_label(o[0].cell) + " and " + cell_label(o[1].cell) + " traverse a shared edge in the same direction");
      if (o[0].cell == o[1].cell)
        throw MeshError(MeshErrorKind::NonManifoldEdge, cell_label(o[0].cell) + " is adjacent to itself");
      if (o[1].cell < o[0].cell) std::swap(o[0], o[1]);
    } else if (periodic) {
      throw MeshError(MeshErrorKind::Validation, "periodic mesh has an unmatched edge at " + cell_label(o[0].cell));
    }
    const Occ& L = o[0];
    const CornerId ka = corner_at(L.cell, L.local), kb = corner_at(L.cell, L.local + 1);
    const Vec2 d = m.corner_pos_[kb] - m.corner_pos_[ka];
    const double len = d.norm();
    m.edge_nodes_[e] = {m.corner_node_[ka], m.corner_node_[kb]};
    m.edge_length_[e] = len;
    m.edge_normal_[e] = Vec2(d.y(), -d.x()) / len;
    if (o.size() == 2) {
      const Occ& R = o[1];
      // R traverses b -> a starting at its local index.
      const CornerId rb = corner_at(R.cell, R.local), ra = corner_at(R.cell, R.local + 1);
      m.edge_cells_[e] = {L.cell, R.cell};
      m.edge_corners_[e] = {ka, kb, ra, rb};
    } else {
      m.edge_cells_[e] = {L.cell, kNoCell};
      m.edge_corners_[e] = {ka, kb, kNoCorner, kNoCorner};
    }
    for (const Occ& oc : o) {
      const CornerId from = corner_at(oc.cell, oc.local), to = corner_at(oc.cell, oc.local + 1);
      m.corner_edge_[from][1] = static_cast<EdgeId>(e);
      m.corner_edge_[to][0] = static_cast<EdgeId>(e);
    }
  }

  // Node normals from the outward subedge normals of each corner.
  for (std::size_t c = 0; c < nc; ++c) {
    const CornerId b = m.cell_offsets_[c], en = m.cell_offsets_[c + 1];
    const int k = en - b;
    for (int i = 0; i < k; ++i) {
      const CornerId id = b + i;
      const Vec2& xp = m.corner_pos_[b + (i + k - 1) % k];
      const Vec2& x = m.corner_pos_[id];
      const Vec2& xn = m.corner_pos_[b + (i + 1) % k];
      const Vec2 d0 = x - xp, d1 = xn - x;
      const double l0 = d0.norm(), l1 = d1.norm();
      m.corner_sub_[id][0] = {0.5 * l0, Vec2(d0.y(), -d0.x()) / l0};
      m.corner_sub_[id][1] = {0.5 * l1, Vec2(d1.y(), -d1.x()) / l1};
      m.corner_normal_[id] = 0.5 * Vec2(d0.y(), -d0.x()) + 0.5 * Vec2(d1.y(), -d1.x());
    }
  }

  // Node -> corners, counterclockwise by the direction towards the cell centroid.
  m.node_corner_offsets_.assign(nn + 1, 0);
  for (std::size_t k = 0; k < nk; ++k) ++m.node_corner_offsets_[m.corner_node_[k] + 1];
  std::partial_sum(m.node_corner_offsets_.begin(), m.node_corner_offsets_.end(), m.node_corner_offsets_.begin());
  m.node_corner_.resize(nk);
  {
    std::vector<int> fill(m.node_corner_offsets_.begin(), m.node_corner_offsets_.end() - 1);
    for (std::size_t k = 0; k < nk; ++k) m.node_corner_[fill[m.corner_node_[k]]++] = static_cast<CornerId>(k);
  }
  for (std::size_t n = 0; n < nn; ++n) {
    auto first = m.node_corner_.begin() + m.node_corner_offsets_[n];
    auto last = m.node_corner_.begin() + m.node_corner_offsets_[n + 1];
    std::sort(first, last, [&](CornerId a, CornerId b) {
      const Vec2 da = m.cell_centroid_[m.corner_cell_[a]] - m.corner_pos_[a];
      const Vec2 db = m.cell_centroid_[m.corner_cell_[b]] - m.corner_pos_[b];
      return std::atan2(da.y(), da.x()) < std::atan2(db.y(), db.x());
    });
  }

  // Dual areas: sum of the subcells (node, next midpoint, centroid, previous midpoint).
  m.dual_area_.assign(nn, 0.0);
  for (std::size_t c = 0; c < nc; ++c) {
    const CornerId b = m.cell_offsets_[c];
    const int k = m.cell_size(c);
    for (int i = 0; i < k; ++i) {
      const Vec2& x = m.corner_pos_[b + i];
      const Vec2 mp = 0.5 * (x + m.corner_pos_[b + (i + k - 1) % k]);
      const Vec2 mn = 0.5 * (x + m.corner_pos_[b + (i + 1) % k]);
      const std::array<Vec2, 4> quad{x, mn, m.cell_centroid_[c], mp};
      m.dual_area_[m.corner_node_[b + i]] += shoelace(quad);
    }
  }

  // Ghost cells.
  m.ghost_donor_.assign(nc, kNoCell);
  for (auto [g, d] : input.ghosts) {
    if (g < 0 || d < 0 || static_cast<std::size_t>(g) >= nc || static_cast<std::size_t>(d) >= nc || g == d)
      throw MeshError(MeshErrorKind::Validation, "invalid ghost pair");
    if (m.ghost_donor_[g] != kNoCell) throw MeshError(MeshErrorKind::Validation, "ghost declared twice");
    m.ghost_donor_[g] = d;
  }
  for (auto [g, d] : input.ghosts)
    if (m.ghost_donor_[d] != kNoCell) throw MeshError(MeshErrorKind::Validation, "ghost donor is itself a ghost");
  m.ghosts_ = input.ghosts;
  m.node_physical_.assign(nn, 0);
  m.n_phys_cells_ = 0;
  for (std::size_t c = 0; c < nc; ++c) {
    if (m.ghost_donor_[c] != kNoCell) continue;
    ++m.n_phys_cells_;
    for (NodeId n : m.cell_nodes(static_cast<CellId>(c))) m.node_physical_[n] = 1;
  }
  m.n_phys_nodes_ = std::count(m.node_physical_.begin(), m.node_physical_.end(), 1);
  m.n_phys_edges_ = 0;
  for (std::size_t e = 0; e < ne; ++e) m.n_phys_edges_ += m.is_physical_edge(static_cast<EdgeId>(e));

  m.rebuild_node_subedges();

  // Geometric invariants of the node normals.
  for (std::size_t c = 0; c < nc; ++c) {
    Vec2 sum = Vec2::Zero();
    Eigen::Matrix2d outer = Eigen::Matrix2d::Zero();
    const Vec2 o = m.cell_centroid_[c];
    for (CornerId k = m.corner_begin(c); k < m.corner_end(c); ++k) {
      sum += m.corner_normal_[k];
      outer += m.corner_normal_[k] * (m.corner_pos_[k] - o).transpose();
    }
    const double a = m.cell_area_[c];
    if (sum.norm() > 1e-12 * m.cell_perimeter_[c] ||
        (outer - a * Eigen::Matrix2d::Identity()).norm() > 1e-12 * a)
      throw MeshError(MeshErrorKind::Validation, cell_label(c) + " violates the node-normal identities");
  }
  for (std::size_t n = 0; n < nn; ++n)
    if (m.node_complete_[n] && !(m.dual_area_[n] > 0))
      throw MeshError(MeshErrorKind::TangledMesh, "node " + std::to_string(n) + " has a non-positive dual cell");

  m.input_ = std::move(input);
  return m;
}

void Mesh::rebuild_node_subedges() {
  const std::size_t nn = nodes_.size();
  node_sub_offsets_.assign(nn + 1, 0);
  for (const auto& en : edge_nodes_) {
    ++node_sub_offsets_[en[0] + 1];
    ++node_sub_offsets_[en[1] + 1];
  }
  std::partial_sum(node_sub_offsets_.begin(), node_sub_offsets_.end(), node_sub_offsets_.begin());
  node_sub_.resize(node_sub_offsets_[nn]);
  std::vector<int> fill(node_sub_offsets_.begin(), node_sub_offsets_.end() - 1);
  for (std::size_t e = 0; e < edge_nodes_.size(); ++e) {
    const auto& k = edge_corners_[e];
    const double h = 0.5 * edge_length_[e];
    node_sub_[fill[edge_nodes_[e][0]]++] = {static_cast<EdgeId>(e), k[0], k[2], h, edge_normal_[e]};
    node_sub_[fill[edge_nodes_[e][1]]++] = {static_cast<EdgeId>(e), k[1], k[3], h, edge_normal_[e]};
  }
  node_complete_.assign(nn, 1);
  for (const SubEdge& s : node_sub_)
    if (s.right == kNoCorner) node_complete_[corner_node_[s.left]] = 0;
}

std::array<int, 2> Mesh::corner_image(CornerId k) const {
  if (!period_) return {0, 0};
  const Vec2 d = corner_pos_[k] - nodes_[corner_node_[k]];
  return {static_cast<int>(std::lround(d.x() / period_->x())), static_cast<int>(std::lround(d.y() / period_->y()))};
}

bool Mesh::is_physical_edge(EdgeId e) const {
  const auto& c = edge_cells_[e];
  return !is_ghost(c[0]) || (c[1] != kNoCell && !is_ghost(c[1]));
}

std::vector<CellId> Mesh::node_cells(NodeId n) const {
  std::vector<CellId> out;
  for (CornerId k : node_corners(n)) out.push_back(corner_cell_[k]);
  return out;
}

std::vector<EdgeId> Mesh::node_edges(NodeId n) const {
  std::vector<EdgeId> out;
  for (const SubEdge& s : node_subedges(n)) out.push_back(s.edge);
  return out;
}

int Mesh::max_cell_size() const {
  int m = 0;
  for (std::size_t c = 0; c < num_cells(); ++c) m = std::max(m, cell_size(static_cast<CellId>(c)));
  return m;
}

double Mesh::domain_area() const {
  double a = 0;
  for (std::size_t c = 0; c < num_cells(); ++c)
    if (!is_ghost(static_cast<CellId>(c))) a += cell_area_[c];
  return a;
}

double Mesh::min_length_scale() const {
  double h = std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < num_cells(); ++c)
    if (!is_ghost(static_cast<CellId>(c))) h = std::min(h, 4.0 * cell_area_[c] / cell_perimeter_[c]);
  return h;
}

Vec2 Mesh::wrap(const Vec2& x) const {
  if (!period_) return x;
  const Vec2 o = input_.origin;
  Vec2 y = x - o;
  y.x() -= period_->x() * std::floor(y.x() / period_->x());
  y.y() -= period_->y() * std::floor(y.y() / period_->y());
  return y + o;
}

Mesh Mesh::flipped_edge_orientation() const {
  Mesh m = *this;
  for (std::size_t e = 0; e < m.num_edges(); ++e) {
    if (m.edge_cells_[e][1] == kNoCell) continue;
    std::swap(m.edge_cells_[e][0], m.edge_cells_[e][1]);
    m.edge_normal_[e] = -m.edge_normal_[e];
    auto& k = m.edge_corners_[e];
    std::swap(k[0], k[2]);
    std::swap(k[1], k[3]);
  }
  m.rebuild_node_subedges();
  return m;
}

Mesh attach_lattice(Mesh mesh, LatticeInfo info) {
  mesh.lattice_ = std::move(info);
  return mesh;
}

}  // namespace vfv
