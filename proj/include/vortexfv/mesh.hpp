#pragma once

#include <Eigen/Core>
#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace vfv {

using Vec2 = Eigen::Vector2d;
using NodeId = std::int32_t;
using EdgeId = std::int32_t;
using CellId = std::int32_t;
using CornerId = std::int32_t;

inline constexpr CellId kNoCell = -1;
inline constexpr CornerId kNoCorner = -1;

// Scalar 2D cross product; positive for a counterclockwise turn.
inline double cross(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }

enum class BoundaryKind { Periodic, ZeroGradient };

const char* to_string(BoundaryKind kind);
BoundaryKind boundary_from_string(const std::string& s);

struct MeshInput {
  std::vector<Vec2> nodes;
  std::vector<std::vector<NodeId>> cells;
  BoundaryKind boundary = BoundaryKind::ZeroGradient;
  // Periodic meshes live on a torus; cells are unwrapped through this period.
  std::optional<Vec2> period;
  // Optional integer image shift (kx, ky) per cell vertex: the vertex sits at
  // node + (kx*Lx, ky*Ly) in the cell's frame. Without it each vertex snaps to
  // the image nearest the previous one, which is ambiguous when an edge spans
  // half the period.
  std::vector<std::vector<std::array<int, 2>>> images;
  // Lower-left corner of the fundamental domain of a periodic mesh.
  Vec2 origin = Vec2::Zero();
  // (ghost cell, donor cell): the ghost copies the donor state before every
  // right-hand-side evaluation and receives no update of its own.
  std::vector<std::pair<CellId, CellId>> ghosts;
  // Reverse clockwise cells instead of rejecting them.
  bool allow_reorient = false;
};

// Half of an edge, seen from one of its two nodes.
struct SubEdge {
  EdgeId edge;
  CornerId left;   // corner of the L cell at this node
  CornerId right;  // corner of the R cell at this node, kNoCorner on a boundary
  double length;   // |e|/2
  Vec2 normal;     // n_e, pointing from L to R
};

// One of the two subedges of a cell adjacent to a corner, oriented outward.
struct CornerSubEdge {
  double length;
  Vec2 normal;
};

// Index map for meshes generated on a rectangular lattice.
struct LatticeInfo {
  int nx = 0, ny = 0;
  int ghost = 0;  // width of the ghost ring around the physical lattice
  double dx = 0, dy = 0;
  Vec2 origin = Vec2::Zero();
  std::vector<CellId> cells;  // extended lattice, i fastest, -1 where absent
  std::vector<NodeId> nodes;  // extended node lattice (nx+2g+1)*(ny+2g+1)

  // i, j in [-ghost, n + ghost)
  CellId cell(int i, int j) const;
  // node at the upper right corner of cell (i, j)
  NodeId node(int i, int j) const;
};

class Mesh {
 public:
  std::size_t num_nodes() const { return nodes_.size(); }
  std::size_t num_cells() const { return cell_area_.size(); }
  std::size_t num_edges() const { return edge_nodes_.size(); }
  std::size_t num_corners() const { return corner_node_.size(); }

  // Counts restricted to the physical domain (ghost cells excluded).
  std::size_t num_physical_cells() const { return n_phys_cells_; }
  std::size_t num_physical_nodes() const { return n_phys_nodes_; }
  std::size_t num_physical_edges() const { return n_phys_edges_; }

  BoundaryKind boundary() const { return boundary_; }
  const std::optional<Vec2>& period() const { return period_; }
  const std::optional<LatticeInfo>& lattice() const { return lattice_; }

  const Vec2& node(NodeId n) const { return nodes_[n]; }
  const std::vector<Vec2>& nodes() const { return nodes_; }

  CornerId corner_begin(CellId c) const { return cell_offsets_[c]; }
  CornerId corner_end(CellId c) const { return cell_offsets_[c + 1]; }
  int cell_size(CellId c) const { return cell_offsets_[c + 1] - cell_offsets_[c]; }
  std::span<const NodeId> cell_nodes(CellId c) const {
    return {corner_node_.data() + cell_offsets_[c], static_cast<std::size_t>(cell_size(c))};
  }
  double cell_area(CellId c) const { return cell_area_[c]; }
  double cell_perimeter(CellId c) const { return cell_perimeter_[c]; }
  // Area centroid in the cell's own (unwrapped) frame.
  const Vec2& cell_centroid(CellId c) const { return cell_centroid_[c]; }
  // Centroid mapped into the fundamental domain (differs only on periodic meshes).
  Vec2 cell_center(CellId c) const { return wrap(cell_centroid_[c]); }
  bool is_ghost(CellId c) const { return ghost_donor_[c] != kNoCell; }
  CellId ghost_donor(CellId c) const { return ghost_donor_[c]; }
  const std::vector<std::pair<CellId, CellId>>& ghosts() const { return ghosts_; }

  NodeId corner_node(CornerId k) const { return corner_node_[k]; }
  CellId corner_cell(CornerId k) const { return corner_cell_[k]; }
  // Node position in the frame of the corner's cell.
  const Vec2& corner_pos(CornerId k) const { return corner_pos_[k]; }
  // Integer period shift of corner_pos relative to the stored node (periodic meshes).
  std::array<int, 2> corner_image(CornerId k) const;
  // Node normal l_nc n_nc.
  const Vec2& corner_normal(CornerId k) const { return corner_normal_[k]; }
  // Sum of |s| over the two subedges of the corner.
  double corner_weight(CornerId k) const { return corner_sub_[k][0].length + corner_sub_[k][1].length; }
  // [0]: subedge on the edge arriving at the node, [1]: on the edge leaving it.
  const std::array<CornerSubEdge, 2>& corner_subedges(CornerId k) const { return corner_sub_[k]; }
  const std::array<EdgeId, 2>& corner_edges(CornerId k) const { return corner_edge_[k]; }

  const std::array<NodeId, 2>& edge_nodes(EdgeId e) const { return edge_nodes_[e]; }
  const std::array<CellId, 2>& edge_cells(EdgeId e) const { return edge_cells_[e]; }
  const Vec2& edge_normal(EdgeId e) const { return edge_normal_[e]; }
  double edge_length(EdgeId e) const { return edge_length_[e]; }
  bool is_boundary_edge(EdgeId e) const { return edge_cells_[e][1] == kNoCell; }
  // Corners {L at a, L at b, R at a, R at b} for edge_nodes = {a, b}.
  const std::array<CornerId, 4>& edge_corners(EdgeId e) const { return edge_corners_[e]; }
  bool is_physical_edge(EdgeId e) const;

  // Corners around a node, counterclockwise; their cells form C(n).
  std::span<const CornerId> node_corners(NodeId n) const {
    return {node_corner_.data() + node_corner_offsets_[n],
            static_cast<std::size_t>(node_corner_offsets_[n + 1] - node_corner_offsets_[n])};
  }
  std::vector<CellId> node_cells(NodeId n) const;
  std::span<const SubEdge> node_subedges(NodeId n) const {
    return {node_sub_.data() + node_sub_offsets_[n],
            static_cast<std::size_t>(node_sub_offsets_[n + 1] - node_sub_offsets_[n])};
  }
  std::vector<EdgeId> node_edges(NodeId n) const;
  double dual_area(NodeId n) const { return dual_area_[n]; }
  // True when every edge at the node has a cell on both sides.
  bool node_complete(NodeId n) const { return node_complete_[n] != 0; }
  // True when the node belongs to at least one physical cell.
  bool node_physical(NodeId n) const { return node_physical_[n] != 0; }

  int max_cell_size() const;
  double domain_area() const;
  // Smallest 4|c|/|dc| over physical cells (twice the inradius proxy).
  double min_length_scale() const;
  Vec2 wrap(const Vec2& x) const;

  // Copy in which every interior edge has its normal reversed (L and R swapped).
  Mesh flipped_edge_orientation() const;

  const MeshInput& input() const { return input_; }

 private:
  friend Mesh build_mesh(MeshInput input);
  friend Mesh attach_lattice(Mesh mesh, LatticeInfo info);
  void rebuild_node_subedges();

  MeshInput input_;
  BoundaryKind boundary_ = BoundaryKind::ZeroGradient;
  std::optional<Vec2> period_;
  std::optional<LatticeInfo> lattice_;
  std::vector<Vec2> nodes_;

  std::vector<CornerId> cell_offsets_;
  std::vector<double> cell_area_, cell_perimeter_;
  std::vector<Vec2> cell_centroid_;
  std::vector<CellId> ghost_donor_;
  std::vector<std::pair<CellId, CellId>> ghosts_;

  std::vector<NodeId> corner_node_;
  std::vector<CellId> corner_cell_;
  std::vector<Vec2> corner_pos_, corner_normal_;
  std::vector<std::array<CornerSubEdge, 2>> corner_sub_;
  std::vector<std::array<EdgeId, 2>> corner_edge_;

  std::vector<std::array<NodeId, 2>> edge_nodes_;
  std::vector<std::array<CellId, 2>> edge_cells_;
  std::vector<Vec2> edge_normal_;
  std::vector<double> edge_length_;
  std::vector<std::array<CornerId, 4>> edge_corners_;

  std::vector<int> node_corner_offsets_;
  std::vector<CornerId> node_corner_;
  std::vector<int> node_sub_offsets_;
  std::vector<SubEdge> node_sub_;
  std::vector<double> dual_area_;
  std::vector<char> node_complete_, node_physical_;

  std::size_t n_phys_cells_ = 0, n_phys_nodes_ = 0, n_phys_edges_ = 0;
};

Mesh build_mesh(MeshInput input);
Mesh attach_lattice(Mesh mesh, LatticeInfo info);

}  // namespace vfv
