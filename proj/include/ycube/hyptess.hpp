#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ycube {

using VertexId = std::uint32_t;
using EdgeId = std::uint32_t;
using FaceId = std::uint32_t;

inline constexpr std::uint32_t kNoId = std::numeric_limits<std::uint32_t>::max();

enum class Geometry { hyperbolic, flat };

/// Schläfli pair (p, q): p-gons, q of them meeting at every vertex. q must be even.
struct SchlafliPair {
  int p = 0;
  int q = 0;

  /// Throws std::invalid_argument for odd q, q < 4, p < 3 or spherical pairs.
  Geometry classify() const;
  friend bool operator==(const SchlafliPair&, const SchlafliPair&) = default;
};

/// Position of an incident edge in the counterclockwise order around a vertex.
struct VertexSlot {
  VertexId vertex = 0;
  int slot = 0;
};

struct TessVertex {
  double x = 0.0;  // Poincaré disk coordinates (Euclidean layout for flat lattices)
  double y = 0.0;
  bool interior = false;
};

struct TessEdge {
  VertexId a = 0;
  VertexId b = 0;
};

/// Counterclockwise boundary; edges[i] joins vertices[i] and vertices[i + 1].
struct TessFace {
  std::vector<VertexId> vertices;
  std::vector<EdgeId> edges;
  int generation = 0;
};

class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Combinatorial map of a {p,q} patch or torus with a rotation system at every vertex.
/// Immutable once assembled.
class Tessellation {
 public:
  /// Derives the rotation system and incidence tables from counterclockwise faces.
  /// A vertex is interior iff the faces around it close into a full cycle (which must have length q).
  static Tessellation assemble(SchlafliPair pq, std::vector<TessVertex> vertices, std::vector<TessEdge> edges,
                               std::vector<TessFace> faces, bool periodic, int side_length, int generations);

  SchlafliPair schlafli() const { return pq_; }
  int p() const { return pq_.p; }
  int q() const { return pq_.q; }
  bool periodic() const { return periodic_; }
  int side_length() const { return side_length_; }
  int generations() const { return generations_; }

  std::size_t num_vertices() const { return vertices_.size(); }
  std::size_t num_edges() const { return edges_.size(); }
  std::size_t num_faces() const { return faces_.size(); }

  const std::vector<TessVertex>& vertices() const { return vertices_; }
  const std::vector<TessEdge>& edges() const { return edges_; }
  const std::vector<TessFace>& faces() const { return faces_; }
  const TessVertex& vertex(VertexId v) const { return vertices_.at(v); }
  const TessEdge& edge(EdgeId e) const { return edges_.at(e); }
  const TessFace& face(FaceId f) const { return faces_.at(f); }

  bool interior(VertexId v) const { return vertices_[v].interior; }
  /// True when every vertex of the face is interior.
  bool face_interior(FaceId f) const { return face_interior_[f]; }

  /// Incident edges in counterclockwise order. Interior vertices list all q edges starting from
  /// the smallest edge id; boundary vertices list their partial fan from one boundary edge to the other.
  const std::vector<EdgeId>& rotation(VertexId v) const { return rotation_.at(v); }
  std::size_t degree(VertexId v) const { return rotation_.at(v).size(); }

  EdgeId edge_at(VertexSlot s) const;
  int slot_of(EdgeId e, VertexId v) const;
  VertexId other_end(EdgeId e, VertexId v) const;
  std::optional<EdgeId> edge_between(VertexId u, VertexId v) const;

  /// Face occupying the wedge between slots s and s+1 at v; kNoId if that wedge is outside the patch.
  FaceId face_in_wedge(VertexId v, int slot) const;

  const std::vector<FaceId>& faces_at(VertexId v) const { return vertex_faces_.at(v); }
  const std::vector<FaceId>& faces_of_edge(EdgeId e) const { return edge_faces_.at(e); }

  std::vector<VertexId> interior_vertices() const;
  std::vector<VertexId> boundary_vertices() const;
  std::vector<FaceId> interior_faces() const;

  /// Interior vertex closest to the disk origin.
  VertexId center_vertex() const;

 private:
  SchlafliPair pq_;
  bool periodic_ = false;
  int side_length_ = 0;
  int generations_ = 0;
  std::vector<TessVertex> vertices_;
  std::vector<TessEdge> edges_;
  std::vector<TessFace> faces_;
  std::vector<std::vector<EdgeId>> rotation_;
  std::vector<std::vector<FaceId>> wedge_face_;
  std::vector<std::array<int, 2>> edge_slot_;
  std::vector<std::vector<FaceId>> vertex_faces_;
  std::vector<std::vector<FaceId>> edge_faces_;
  std::vector<bool> face_interior_;
};

/// Vertex cap for patch growth: YCUBE_VERTEX_BUDGET, default 20000.
std::size_t default_vertex_budget();

/// Face-centered patch: generation 0 is one p-gon, generation n adds every face sharing a vertex with
/// generation n-1. Faces are glued by exact rotation-system closure; coordinates are for rendering.
Tessellation build_patch(SchlafliPair pq, int generations, std::size_t vertex_budget = default_vertex_budget());

/// Torus quotient of the square (4,4) or triangular (3,6) lattice with L x L vertices.
Tessellation build_periodic_flat(SchlafliPair pq, int side_length);

/// Alternating vertex/edge path.
struct Path {
  std::vector<VertexId> vertices;
  std::vector<EdgeId> edges;
  bool closed = false;  // returned to the start along the start edge (tori)
};

/// Straight continuation (exit slot = entry slot + q/2) from start until a boundary vertex, a closed
/// cycle, or max_steps edges. Only defined for q = 4.
Path geodesic_ray(const Tessellation& t, VertexSlot start, int max_steps = std::numeric_limits<int>::max());

/// Full geodesic through v along slot and slot + 2.
Path geodesic_through(const Tessellation& t, VertexSlot through);

struct FractalTree {
  VertexId root = 0;
  int parity = 0;
  std::vector<VertexId> vertices;  // breadth-first order, root first
  std::vector<EdgeId> edges;       // every rule-selected edge, sorted
  std::vector<EdgeId> parent_edge; // per tessellation vertex; kNoId for the root and non-members
  std::vector<int> depth;          // per tessellation vertex; -1 for non-members

  bool contains(VertexId v) const { return v < depth.size() && depth[v] >= 0; }
  /// Subtree rooted at v (v included), breadth-first.
  std::vector<VertexId> descendants(VertexId v, const Tessellation& t) const;
  /// Tree vertices with no tree edge leading further out.
  std::vector<VertexId> leaves(const Tessellation& t) const;
};

/// Bruhat-Tits style tree: the q/2 slots of the given parity at the root, then at every reached interior
/// vertex the alternating slot class containing the incoming edge. Stops at boundary vertices and max_depth.
FractalTree fractal_tree(const Tessellation& t, VertexId root, int parity, int max_depth = std::numeric_limits<int>::max());

enum class Turn { left, right };

/// Root-to-boundary tree branch leaving the root through first_slot; at every later vertex it leaves through
/// entry slot - 2 (Turn::left) or entry slot + 2 (Turn::right). These are the outermost branches of the tree.
Path tree_branch(const Tessellation& t, const FractalTree& tree, int first_slot, Turn turn);

struct Region {
  std::vector<FaceId> faces;      // sorted
  std::vector<VertexId> vertices; // sorted
};

/// Faces swept counterclockwise from branch_b to branch_a around the root, bounded by both branches and
/// the patch boundary. Throws if a branch does not end on the boundary or the branches fail to separate.
Region wedge_region(const Tessellation& t, const FractalTree& tree, const Path& branch_a, const Path& branch_b);

/// The two outermost branches bounding the wedge whose outside is the two-face gap between slots
/// first_slot and first_slot + 2 at the root.
std::pair<Path, Path> wedge_branches(const Tessellation& t, const FractalTree& tree, int first_slot);

/// Proper 3-coloring of a (3,6) lattice (color of vertex 0 is 0). Throws if no consistent coloring exists.
std::vector<int> triangular_coloring(const Tessellation& t);

/// Honeycomb obtained by deleting the vertices of color `flavor`; each vertex lies in exactly two flavors.
std::vector<VertexId> hexagonal_sublattice(const Tessellation& t, int flavor);

}  // namespace ycube
