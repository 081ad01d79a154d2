#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "ycube/hyptess.hpp"
#include "ycube/lattice3.hpp"
#include "ycube/paulis.hpp"
#include "ycube/ycode.hpp"

namespace ycube {

enum class Side { top, bottom };

/// Vertical edges hanging off one side of a layer: top uses the gap (layer, layer+1), bottom (layer-1, layer).
struct LayerInterface {
  int layer = 0;
  Side side = Side::top;
};

int vertical_gap(const Lattice3D& l, LayerInterface iface);

/// A constructor whose verified syndrome differs from its contract.
class ConstructionError : public std::runtime_error {
 public:
  ConstructionError(const std::string& what, std::vector<TermId> residual)
      : std::runtime_error(what), residual_(std::move(residual)) {}
  const std::vector<TermId>& residual() const { return residual_; }

 private:
  std::vector<TermId> residual_;
};

/// X on the vertical edge above every vertex of the ray. A zero-length ray is a single vertical X.
PauliString x_truncated_geodesic(const Lattice3D& l, const Path& ray, int layer);

/// Ray starting at `from` and leaving directly away from its neighbour `away_from`; its truncated
/// geodesic excites the two prisms sharing the edge between them.
Path dipole_ray(const Tessellation& t, VertexId from, VertexId away_from);

PauliString x_stacked_truncated_geodesics(const Lattice3D& l, const std::vector<Path>& rays, int layer);

struct GeodesicStack {
  std::vector<Path> rays;
  PauliString op;
};

/// Chains truncated geodesics along a shortest dual path from `target` to the patch boundary so that each
/// ray cancels one fracton of the previous pair. Throws ConstructionError unless exactly one prism remains.
GeodesicStack single_fracton_geodesic_stack(const StabilizerCode& code, FaceId target, int layer);

/// T_X: X on the vertical edge at every tree vertex. Rejects trees with a leaf inside the patch.
PauliString x_fractal_tree_logical(const Lattice3D& l, const FractalTree& tree, LayerInterface iface);

/// Tree logical with the subtree rooted at prune_vertex (inclusive) removed.
PauliString x_pruned_tree(const Lattice3D& l, const FractalTree& tree, VertexId prune_vertex, LayerInterface iface);

struct PruneSite {
  VertexId root = 0;
  int parity = 0;
  VertexId prune = 0;
};

/// Tree rooted at `from` containing the edge to `to`, pruned at `to`: a fracton dipole across that edge.
PruneSite dipole_prune_site(const Tessellation& t, VertexId from, VertexId to);

PauliString x_pruned_tree_series(const Lattice3D& l, const std::vector<PruneSite>& sites, LayerInterface iface);

struct PrunedSeries {
  std::vector<PruneSite> sites;
  PauliString op;
};

/// Pruned-tree analogue of single_fracton_geodesic_stack for q >= 6.
PrunedSeries single_fracton_pruned_series(const StabilizerCode& code, FaceId target, LayerInterface iface);

/// X on the vertical edges of all region vertices. Odd p is rejected.
PauliString x_wedge_membrane(const Lattice3D& l, const Region& region, LayerInterface iface);

/// Membrane over the faces common to both regions.
PauliString x_wedge_intersection(const Lattice3D& l, const Region& a, const Region& b, LayerInterface iface);

struct WedgeSpec {
  VertexId root = 0;
  int parity = 0;
  int first_slot = 0;
};

Region wedge_from_spec(const Tessellation& t, const WedgeSpec& spec);

struct WedgeCorner {
  WedgeSpec a;
  WedgeSpec b;
  PauliString op;
  std::vector<TermId> syndrome;
};

/// Searches wedge pairs rooted near the patch center for an intersection membrane exciting exactly one
/// prism. Throws ConstructionError when the patch is too small.
WedgeCorner find_wedge_corner(const StabilizerCode& code, LayerInterface iface, int root_radius = 2);

enum class ZStringKind { vertical, geodesic, tree_path };

/// vertical: Z on `count` stacked vertical edges above path.vertices.front() starting at `layer`.
/// geodesic / tree_path: Z on the in-plane path edges at `layer`, checked against the kind's turning rule.
PauliString z_string(const Lattice3D& l, ZStringKind kind, const Path& path, int layer, int count = 1);

/// Operators of the flat (3,6) model. Vertex coordinates (i, j) refer to build_periodic_flat's id i + L*j.
namespace flat36 {

PauliString z_hexagon(const Lattice3D& l, VertexId center, int layer);
PauliString z_triangle(const Lattice3D& l, FaceId face, int layer);

/// Z on the rhombus v, a, v', b where a and b sit at slots `slot` and `slot + 1` of v; moves a charge v -> v'.
PauliString charge_move_inplane(const Lattice3D& l, VertexId v, int slot, int layer);
VertexId charge_move_target(const Tessellation& t, VertexId v, int slot);
PauliString charge_move_vertical(const Lattice3D& l, VertexId v, int layer);

/// Stack over layers [layer_begin, layer_end] of X on the rungs crossing the strip between rows j and j+1
/// for columns [i_begin, i_end), skipping rungs with an endpoint of color `omit_color`.
PauliString x_flux_membrane(const Lattice3D& l, int j, int i_begin, int i_end, int layer_begin, int layer_end,
                            int omit_color);

/// Single in-plane X: moves an X-type planeon across the edge.
PauliString x_planeon_move(const Lattice3D& l, EdgeId edge, int layer);

}  // namespace flat36

}  // namespace ycube
