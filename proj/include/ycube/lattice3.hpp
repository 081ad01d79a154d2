#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "ycube/hyptess.hpp"

namespace ycube {

using Edge3Id = std::uint32_t;
using PrismId = std::uint32_t;

enum class Edge3Kind { in_plane, vertical };

struct Site {
  VertexId vertex = 0;
  int layer = 0;
  friend bool operator==(const Site&, const Site&) = default;
};

struct Edge3 {
  Edge3Kind kind = Edge3Kind::in_plane;
  Site a;
  Site b;
};

struct Prism {
  FaceId face = 0;
  int interval = 0;  // between layers interval and interval + 1 (mod layers)
};

/// Tessellation times a periodic circle of `layers` layers.
///
/// Edge ids: in-plane edge e at layer l is l*E + e; the vertical edge from (v, l) to (v, l+1) is
/// E*layers + l*V + v. Prism (f, l) has id l*F + f.
class Lattice3D {
 public:
  static Lattice3D stack(Tessellation base, int layers);

  const Tessellation& base() const { return base_; }
  int layers() const { return layers_; }

  std::size_t num_edges() const { return edges_.size(); }
  std::size_t num_in_plane() const { return base_.num_edges() * static_cast<std::size_t>(layers_); }
  std::size_t num_prisms() const { return prisms_.size(); }

  const Edge3& edge(Edge3Id e) const { return edges_.at(e); }
  const std::vector<Edge3>& edges() const { return edges_; }
  const Prism& prism(PrismId p) const { return prisms_.at(p); }
  const std::vector<Prism>& prisms() const { return prisms_; }

  int wrap(int layer) const { return ((layer % layers_) + layers_) % layers_; }
  Edge3Id in_plane(EdgeId e, int layer) const;
  Edge3Id vertical(VertexId v, int layer) const;
  PrismId prism_id(FaceId f, int interval) const;
  bool is_vertical(Edge3Id e) const { return e >= num_in_plane(); }
  /// Base edge of an in-plane edge3, or base vertex of a vertical one.
  std::uint32_t base_index(Edge3Id e) const;
  int layer_of(Edge3Id e) const;

  const std::vector<PrismId>& incident_prisms(Edge3Id e) const;
  const std::vector<Edge3Id>& incident_edges(PrismId p) const;

 private:
  Tessellation base_;
  int layers_ = 0;
  std::vector<Edge3> edges_;
  std::vector<Prism> prisms_;
  std::vector<std::vector<Edge3Id>> prism_edges_;
  std::vector<std::vector<PrismId>> edge_prisms_;
};

}  // namespace ycube
