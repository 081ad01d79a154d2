#include "ycube/lattice3.hpp"

#include <stdexcept>
#include <string>

namespace ycube {

Lattice3D Lattice3D::stack(Tessellation base, int layers) {
  if (layers < 3) throw std::invalid_argument("layers must be at least 3");
  Lattice3D l;
  l.base_ = std::move(base);
  l.layers_ = layers;
  const auto& t = l.base_;
  const auto E = t.num_edges();
  const auto V = t.num_vertices();
  const auto F = t.num_faces();

  l.edges_.reserve((E + V) * layers);
  for (int layer = 0; layer < layers; ++layer) {
    for (EdgeId e = 0; e < E; ++e) {
      const auto& be = t.edge(e);
      l.edges_.push_back({Edge3Kind::in_plane, {be.a, layer}, {be.b, layer}});
    }
  }
  for (int layer = 0; layer < layers; ++layer) {
    for (VertexId v = 0; v < V; ++v) {
      l.edges_.push_back({Edge3Kind::vertical, {v, layer}, {v, (layer + 1) % layers}});
    }
  }

  l.edge_prisms_.assign(l.edges_.size(), {});
  for (int interval = 0; interval < layers; ++interval) {
    for (FaceId f = 0; f < F; ++f) {
      const PrismId id = static_cast<PrismId>(l.prisms_.size());
      l.prisms_.push_back({f, interval});
      std::vector<Edge3Id> support;
      const auto& face = t.face(f);
      for (auto e : face.edges) support.push_back(l.in_plane(e, interval));
      for (auto e : face.edges) support.push_back(l.in_plane(e, interval + 1));
      for (auto v : face.vertices) support.push_back(l.vertical(v, interval));
      for (auto e : support) l.edge_prisms_[e].push_back(id);
      l.prism_edges_.push_back(std::move(support));
    }
  }
  return l;
}

Edge3Id Lattice3D::in_plane(EdgeId e, int layer) const {
  if (e >= base_.num_edges()) throw std::out_of_range("base edge " + std::to_string(e) + " out of range");
  return static_cast<Edge3Id>(static_cast<std::size_t>(wrap(layer)) * base_.num_edges() + e);
}

Edge3Id Lattice3D::vertical(VertexId v, int layer) const {
  if (v >= base_.num_vertices()) throw std::out_of_range("base vertex " + std::to_string(v) + " out of range");
  return static_cast<Edge3Id>(num_in_plane() + static_cast<std::size_t>(wrap(layer)) * base_.num_vertices() + v);
}

PrismId Lattice3D::prism_id(FaceId f, int interval) const {
  if (f >= base_.num_faces()) throw std::out_of_range("base face " + std::to_string(f) + " out of range");
  return static_cast<PrismId>(static_cast<std::size_t>(wrap(interval)) * base_.num_faces() + f);
}

std::uint32_t Lattice3D::base_index(Edge3Id e) const {
  if (e >= edges_.size()) throw std::out_of_range("edge3 " + std::to_string(e) + " out of range");
  if (is_vertical(e)) return static_cast<std::uint32_t>((e - num_in_plane()) % base_.num_vertices());
  return static_cast<std::uint32_t>(e % base_.num_edges());
}

int Lattice3D::layer_of(Edge3Id e) const {
  if (e >= edges_.size()) throw std::out_of_range("edge3 " + std::to_string(e) + " out of range");
  if (is_vertical(e)) return static_cast<int>((e - num_in_plane()) / base_.num_vertices());
  return static_cast<int>(e / base_.num_edges());
}

const std::vector<PrismId>& Lattice3D::incident_prisms(Edge3Id e) const {
  if (e >= edge_prisms_.size()) throw std::out_of_range("edge3 " + std::to_string(e) + " out of range");
  return edge_prisms_[e];
}

const std::vector<Edge3Id>& Lattice3D::incident_edges(PrismId p) const {
  if (p >= prism_edges_.size()) throw std::out_of_range("prism " + std::to_string(p) + " out of range");
  return prism_edges_[p];
}

}  // namespace ycube
