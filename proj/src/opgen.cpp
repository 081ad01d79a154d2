#include "ycube/opgen.hpp"

#include <algorithm>
#include <deque>
#include <unordered_set>

namespace ycube {

namespace {

PauliString vertical_x(const Lattice3D& l, const std::vector<VertexId>& vertices, int gap) {
  std::vector<Edge3Id> edges;
  edges.reserve(vertices.size());
  for (auto v : vertices) edges.push_back(l.vertical(v, gap));
  return PauliString::X(l.num_edges(), edges);
}

void require_boundary_leaves(const Tessellation& t, const FractalTree& tree, const std::vector<bool>& removed) {
  std::vector<bool> has_child(t.num_vertices(), false);
  for (auto u : tree.vertices) {
    if (removed[u] || tree.parent_edge[u] == kNoId) continue;
    has_child[t.other_end(tree.parent_edge[u], u)] = true;
  }
  for (auto u : tree.vertices) {
    if (!removed[u] && !has_child[u] && t.interior(u)) {
      throw std::invalid_argument("tree has a leaf inside the patch at vertex " + std::to_string(u));
    }
  }
}

/// Edges crossed by a shortest dual path from target to a face that carries no prism term.
std::vector<EdgeId> dual_path_to_boundary(const Tessellation& t, FaceId target) {
  if (target >= t.num_faces() || !t.face_interior(target)) throw std::invalid_argument("target face must be interior");
  std::vector<std::pair<FaceId, EdgeId>> from(t.num_faces(), {kNoId, kNoId});
  std::vector<bool> seen(t.num_faces(), false);
  std::deque<FaceId> queue{target};
  seen[target] = true;
  while (!queue.empty()) {
    const FaceId f = queue.front();
    queue.pop_front();
    if (!t.face_interior(f)) {
      std::vector<EdgeId> crossed;
      for (FaceId g = f; g != target; g = from[g].first) crossed.push_back(from[g].second);
      std::reverse(crossed.begin(), crossed.end());
      return crossed;
    }
    for (auto e : t.face(f).edges) {
      for (auto g : t.faces_of_edge(e)) {
        if (seen[g]) continue;
        seen[g] = true;
        from[g] = {f, e};
        queue.push_back(g);
      }
    }
  }
  throw std::invalid_argument("no boundary face reachable (periodic lattice?)");
}

void require_flat36(const Lattice3D& l) {
  if (l.base().p() != 3 || l.base().q() != 6) throw std::invalid_argument("operator needs a (3,6) lattice");
}

}  // namespace

int vertical_gap(const Lattice3D& l, LayerInterface iface) {
  return l.wrap(iface.side == Side::top ? iface.layer : iface.layer - 1);
}

PauliString x_truncated_geodesic(const Lattice3D& l, const Path& ray, int layer) {
  const auto& t = l.base();
  if (t.q() != 4) throw std::invalid_argument("truncated geodesics need q = 4");
  if (ray.vertices.empty()) throw std::invalid_argument("empty ray");
  if (!ray.edges.empty() && t.interior(ray.vertices.back())) {
    throw std::invalid_argument("ray does not end on the patch boundary");
  }
  return vertical_x(l, ray.vertices, layer);
}

Path dipole_ray(const Tessellation& t, VertexId from, VertexId away_from) {
  const auto e = t.edge_between(from, away_from);
  if (!e) throw std::invalid_argument("dipole_ray: vertices are not adjacent");
  return geodesic_ray(t, {from, t.slot_of(*e, from) + t.q() / 2});
}

PauliString x_stacked_truncated_geodesics(const Lattice3D& l, const std::vector<Path>& rays, int layer) {
  PauliString op(l.num_edges());
  for (const auto& ray : rays) op *= x_truncated_geodesic(l, ray, layer);
  return op;
}

GeodesicStack single_fracton_geodesic_stack(const StabilizerCode& code, FaceId target, int layer) {
  const auto& l = code.lattice();
  const auto& t = l.base();
  if (t.q() != 4) throw std::invalid_argument("geodesic stacks need q = 4");
  GeodesicStack out{{}, PauliString(l.num_edges())};
  for (auto e : dual_path_to_boundary(t, target)) {
    const auto& ed = t.edge(e);
    Path ra = dipole_ray(t, ed.a, ed.b);
    Path rb = dipole_ray(t, ed.b, ed.a);
    out.rays.push_back(ra.edges.size() <= rb.edges.size() ? std::move(ra) : std::move(rb));
  }
  out.op = x_stacked_truncated_geodesics(l, out.rays, layer);
  auto s = syndrome(code, out.op);
  if (s.size() != 1 || code.term(s[0]).anchor != target) {
    throw ConstructionError("geodesic stack leaves " + std::to_string(s.size()) + " excitations", std::move(s));
  }
  return out;
}

PauliString x_fractal_tree_logical(const Lattice3D& l, const FractalTree& tree, LayerInterface iface) {
  require_boundary_leaves(l.base(), tree, std::vector<bool>(l.base().num_vertices(), false));
  return vertical_x(l, tree.vertices, vertical_gap(l, iface));
}

PauliString x_pruned_tree(const Lattice3D& l, const FractalTree& tree, VertexId prune_vertex, LayerInterface iface) {
  const auto& t = l.base();
  if (prune_vertex == tree.root) throw std::invalid_argument("pruning at the root leaves nothing");
  std::vector<bool> removed(t.num_vertices(), false);
  for (auto v : tree.descendants(prune_vertex, t)) removed[v] = true;
  require_boundary_leaves(t, tree, removed);
  std::vector<VertexId> kept;
  for (auto v : tree.vertices) {
    if (!removed[v]) kept.push_back(v);
  }
  return vertical_x(l, kept, vertical_gap(l, iface));
}

PruneSite dipole_prune_site(const Tessellation& t, VertexId from, VertexId to) {
  const auto e = t.edge_between(from, to);
  if (!e) throw std::invalid_argument("dipole_prune_site: vertices are not adjacent");
  return {from, t.slot_of(*e, from) % 2, to};
}

PauliString x_pruned_tree_series(const Lattice3D& l, const std::vector<PruneSite>& sites, LayerInterface iface) {
  PauliString op(l.num_edges());
  for (const auto& s : sites) op *= x_pruned_tree(l, fractal_tree(l.base(), s.root, s.parity), s.prune, iface);
  return op;
}

PrunedSeries single_fracton_pruned_series(const StabilizerCode& code, FaceId target, LayerInterface iface) {
  const auto& l = code.lattice();
  const auto& t = l.base();
  if (t.q() < 6) throw std::invalid_argument("pruned-tree series need q >= 6");
  PrunedSeries out{{}, PauliString(l.num_edges())};
  for (auto e : dual_path_to_boundary(t, target)) {
    const auto& ed = t.edge(e);
    out.sites.push_back(dipole_prune_site(t, ed.a, ed.b));
  }
  out.op = x_pruned_tree_series(l, out.sites, iface);
  auto s = syndrome(code, out.op);
  if (s.size() != 1 || code.term(s[0]).anchor != target) {
    throw ConstructionError("pruned-tree series leaves " + std::to_string(s.size()) + " excitations", std::move(s));
  }
  return out;
}

PauliString x_wedge_membrane(const Lattice3D& l, const Region& region, LayerInterface iface) {
  if (l.base().p() % 2 != 0) throw std::invalid_argument("membranes need even p");
  return vertical_x(l, region.vertices, vertical_gap(l, iface));
}

PauliString x_wedge_intersection(const Lattice3D& l, const Region& a, const Region& b, LayerInterface iface) {
  const auto& t = l.base();
  if (t.p() % 2 != 0) throw std::invalid_argument("membranes need even p");
  std::vector<FaceId> common;
  std::set_intersection(a.faces.begin(), a.faces.end(), b.faces.begin(), b.faces.end(), std::back_inserter(common));
  std::vector<bool> in(t.num_vertices(), false);
  for (auto f : common) {
    for (auto v : t.face(f).vertices) in[v] = true;
  }
  std::vector<VertexId> vertices;
  for (VertexId v = 0; v < t.num_vertices(); ++v) {
    if (in[v]) vertices.push_back(v);
  }
  return vertical_x(l, vertices, vertical_gap(l, iface));
}

Region wedge_from_spec(const Tessellation& t, const WedgeSpec& spec) {
  const auto tree = fractal_tree(t, spec.root, spec.parity);
  const auto [a, b] = wedge_branches(t, tree, spec.first_slot);
  return wedge_region(t, tree, a, b);
}

WedgeCorner find_wedge_corner(const StabilizerCode& code, LayerInterface iface, int root_radius) {
  const auto& l = code.lattice();
  const auto& t = l.base();
  if (t.p() % 2 != 0) throw std::invalid_argument("membranes need even p");

  // roots in breadth-first order from the center
  std::vector<int> dist(t.num_vertices(), -1);
  std::vector<VertexId> roots;
  std::deque<VertexId> queue{t.center_vertex()};
  dist[queue.front()] = 0;
  while (!queue.empty()) {
    const VertexId v = queue.front();
    queue.pop_front();
    if (t.interior(v)) roots.push_back(v);
    if (dist[v] == root_radius) continue;
    for (auto e : t.rotation(v)) {
      const VertexId w = t.other_end(e, v);
      if (dist[w] < 0) {
        dist[w] = dist[v] + 1;
        queue.push_back(w);
      }
    }
  }

  std::vector<std::pair<WedgeSpec, Region>> wedges;
  for (auto root : roots) {
    for (int parity = 0; parity < 2; ++parity) {
      for (int slot = parity; slot < t.q(); slot += 2) {
        WedgeSpec spec{root, parity, slot};
        try {
          wedges.emplace_back(spec, wedge_from_spec(t, spec));
        } catch (const std::invalid_argument&) {
          // branch hits a pinched boundary or fails to separate; skip
        }
      }
    }
  }
  std::vector<TermId> best;
  for (std::size_t i = 0; i < wedges.size(); ++i) {
    for (std::size_t j = i + 1; j < wedges.size(); ++j) {
      auto op = x_wedge_intersection(l, wedges[i].second, wedges[j].second, iface);
      auto s = syndrome(code, op);
      if (s.size() == 1) return {wedges[i].first, wedges[j].first, std::move(op), std::move(s)};
      if (best.empty() || (!s.empty() && s.size() < best.size())) best = std::move(s);
    }
  }
  throw ConstructionError("no wedge pair with a single-fracton corner", std::move(best));
}

PauliString z_string(const Lattice3D& l, ZStringKind kind, const Path& path, int layer, int count) {
  const auto& t = l.base();
  if (path.vertices.empty()) throw std::invalid_argument("empty path");
  if (kind == ZStringKind::vertical) {
    if (count < 1) throw std::invalid_argument("vertical string needs at least one edge");
    std::vector<Edge3Id> edges;
    for (int k = 0; k < count; ++k) edges.push_back(l.vertical(path.vertices.front(), layer + k));
    return PauliString::Z(l.num_edges(), edges);
  }
  if (path.vertices.size() != path.edges.size() + 1) throw std::invalid_argument("path is not edge-connected");
  for (std::size_t i = 0; i < path.edges.size(); ++i) {
    const auto& ed = t.edge(path.edges[i]);
    const VertexId u = path.vertices[i];
    const VertexId w = path.vertices[i + 1];
    if (!((ed.a == u && ed.b == w) || (ed.a == w && ed.b == u))) throw std::invalid_argument("path is not edge-connected");
  }
  if (kind == ZStringKind::geodesic && t.q() != 4) throw std::invalid_argument("geodesic strings need q = 4");
  for (std::size_t i = 1; i < path.edges.size(); ++i) {
    const VertexId w = path.vertices[i];
    const int in = t.slot_of(path.edges[i - 1], w);
    const int out = t.slot_of(path.edges[i], w);
    const bool ok = kind == ZStringKind::geodesic ? (out - in + t.q()) % t.q() == t.q() / 2 : (out - in) % 2 == 0;
    if (!ok) {
      throw std::invalid_argument(std::string(kind == ZStringKind::geodesic ? "path bends" : "path leaves the fractal tree") +
                                  " at vertex " + std::to_string(w));
    }
  }
  std::vector<Edge3Id> edges;
  for (auto e : path.edges) edges.push_back(l.in_plane(e, layer));
  return PauliString::Z(l.num_edges(), edges);
}

namespace flat36 {

PauliString z_hexagon(const Lattice3D& l, VertexId center, int layer) {
  require_flat36(l);
  return link_cycle_z(l, center, layer);
}

PauliString z_triangle(const Lattice3D& l, FaceId face, int layer) {
  require_flat36(l);
  std::vector<Edge3Id> edges;
  for (auto e : l.base().face(face).edges) edges.push_back(l.in_plane(e, layer));
  return PauliString::Z(l.num_edges(), edges);
}

namespace {

struct Rhombus {
  std::array<EdgeId, 4> edges;
  VertexId target;
};

Rhombus rhombus(const Tessellation& t, VertexId v, int slot) {
  const FaceId near = t.face_in_wedge(v, slot);
  if (near == kNoId) throw std::invalid_argument("charge move leaves the patch");
  const EdgeId va = t.edge_at({v, slot});
  const EdgeId vb = t.edge_at({v, slot + 1});
  EdgeId ab = kNoId;
  for (auto e : t.face(near).edges) {
    if (e != va && e != vb) ab = e;
  }
  FaceId far = kNoId;
  for (auto g : t.faces_of_edge(ab)) {
    if (g != near) far = g;
  }
  if (far == kNoId) throw std::invalid_argument("charge move leaves the patch");
  Rhombus r{{va, vb, kNoId, kNoId}, kNoId};
  std::size_t k = 2;
  for (auto e : t.face(far).edges) {
    if (e != ab) r.edges[k++] = e;
  }
  const auto& ed = t.edge(ab);
  for (auto w : t.face(far).vertices) {
    if (w != ed.a && w != ed.b) r.target = w;
  }
  return r;
}

}  // namespace

PauliString charge_move_inplane(const Lattice3D& l, VertexId v, int slot, int layer) {
  require_flat36(l);
  std::vector<Edge3Id> edges;
  for (auto e : rhombus(l.base(), v, slot).edges) edges.push_back(l.in_plane(e, layer));
  return PauliString::Z(l.num_edges(), edges);
}

VertexId charge_move_target(const Tessellation& t, VertexId v, int slot) { return rhombus(t, v, slot).target; }

PauliString charge_move_vertical(const Lattice3D& l, VertexId v, int layer) {
  require_flat36(l);
  const std::vector<Edge3Id> edges{l.vertical(v, layer)};
  return PauliString::Z(l.num_edges(), edges);
}

PauliString x_flux_membrane(const Lattice3D& l, int j, int i_begin, int i_end, int layer_begin, int layer_end,
                            int omit_color) {
  require_flat36(l);
  const auto& t = l.base();
  if (!t.periodic()) throw std::invalid_argument("flux membranes use torus coordinates");
  if (omit_color < 0 || omit_color > 2) throw std::invalid_argument("omit_color must be 0, 1 or 2");
  if (i_end < i_begin || layer_end < layer_begin) throw std::invalid_argument("empty membrane range");
  const int L = t.side_length();
  const auto color = triangular_coloring(t);
  auto vid = [L](int i, int jj) { return static_cast<VertexId>(((i % L) + L) % L + L * (((jj % L) + L) % L)); };
  std::vector<EdgeId> rungs;
  for (int i = i_begin; i < i_end; ++i) {
    for (auto [a, b] : {std::pair{vid(i, j), vid(i, j + 1)}, std::pair{vid(i + 1, j), vid(i, j + 1)}}) {
      if (color[a] == omit_color || color[b] == omit_color) continue;
      rungs.push_back(*t.edge_between(a, b));
    }
  }
  PauliString op(l.num_edges());
  for (int layer = layer_begin; layer <= layer_end; ++layer) {
    for (auto e : rungs) op.apply_x(l.in_plane(e, layer));
  }
  return op;
}

PauliString x_planeon_move(const Lattice3D& l, EdgeId edge, int layer) {
  require_flat36(l);
  const std::vector<Edge3Id> edges{l.in_plane(edge, layer)};
  return PauliString::X(l.num_edges(), edges);
}

}  // namespace flat36

}  // namespace ycube
