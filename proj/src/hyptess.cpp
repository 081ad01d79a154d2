#include "ycube/hyptess.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <deque>
#include <map>
#include <numbers>
#include <unordered_map>
#include <unordered_set>

namespace ycube {

namespace {

using Complex = std::complex<double>;

int mod(int a, int m) { return ((a % m) + m) % m; }

// z -> (z - a) / (1 - conj(a) z), an isometry of the Poincaré disk sending a to 0.
Complex to_origin(Complex a, Complex z) { return (z - a) / (1.0 - std::conj(a) * z); }
Complex from_origin(Complex a, Complex z) { return (z + a) / (1.0 + std::conj(a) * z); }

/// Orientation-preserving isometry taking template points (c0, c1) to (a, b).
class Placement {
 public:
  Placement(Geometry g, Complex c0, Complex c1, Complex a, Complex b) : geometry_(g), c0_(c0), a_(a) {
    if (g == Geometry::hyperbolic) {
      const Complex s = to_origin(c0, c1);
      const Complex u = to_origin(a, b);
      rotation_ = (u / s);
      rotation_ /= std::abs(rotation_);
    } else {
      rotation_ = (b - a) / (c1 - c0);
    }
  }

  Complex operator()(Complex z) const {
    if (geometry_ == Geometry::hyperbolic) return from_origin(a_, rotation_ * to_origin(c0_, z));
    return a_ + (z - c0_) * rotation_;
  }

 private:
  Geometry geometry_;
  Complex c0_;
  Complex a_;
  Complex rotation_;
};

/// Outward growth of a disk-shaped patch. The boundary is a ccw cycle (patch on the left); each new face
/// is attached outside a boundary edge and glued along every neighbour that it saturates.
class PatchGrower {
 public:
  PatchGrower(SchlafliPair pq, Geometry g, std::size_t budget) : pq_(pq), geometry_(g), budget_(budget) {
    const double pi = std::numbers::pi;
    double radius = 0.0;
    if (g == Geometry::hyperbolic) {
      const double cosh_r = 1.0 / (std::tan(pi / pq.p) * std::tan(pi / pq.q));
      radius = std::tanh(std::acosh(cosh_r) / 2.0);
    } else {
      radius = 0.5 / std::sin(pi / pq.p);  // unit edge length
    }
    for (int k = 0; k < pq.p; ++k) {
      template_.push_back(std::polar(radius, 2.0 * pi * k / pq.p));
    }
  }

  void seed() {
    std::vector<VertexId> face;
    for (int k = 0; k < pq_.p; ++k) face.push_back(new_vertex(template_[k]));
    for (int k = 0; k < pq_.p; ++k) {
      next_[face[k]] = face[(k + 1) % pq_.p];
      prev_[face[(k + 1) % pq_.p]] = face[k];
      nfaces_[face[k]] = 1;
    }
    faces_.push_back(face);
    generation_.push_back(0);
  }

  void grow(int generation) {
    std::vector<VertexId> pending;
    std::unordered_set<VertexId> seen;
    for (std::size_t f = 0; f < faces_.size(); ++f) {
      if (generation_[f] != generation - 1) continue;
      for (auto v : faces_[f]) {
        if (nfaces_[v] < pq_.q && seen.insert(v).second) pending.push_back(v);
      }
    }
    // Boundary order keeps the construction deterministic and independent of face bookkeeping.
    std::vector<VertexId> ordered;
    if (!pending.empty()) {
      VertexId start = *std::min_element(pending.begin(), pending.end());
      VertexId v = start;
      do {
        if (seen.count(v)) ordered.push_back(v);
        v = next_[v];
      } while (v != start);
    }
    for (auto v : ordered) {
      while (nfaces_[v] < pq_.q) add_face_outside(v, generation);
    }
  }

  Tessellation finish(int generations) {
    std::vector<TessVertex> verts(positions_.size());
    for (std::size_t v = 0; v < positions_.size(); ++v) {
      verts[v].x = positions_[v].real();
      verts[v].y = positions_[v].imag();
    }
    if (geometry_ == Geometry::flat) {
      double rmax = 0.0;
      for (auto& p : positions_) rmax = std::max(rmax, std::abs(p));
      const double scale = rmax > 0 ? 0.95 / rmax : 1.0;
      for (auto& v : verts) {
        v.x *= scale;
        v.y *= scale;
      }
    }
    std::vector<TessEdge> edges;
    std::map<std::pair<VertexId, VertexId>, EdgeId> edge_ids;
    std::vector<TessFace> faces;
    for (std::size_t f = 0; f < faces_.size(); ++f) {
      TessFace face;
      face.vertices = faces_[f];
      face.generation = generation_[f];
      const auto n = face.vertices.size();
      for (std::size_t i = 0; i < n; ++i) {
        VertexId a = face.vertices[i];
        VertexId b = face.vertices[(i + 1) % n];
        auto key = std::minmax(a, b);
        auto [it, inserted] = edge_ids.emplace(std::pair{key.first, key.second}, static_cast<EdgeId>(edges.size()));
        if (inserted) edges.push_back({key.first, key.second});
        face.edges.push_back(it->second);
      }
      faces.push_back(std::move(face));
    }
    return Tessellation::assemble(pq_, std::move(verts), std::move(edges), std::move(faces), false, 0, generations);
  }

  double max_glue_error() const { return max_glue_error_; }

 private:
  VertexId new_vertex(Complex pos) {
    if (positions_.size() >= budget_) {
      throw BudgetExceeded("patch exceeds the vertex budget of " + std::to_string(budget_));
    }
    positions_.push_back(pos);
    next_.push_back(kNoId);
    prev_.push_back(kNoId);
    nfaces_.push_back(0);
    return static_cast<VertexId>(positions_.size() - 1);
  }

  void add_face_outside(VertexId v, int generation) {
    const VertexId w = next_[v];
    // Walk backwards from v and forwards from w across every vertex this face closes up.
    std::vector<VertexId> back{v};
    while (nfaces_[back.back()] + 1 == pq_.q) {
      back.push_back(prev_[back.back()]);
      if (back.back() == w || back.size() > static_cast<std::size_t>(pq_.p)) throw std::logic_error("patch gluing wrapped");
    }
    std::vector<VertexId> fwd{w};
    while (nfaces_[fwd.back()] + 1 == pq_.q) {
      fwd.push_back(next_[fwd.back()]);
      if (fwd.back() == back.back() || fwd.size() > static_cast<std::size_t>(pq_.p)) {
        throw std::logic_error("patch gluing wrapped");
      }
    }
    const int known = static_cast<int>(back.size() + fwd.size());
    if (known > pq_.p) throw std::logic_error("patch gluing produced an oversized face");

    // Face in ccw order: fwd reversed (..., next(w), w), then v, prev(v), ..., then fresh vertices.
    std::vector<VertexId> face(fwd.rbegin(), fwd.rend());
    face.insert(face.end(), back.begin(), back.end());
    const std::size_t iw = fwd.size() - 1;
    const Placement place(geometry_, template_[iw], template_[iw + 1], positions_[w], positions_[v]);
    for (std::size_t k = 0; k < face.size(); ++k) {
      max_glue_error_ = std::max(max_glue_error_, std::abs(place(template_[k]) - positions_[face[k]]));
    }
    const VertexId v_end = back.back();
    const VertexId w_end = fwd.back();
    std::vector<VertexId> fresh;
    for (int k = known; k < pq_.p; ++k) {
      fresh.push_back(new_vertex(place(template_[k])));
      face.push_back(fresh.back());
    }

    for (auto u : face) ++nfaces_[u];
    // Saturated chain vertices leave the boundary; v_end -> fresh... -> w_end replaces them.
    VertexId cur = v_end;
    for (auto u : fresh) {
      next_[cur] = u;
      prev_[u] = cur;
      cur = u;
    }
    next_[cur] = w_end;
    prev_[w_end] = cur;
    for (std::size_t i = 0; i + 1 < back.size(); ++i) next_[back[i]] = prev_[back[i]] = kNoId;
    for (std::size_t i = 0; i + 1 < fwd.size(); ++i) next_[fwd[i]] = prev_[fwd[i]] = kNoId;

    faces_.push_back(std::move(face));
    generation_.push_back(generation);
  }

  SchlafliPair pq_;
  Geometry geometry_;
  std::size_t budget_;
  std::vector<Complex> template_;
  std::vector<Complex> positions_;
  std::vector<VertexId> next_, prev_;
  std::vector<int> nfaces_;
  std::vector<std::vector<VertexId>> faces_;
  std::vector<int> generation_;
  double max_glue_error_ = 0.0;
};

}  // namespace

Geometry SchlafliPair::classify() const {
  if (p < 3) throw std::invalid_argument("Schläfli p must be at least 3");
  if (q < 4 || q % 2 != 0) throw std::invalid_argument("Schläfli q must be even and at least 4");
  // Compare 1/p + 1/q with 1/2 exactly: 2(p + q) vs p q.
  const long lhs = 2L * (p + q);
  const long rhs = static_cast<long>(p) * q;
  if (lhs > rhs) throw std::invalid_argument("spherical Schläfli pair rejected");
  return lhs == rhs ? Geometry::flat : Geometry::hyperbolic;
}

Tessellation Tessellation::assemble(SchlafliPair pq, std::vector<TessVertex> vertices, std::vector<TessEdge> edges,
                                    std::vector<TessFace> faces, bool periodic, int side_length, int generations) {
  pq.classify();
  Tessellation t;
  t.pq_ = pq;
  t.periodic_ = periodic;
  t.side_length_ = side_length;
  t.generations_ = generations;
  t.vertices_ = std::move(vertices);
  t.edges_ = std::move(edges);
  t.faces_ = std::move(faces);

  const auto nv = t.vertices_.size();
  const auto ne = t.edges_.size();
  t.vertex_faces_.assign(nv, {});
  t.edge_faces_.assign(ne, {});

  // ccw successor of an edge around a vertex, and the face filling that wedge.
  std::vector<std::vector<std::array<EdgeId, 3>>> corners(nv);  // {e_out, e_in, face}
  for (FaceId f = 0; f < t.faces_.size(); ++f) {
    const auto& face = t.faces_[f];
    const auto n = face.vertices.size();
    if (n != static_cast<std::size_t>(pq.p) || face.edges.size() != n) {
      throw std::invalid_argument("face " + std::to_string(f) + " does not have p sides");
    }
    for (std::size_t i = 0; i < n; ++i) {
      const VertexId v = face.vertices[i];
      const EdgeId e_out = face.edges[i];
      const EdgeId e_in = face.edges[(i + n - 1) % n];
      corners[v].push_back({e_out, e_in, f});
      if (std::find(t.vertex_faces_[v].begin(), t.vertex_faces_[v].end(), f) == t.vertex_faces_[v].end()) {
        t.vertex_faces_[v].push_back(f);
      }
      t.edge_faces_[e_out].push_back(f);
    }
  }

  t.rotation_.assign(nv, {});
  t.wedge_face_.assign(nv, {});
  for (VertexId v = 0; v < nv; ++v) {
    auto& cs = corners[v];
    if (cs.empty()) throw std::invalid_argument("vertex " + std::to_string(v) + " has no faces");
    std::unordered_map<EdgeId, std::size_t> by_out;
    std::unordered_set<EdgeId> as_in;
    for (std::size_t i = 0; i < cs.size(); ++i) {
      if (!by_out.emplace(cs[i][0], i).second) throw std::invalid_argument("inconsistent face orientation");
      as_in.insert(cs[i][1]);
    }
    EdgeId start = kNoId;
    for (auto& c : cs) {
      if (!as_in.count(c[0])) {
        if (start != kNoId) throw std::invalid_argument("vertex " + std::to_string(v) + " is pinched");
        start = c[0];
      }
    }
    const bool closed = start == kNoId;
    if (closed) {
      start = std::min_element(cs.begin(), cs.end(), [](auto& a, auto& b) { return a[0] < b[0]; })->at(0);
    }
    auto& rot = t.rotation_[v];
    EdgeId e = start;
    while (true) {
      rot.push_back(e);
      auto it = by_out.find(e);
      if (it == by_out.end()) break;
      const auto& c = cs[it->second];
      t.wedge_face_[v].push_back(c[2]);
      e = c[1];
      if (closed && e == start) break;
      if (rot.size() > cs.size() + 1) throw std::invalid_argument("rotation system does not close");
    }
    if (t.wedge_face_[v].size() != cs.size()) throw std::invalid_argument("vertex " + std::to_string(v) + " is pinched");
    t.vertices_[v].interior = closed;
    if (closed && rot.size() != static_cast<std::size_t>(pq.q)) {
      throw std::invalid_argument("interior vertex " + std::to_string(v) + " has degree " + std::to_string(rot.size()));
    }
  }

  t.edge_slot_.assign(ne, {-1, -1});
  for (VertexId v = 0; v < nv; ++v) {
    const auto& rot = t.rotation_[v];
    for (std::size_t k = 0; k < rot.size(); ++k) {
      const auto& ed = t.edges_.at(rot[k]);
      if (ed.a == v) t.edge_slot_[rot[k]][0] = static_cast<int>(k);
      if (ed.b == v) t.edge_slot_[rot[k]][1] = static_cast<int>(k);
    }
  }

  t.face_interior_.assign(t.faces_.size(), true);
  for (FaceId f = 0; f < t.faces_.size(); ++f) {
    for (auto v : t.faces_[f].vertices) {
      if (!t.vertices_[v].interior) t.face_interior_[f] = false;
    }
  }
  return t;
}

EdgeId Tessellation::edge_at(VertexSlot s) const {
  const auto& rot = rotation_.at(s.vertex);
  if (vertices_[s.vertex].interior) return rot[static_cast<std::size_t>(mod(s.slot, static_cast<int>(rot.size())))];
  if (s.slot < 0 || static_cast<std::size_t>(s.slot) >= rot.size()) throw std::out_of_range("slot outside boundary fan");
  return rot[static_cast<std::size_t>(s.slot)];
}

int Tessellation::slot_of(EdgeId e, VertexId v) const {
  const auto& ed = edges_.at(e);
  if (ed.a == v) return edge_slot_[e][0];
  if (ed.b == v) return edge_slot_[e][1];
  throw std::invalid_argument("edge " + std::to_string(e) + " is not incident to vertex " + std::to_string(v));
}

VertexId Tessellation::other_end(EdgeId e, VertexId v) const {
  const auto& ed = edges_.at(e);
  if (ed.a == v) return ed.b;
  if (ed.b == v) return ed.a;
  throw std::invalid_argument("edge " + std::to_string(e) + " is not incident to vertex " + std::to_string(v));
}

std::optional<EdgeId> Tessellation::edge_between(VertexId u, VertexId v) const {
  for (auto e : rotation_.at(u)) {
    if (other_end(e, u) == v) return e;
  }
  return std::nullopt;
}

FaceId Tessellation::face_in_wedge(VertexId v, int slot) const {
  const auto& wf = wedge_face_.at(v);
  if (vertices_[v].interior) return wf[static_cast<std::size_t>(mod(slot, static_cast<int>(wf.size())))];
  if (slot < 0 || static_cast<std::size_t>(slot) >= wf.size()) return kNoId;
  return wf[static_cast<std::size_t>(slot)];
}

std::vector<VertexId> Tessellation::interior_vertices() const {
  std::vector<VertexId> out;
  for (VertexId v = 0; v < vertices_.size(); ++v) {
    if (vertices_[v].interior) out.push_back(v);
  }
  return out;
}

std::vector<VertexId> Tessellation::boundary_vertices() const {
  std::vector<VertexId> out;
  for (VertexId v = 0; v < vertices_.size(); ++v) {
    if (!vertices_[v].interior) out.push_back(v);
  }
  return out;
}

std::vector<FaceId> Tessellation::interior_faces() const {
  std::vector<FaceId> out;
  for (FaceId f = 0; f < faces_.size(); ++f) {
    if (face_interior_[f]) out.push_back(f);
  }
  return out;
}

VertexId Tessellation::center_vertex() const {
  VertexId best = kNoId;
  double best_r = 0.0;
  for (VertexId v = 0; v < vertices_.size(); ++v) {
    if (!vertices_[v].interior) continue;
    const double r = std::hypot(vertices_[v].x, vertices_[v].y);
    if (best == kNoId || r < best_r - 1e-12) {
      best = v;
      best_r = r;
    }
  }
  if (best == kNoId) throw std::logic_error("tessellation has no interior vertex");
  return best;
}

std::size_t default_vertex_budget() {
  if (const char* env = std::getenv("YCUBE_VERTEX_BUDGET")) {
    char* end = nullptr;
    const auto value = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && value > 0) return static_cast<std::size_t>(value);
  }
  return 20000;
}

Tessellation build_patch(SchlafliPair pq, int generations, std::size_t vertex_budget) {
  const Geometry g = pq.classify();
  if (generations < 0) throw std::invalid_argument("generations must be non-negative");
  PatchGrower grower(pq, g, vertex_budget);
  grower.seed();
  for (int gen = 1; gen <= generations; ++gen) grower.grow(gen);
  return grower.finish(generations);
}

Tessellation build_periodic_flat(SchlafliPair pq, int L) {
  if (pq.classify() != Geometry::flat || !((pq.p == 4 && pq.q == 4) || (pq.p == 3 && pq.q == 6))) {
    throw std::invalid_argument("periodic lattices are only built for (4,4) and (3,6)");
  }
  if (L < 2) throw std::invalid_argument("periodic side length must be at least 2");
  auto vid = [L](int i, int j) { return static_cast<VertexId>(mod(i, L) + L * mod(j, L)); };
  std::vector<TessVertex> verts(static_cast<std::size_t>(L) * L);
  std::vector<TessEdge> edges;
  std::vector<TessFace> faces;
  const double scale = 1.4 / L;

  if (pq.p == 4) {
    // edges 2*v + d: d = 0 along +x, d = 1 along +y
    for (int j = 0; j < L; ++j) {
      for (int i = 0; i < L; ++i) {
        auto& v = verts[vid(i, j)];
        v.x = (i - 0.5 * (L - 1)) * scale;
        v.y = (j - 0.5 * (L - 1)) * scale;
        edges.push_back({vid(i, j), vid(i + 1, j)});
        edges.push_back({vid(i, j), vid(i, j + 1)});
      }
    }
    auto ex = [&](int i, int j) { return 2 * vid(i, j); };
    auto ey = [&](int i, int j) { return 2 * vid(i, j) + 1; };
    for (int j = 0; j < L; ++j) {
      for (int i = 0; i < L; ++i) {
        TessFace f;
        f.vertices = {vid(i, j), vid(i + 1, j), vid(i + 1, j + 1), vid(i, j + 1)};
        f.edges = {ex(i, j), ey(i + 1, j), ex(i, j + 1), ey(i, j)};
        faces.push_back(std::move(f));
      }
    }
  } else {
    // edges 3*v + d toward (i+1,j), (i,j+1), (i-1,j+1)
    const double h = std::sqrt(3.0) / 2.0;
    for (int j = 0; j < L; ++j) {
      for (int i = 0; i < L; ++i) {
        auto& v = verts[vid(i, j)];
        v.x = (i + 0.5 * j - 0.75 * (L - 1)) * scale * 0.8;
        v.y = (h * j - 0.5 * h * (L - 1)) * scale * 0.8;
        edges.push_back({vid(i, j), vid(i + 1, j)});
        edges.push_back({vid(i, j), vid(i, j + 1)});
        edges.push_back({vid(i, j), vid(i - 1, j + 1)});
      }
    }
    auto e0 = [&](int i, int j) { return 3 * vid(i, j); };
    auto e1 = [&](int i, int j) { return 3 * vid(i, j) + 1; };
    auto e2 = [&](int i, int j) { return 3 * vid(i, j) + 2; };
    for (int j = 0; j < L; ++j) {
      for (int i = 0; i < L; ++i) {
        TessFace up;
        up.vertices = {vid(i, j), vid(i + 1, j), vid(i, j + 1)};
        up.edges = {e0(i, j), e2(i + 1, j), e1(i, j)};
        faces.push_back(std::move(up));
        TessFace down;
        down.vertices = {vid(i + 1, j), vid(i + 1, j + 1), vid(i, j + 1)};
        down.edges = {e1(i + 1, j), e0(i, j + 1), e2(i + 1, j)};
        faces.push_back(std::move(down));
      }
    }
  }
  return Tessellation::assemble(pq, std::move(verts), std::move(edges), std::move(faces), true, L, 0);
}

Path geodesic_ray(const Tessellation& t, VertexSlot start, int max_steps) {
  if (t.q() != 4) {
    throw std::invalid_argument("geodesic_ray is defined only for q = 4; use fractal_tree for q >= 6");
  }
  Path path;
  path.vertices.push_back(start.vertex);
  const EdgeId first = t.edge_at(start);
  EdgeId e = first;
  VertexId v = start.vertex;
  for (int step = 0; step < max_steps; ++step) {
    const VertexId w = t.other_end(e, v);
    path.edges.push_back(e);
    path.vertices.push_back(w);
    if (!t.interior(w)) break;
    const EdgeId next = t.edge_at({w, t.slot_of(e, w) + t.q() / 2});
    if (w == start.vertex && next == first) {
      path.closed = true;
      break;
    }
    v = w;
    e = next;
  }
  return path;
}

Path geodesic_through(const Tessellation& t, VertexSlot through) {
  if (!t.interior(through.vertex)) throw std::invalid_argument("geodesic_through needs an interior vertex");
  Path fwd = geodesic_ray(t, through);
  if (fwd.closed) return fwd;
  Path bwd = geodesic_ray(t, {through.vertex, through.slot + t.q() / 2});
  Path out;
  out.vertices.assign(bwd.vertices.rbegin(), bwd.vertices.rend());
  out.edges.assign(bwd.edges.rbegin(), bwd.edges.rend());
  out.vertices.insert(out.vertices.end(), fwd.vertices.begin() + 1, fwd.vertices.end());
  out.edges.insert(out.edges.end(), fwd.edges.begin(), fwd.edges.end());
  return out;
}

std::vector<VertexId> FractalTree::descendants(VertexId v, const Tessellation& t) const {
  if (!contains(v)) throw std::invalid_argument("vertex is not on the tree");
  std::vector<VertexId> out{v};
  std::vector<std::vector<VertexId>> children(depth.size());
  for (auto u : vertices) {
    if (parent_edge[u] != kNoId) children[t.other_end(parent_edge[u], u)].push_back(u);
  }
  for (std::size_t i = 0; i < out.size(); ++i) {
    for (auto c : children[out[i]]) out.push_back(c);
  }
  return out;
}

std::vector<VertexId> FractalTree::leaves(const Tessellation& t) const {
  std::vector<bool> has_child(depth.size(), false);
  for (auto u : vertices) {
    if (parent_edge[u] != kNoId) has_child[t.other_end(parent_edge[u], u)] = true;
  }
  std::vector<VertexId> out;
  for (auto u : vertices) {
    if (!has_child[u]) out.push_back(u);
  }
  return out;
}

FractalTree fractal_tree(const Tessellation& t, VertexId root, int parity, int max_depth) {
  if (parity != 0 && parity != 1) throw std::invalid_argument("fractal_tree parity must be 0 or 1");
  if (root >= t.num_vertices()) throw std::out_of_range("fractal_tree root out of range");
  if (!t.interior(root)) throw std::invalid_argument("fractal_tree root must be an interior vertex");
  FractalTree tree;
  tree.root = root;
  tree.parity = parity;
  tree.parent_edge.assign(t.num_vertices(), kNoId);
  tree.depth.assign(t.num_vertices(), -1);
  tree.depth[root] = 0;
  tree.vertices.push_back(root);
  std::unordered_set<EdgeId> edges;
  std::deque<std::pair<VertexId, int>> queue{{root, parity}};
  while (!queue.empty()) {
    auto [v, cls] = queue.front();
    queue.pop_front();
    const int deg = static_cast<int>(t.degree(v));
    for (int k = cls; k < deg; k += 2) {
      const EdgeId e = t.edge_at({v, k});
      if (e == tree.parent_edge[v]) continue;
      edges.insert(e);
      const VertexId w = t.other_end(e, v);
      if (tree.depth[w] >= 0) continue;
      tree.depth[w] = tree.depth[v] + 1;
      tree.parent_edge[w] = e;
      tree.vertices.push_back(w);
      if (t.interior(w) && tree.depth[w] < max_depth) queue.emplace_back(w, t.slot_of(e, w) % 2);
    }
  }
  tree.edges.assign(edges.begin(), edges.end());
  std::sort(tree.edges.begin(), tree.edges.end());
  return tree;
}

Path tree_branch(const Tessellation& t, const FractalTree& tree, int first_slot, Turn turn) {
  if (mod(first_slot, 2) != tree.parity) throw std::invalid_argument("branch slot is not in the root's tree class");
  Path path;
  path.vertices.push_back(tree.root);
  EdgeId e = t.edge_at({tree.root, first_slot});
  VertexId v = tree.root;
  const int delta = turn == Turn::left ? -2 : 2;
  for (std::size_t step = 0; step <= t.num_vertices(); ++step) {
    const VertexId w = t.other_end(e, v);
    path.edges.push_back(e);
    path.vertices.push_back(w);
    if (!t.interior(w)) return path;
    e = t.edge_at({w, t.slot_of(e, w) + delta});
    v = w;
  }
  throw std::invalid_argument("tree branch never reaches the patch boundary");
}

Region wedge_region(const Tessellation& t, const FractalTree& tree, const Path& branch_a, const Path& branch_b) {
  for (const Path* b : {&branch_a, &branch_b}) {
    if (b->edges.empty() || b->vertices.front() != tree.root) throw std::invalid_argument("wedge branch must start at the tree root");
    if (t.interior(b->vertices.back())) throw std::invalid_argument("wedge branch does not reach the patch boundary");
    for (auto e : b->edges) {
      if (!std::binary_search(tree.edges.begin(), tree.edges.end(), e)) {
        throw std::invalid_argument("wedge branch leaves the fractal tree");
      }
    }
  }
  if (branch_a.edges.front() == branch_b.edges.front()) throw std::invalid_argument("wedge branches must be distinct");

  std::unordered_set<EdgeId> walls(branch_a.edges.begin(), branch_a.edges.end());
  walls.insert(branch_b.edges.begin(), branch_b.edges.end());
  const int slot_a = t.slot_of(branch_a.edges.front(), tree.root);
  const int slot_b = t.slot_of(branch_b.edges.front(), tree.root);
  const FaceId seed = t.face_in_wedge(tree.root, slot_b);
  const FaceId outside = t.face_in_wedge(tree.root, slot_a);

  std::vector<bool> in(t.num_faces(), false);
  std::vector<FaceId> stack{seed};
  in[seed] = true;
  while (!stack.empty()) {
    const FaceId f = stack.back();
    stack.pop_back();
    for (auto e : t.face(f).edges) {
      if (walls.count(e)) continue;
      for (auto g : t.faces_of_edge(e)) {
        if (!in[g]) {
          in[g] = true;
          stack.push_back(g);
        }
      }
    }
  }
  if (in[outside]) throw std::invalid_argument("wedge branches do not separate the patch");

  Region region;
  std::vector<bool> vin(t.num_vertices(), false);
  for (FaceId f = 0; f < t.num_faces(); ++f) {
    if (!in[f]) continue;
    region.faces.push_back(f);
    for (auto v : t.face(f).vertices) vin[v] = true;
  }
  for (VertexId v = 0; v < t.num_vertices(); ++v) {
    if (vin[v]) region.vertices.push_back(v);
  }
  return region;
}

std::pair<Path, Path> wedge_branches(const Tessellation& t, const FractalTree& tree, int first_slot) {
  return {tree_branch(t, tree, first_slot, Turn::left), tree_branch(t, tree, first_slot + 2, Turn::right)};
}

std::vector<int> triangular_coloring(const Tessellation& t) {
  if (t.p() != 3 || t.q() != 6) throw std::invalid_argument("triangular coloring needs a (3,6) lattice");
  std::vector<int> color(t.num_vertices(), -1);
  std::vector<bool> done(t.num_faces(), false);
  const auto& f0 = t.face(t.faces_at(0).front());
  // orient so that vertex 0 receives color 0
  std::size_t k0 = static_cast<std::size_t>(std::find(f0.vertices.begin(), f0.vertices.end(), 0) - f0.vertices.begin());
  for (int i = 0; i < 3; ++i) color[f0.vertices[(k0 + i) % 3]] = i;
  std::deque<FaceId> queue{t.faces_at(0).front()};
  done[queue.front()] = true;
  while (!queue.empty()) {
    const FaceId f = queue.front();
    queue.pop_front();
    for (auto e : t.face(f).edges) {
      for (auto g : t.faces_of_edge(e)) {
        const auto& verts = t.face(g).vertices;
        int missing = 3;
        int sum = 0;
        for (auto v : verts) {
          if (color[v] >= 0) {
            sum += color[v];
            --missing;
          }
        }
        if (missing == 1) {
          for (auto v : verts) {
            if (color[v] < 0) color[v] = 3 - sum;
          }
        }
        std::array<bool, 3> used{};
        for (auto v : verts) {
          if (color[v] < 0 || color[v] > 2 || used[static_cast<std::size_t>(color[v])]) {
            throw std::invalid_argument("lattice admits no consistent 3-coloring (periodic L must be a multiple of 3)");
          }
          used[static_cast<std::size_t>(color[v])] = true;
        }
        if (!done[g]) {
          done[g] = true;
          queue.push_back(g);
        }
      }
    }
  }
  return color;
}

std::vector<VertexId> hexagonal_sublattice(const Tessellation& t, int flavor) {
  if (flavor < 0 || flavor > 2) throw std::invalid_argument("hexagonal sublattice flavor must be 0, 1 or 2");
  if (t.periodic() && t.side_length() % 3 != 0) {
    throw std::invalid_argument("periodic hexagonal sublattices need L to be a multiple of 3");
  }
  const auto color = triangular_coloring(t);
  std::vector<VertexId> out;
  for (VertexId v = 0; v < t.num_vertices(); ++v) {
    if (color[v] != flavor) out.push_back(v);
  }
  return out;
}

}  // namespace ycube
