#include "ycube/mobility.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>
#include <unordered_set>

#include "ycube/opgen.hpp"

namespace ycube {

namespace {

struct StateHash {
  std::size_t operator()(const std::vector<TermId>& s) const {
    std::size_t h = s.size();
    for (auto id : s) h ^= id + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }
};

/// True when every vertex and face the edge touches carries its full set of terms.
bool bulk_edge(const Lattice3D& l, Edge3Id e) {
  const auto& t = l.base();
  const auto idx = l.base_index(e);
  if (l.is_vertical(e)) {
    if (!t.interior(idx)) return false;
    for (auto f : t.faces_at(idx)) {
      if (!t.face_interior(f)) return false;
    }
    return true;
  }
  const auto& ed = t.edge(idx);
  if (!t.interior(ed.a) || !t.interior(ed.b)) return false;
  for (auto f : t.faces_of_edge(idx)) {
    if (!t.face_interior(f)) return false;
  }
  return true;
}

/// Move alphabet with each move's flip set and, per term, the moves touching it. Moves that touch
/// truncated terms near the patch boundary are flagged: they may only absorb particles.
class Alphabet {
 public:
  Alphabet(const StabilizerCode& code, const MobilityQuery& query) {
    if (!query.custom_moves.empty()) {
      term_moves_.assign(code.num_terms(), {});
      for (const auto& m : query.custom_moves) {
        bool bulk = true;
        for (auto e : m.support()) bulk = bulk && bulk_edge(code.lattice(), e);
        add(syndrome(code, m), bulk);
      }
      return;
    }
    const bool want_x = query.moves != MoveSet::z;
    const bool want_z = query.moves != MoveSet::x;
    term_moves_.assign(code.num_terms(), {});
    for (Edge3Id e = 0; e < code.num_qubits(); ++e) {
      std::vector<TermId> flips_x;
      std::vector<TermId> flips_z;
      for (auto id : code.terms_on(e)) (is_x_type(code.term(id).kind) ? flips_z : flips_x).push_back(id);
      const bool bulk = bulk_edge(code.lattice(), e);
      if (want_x) add(std::move(flips_x), bulk);
      if (want_z) add(std::move(flips_z), bulk);
    }
  }

  const std::vector<TermId>& flips(std::size_t m) const { return flips_[m]; }
  bool bulk(std::size_t m) const { return bulk_[m]; }
  const std::vector<std::uint32_t>& touching(TermId t) const { return term_moves_[t]; }
  std::vector<std::uint32_t> cheap(std::size_t slack) const {
    std::vector<std::uint32_t> out;
    for (std::uint32_t m = 0; m < flips_.size(); ++m) {
      if (!flips_[m].empty() && flips_[m].size() <= slack) out.push_back(m);
    }
    return out;
  }

 private:
  void add(std::vector<TermId> f, bool bulk) {
    std::sort(f.begin(), f.end());
    bulk_.push_back(bulk);
    const auto id = static_cast<std::uint32_t>(flips_.size());
    for (auto t : f) term_moves_[t].push_back(id);
    flips_.push_back(std::move(f));
  }

  std::vector<std::vector<TermId>> flips_;
  std::vector<bool> bulk_;
  std::vector<std::vector<std::uint32_t>> term_moves_;
};

}  // namespace

MobilityReport reachable(const MobilityQuery& query) {
  if (query.code == nullptr) throw std::invalid_argument("mobility query without a code");
  const auto& code = *query.code;
  const auto initial = syndrome(code, query.initial);
  const std::size_t budget = query.budget.value_or(initial.size());
  if (budget < initial.size()) throw std::invalid_argument("budget is below the initial syndrome weight");

  const Alphabet alphabet(code, query);
  const auto cheap = alphabet.cheap(budget - initial.size());

  MobilityReport report;
  std::set<int> initial_layers;
  for (const auto& p : classify_excitations(code, initial)) initial_layers.insert(p.layer);

  std::unordered_set<std::vector<TermId>, StateHash> seen{initial};
  std::deque<std::vector<TermId>> queue{initial};
  std::vector<TermId> next;
  std::vector<std::uint32_t> candidates;
  while (!queue.empty()) {
    const auto state = std::move(queue.front());
    queue.pop_front();
    ++report.visited;
    for (const auto& p : classify_excitations(code, state)) {
      report.positions.insert({p.kind, p.anchor, p.layer});
      report.layers.insert(p.layer);
      if (initial_layers.count(p.layer)) report.in_plane.insert(p.anchor);
      if (!p.species.empty()) report.species.insert(p.species);
    }
    if (state.size() < initial.size()) {
      ++report.absorbed;
      continue;
    }

    candidates = cheap;
    for (auto t : state) {
      const auto& ms = alphabet.touching(t);
      candidates.insert(candidates.end(), ms.begin(), ms.end());
    }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

    for (auto m : candidates) {
      const auto& f = alphabet.flips(m);
      next.clear();
      std::set_symmetric_difference(state.begin(), state.end(), f.begin(), f.end(), std::back_inserter(next));
      if (next.size() > budget || seen.count(next)) continue;
      if (!alphabet.bulk(m) && next.size() >= initial.size()) continue;
      if (seen.size() >= query.max_states) {
        report.truncated = true;
        break;
      }
      seen.insert(next);
      queue.push_back(next);
    }
  }
  return report;
}

std::vector<MobilityRow> mobility_table(const std::vector<LatticeDescriptor>& lattices) {
  std::vector<MobilityRow> rows;
  for (const auto& d : lattices) {
    const SchlafliPair pq{d.p, d.q};
    if (pq.classify() != Geometry::hyperbolic) throw std::invalid_argument("mobility_table rows use hyperbolic patches");
    const auto lattice = Lattice3D::stack(build_patch(pq, d.generations), d.layers);
    const auto code = build_code(lattice);
    const auto& t = lattice.base();
    const VertexId v = t.center_vertex();
    const int layer = 1;
    MobilityRow row;
    row.p = d.p;
    row.q = d.q;

    // single vertex excitation: Z string from v out to the boundary along the rule
    const auto tree = fractal_tree(t, v, 0);
    const auto branch = tree_branch(t, tree, 0, Turn::left);
    const auto zop = z_string(lattice, d.q == 4 ? ZStringKind::geodesic : ZStringKind::tree_path, branch, layer);
    MobilityQuery vq{&code, zop, MoveSet::z, std::nullopt, 200000, {}};
    const auto vr = reachable(vq);
    row.vertex_particle = vr.species.size() == 1 ? *vr.species.begin() : "mixed";
    row.vertex_reach = vr.in_plane.size();
    std::set<std::uint32_t> rule;
    for (auto u : tree.vertices) {
      if (t.interior(u)) rule.insert(u);
    }
    row.vertex_reach_matches_rule = vr.in_plane == rule;

    // fracton dipole across the first edge at v
    const VertexId w = t.other_end(t.edge_at({v, 0}), v);
    PauliString dipole = d.q == 4 ? x_truncated_geodesic(lattice, dipole_ray(t, v, w), layer)
                                  : x_pruned_tree(lattice, fractal_tree(t, v, 0), w, {layer, Side::top});
    MobilityQuery dq{&code, dipole, MoveSet::x, std::nullopt, 200000, {}};
    const auto dr = reachable(dq);
    std::set<std::uint32_t> faces;
    std::set<int> intervals;
    for (const auto& p : dr.positions) {
      if (p.kind != ParticleKind::fracton) continue;
      faces.insert(p.anchor);
      intervals.insert(p.layer);
    }
    row.dipole_in_plane = faces.size() > 2 ? "1D" : "none";
    row.dipole_vertical = intervals.size() > 1;

    const LayerInterface iface{layer, Side::top};
    if (syndrome(code, x_fractal_tree_logical(lattice, tree, iface)).empty()) {
      row.logicals.push_back(d.q == 4 ? "geodesic" : "fractal_tree");
    }
    const FaceId target = t.faces_at(v).front();
    try {
      if (d.q == 4) {
        single_fracton_geodesic_stack(code, target, layer);
        row.single_fracton.push_back("stacked_truncated_geodesics");
      } else {
        single_fracton_pruned_series(code, target, iface);
        row.single_fracton.push_back("pruned_tree_series");
      }
    } catch (const ConstructionError&) {
    }
    if (d.p % 2 == 0) {
      const auto region = wedge_from_spec(t, {v, 0, 0});
      if (syndrome(code, x_wedge_membrane(lattice, region, iface)).empty()) {
        row.logicals.push_back(d.q == 4 ? "geodesic_wedge" : "fractal_tree_wedge");
      }
      try {
        find_wedge_corner(code, iface);
        row.single_fracton.push_back("wedge_intersection");
      } catch (const ConstructionError&) {
      }
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace ycube
