#include "ycube/ycode.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <stdexcept>

namespace ycube {

namespace {

constexpr std::array<std::pair<TermKind, std::string_view>, 6> kTermNames{{
    {TermKind::prism_z, "prism_z"},
    {TermKind::vertex_planar_x, "vertex_planar_x"},
    {TermKind::vertex_mixed_x, "vertex_mixed_x"},
    {TermKind::vertex_type1_x, "vertex_type1_x"},
    {TermKind::vertex_type2_x, "vertex_type2_x"},
    {TermKind::hexagon_z, "hexagon_z"},
}};

Term make_term(TermKind kind, std::uint32_t anchor, int layer, int parity, std::vector<Edge3Id> support) {
  std::sort(support.begin(), support.end());
  return {kind, anchor, layer, parity, std::move(support)};
}

std::vector<Edge3Id> link_edges(const Lattice3D& l, VertexId v, int layer) {
  const auto& t = l.base();
  std::vector<EdgeId> base;
  for (auto f : t.faces_at(v)) {
    const auto& face = t.face(f);
    for (std::size_t i = 0; i < face.edges.size(); ++i) {
      const auto& ed = t.edge(face.edges[i]);
      if (ed.a != v && ed.b != v) base.push_back(face.edges[i]);
    }
  }
  std::sort(base.begin(), base.end());
  base.erase(std::unique(base.begin(), base.end()), base.end());
  std::vector<Edge3Id> out;
  for (auto e : base) out.push_back(l.in_plane(e, layer));
  return out;
}

}  // namespace

std::string_view to_string(TermKind k) {
  for (auto& [kind, name] : kTermNames) {
    if (kind == k) return name;
  }
  return "unknown";
}

std::optional<TermKind> term_kind_from_string(std::string_view s) {
  for (auto& [kind, name] : kTermNames) {
    if (name == s) return kind;
  }
  return std::nullopt;
}

bool is_x_type(TermKind k) { return k != TermKind::prism_z && k != TermKind::hexagon_z; }

std::string_view to_string(ParticleKind k) {
  switch (k) {
    case ParticleKind::fracton: return "fracton";
    case ParticleKind::vertex_composite: return "vertex_composite";
    case ParticleKind::flux: return "flux";
    case ParticleKind::unclassified: return "unclassified";
  }
  return "unclassified";
}

StabilizerCode::StabilizerCode(Lattice3D lattice, std::vector<Term> terms)
    : lattice_(std::move(lattice)), terms_(std::move(terms)), edge_terms_(lattice_.num_edges()) {
  for (TermId id = 0; id < terms_.size(); ++id) {
    auto& s = terms_[id].support;
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end()) {
      throw std::invalid_argument("term " + std::to_string(id) + " repeats an edge");
    }
    for (auto e : s) {
      if (e >= edge_terms_.size()) throw std::out_of_range("term " + std::to_string(id) + " references a missing edge");
      edge_terms_[e].push_back(id);
    }
  }
}

PauliString StabilizerCode::pauli(TermId t) const {
  const auto& term = terms_.at(t);
  return is_x_type(term.kind) ? PauliString::X(num_qubits(), term.support) : PauliString::Z(num_qubits(), term.support);
}

bool StabilizerCode::has_hexagon() const {
  return std::any_of(terms_.begin(), terms_.end(), [](const Term& t) { return t.kind == TermKind::hexagon_z; });
}

GF2Matrix StabilizerCode::hx() const {
  GF2Matrix m(num_qubits());
  for (auto& t : terms_) {
    if (is_x_type(t.kind)) m.add_row(BitVec::from_indices(num_qubits(), t.support));
  }
  return m;
}

GF2Matrix StabilizerCode::hz() const {
  GF2Matrix m(num_qubits());
  for (auto& t : terms_) {
    if (!is_x_type(t.kind)) m.add_row(BitVec::from_indices(num_qubits(), t.support));
  }
  return m;
}

StabilizerCode build_code(const Lattice3D& lattice, CodeOptions options) {
  const auto& t = lattice.base();
  if (options.include_hexagon && !(t.p() == 3 && t.q() == 6)) {
    throw std::invalid_argument("hexagon terms exist only on (3,6) lattices");
  }
  const int q = t.q();
  std::vector<Term> terms;
  for (int interval = 0; interval < lattice.layers(); ++interval) {
    for (auto f : t.interior_faces()) {
      const auto& edges = lattice.incident_edges(lattice.prism_id(f, interval));
      terms.push_back(make_term(TermKind::prism_z, f, interval, -1, edges));
    }
  }
  for (int layer = 0; layer < lattice.layers(); ++layer) {
    for (auto v : t.interior_vertices()) {
      const auto& rot = t.rotation(v);
      std::array<std::vector<Edge3Id>, 2> classes;
      std::vector<Edge3Id> all;
      for (int k = 0; k < q; ++k) {
        const auto e = lattice.in_plane(rot[static_cast<std::size_t>(k)], layer);
        classes[static_cast<std::size_t>(k % 2)].push_back(e);
        all.push_back(e);
      }
      const Edge3Id below = lattice.vertical(v, layer - 1);
      const Edge3Id above = lattice.vertical(v, layer);
      if (q == 4) terms.push_back(make_term(TermKind::vertex_planar_x, v, layer, -1, all));
      for (int parity = 0; parity < 2; ++parity) {
        auto s = classes[static_cast<std::size_t>(parity)];
        s.push_back(below);
        s.push_back(above);
        terms.push_back(make_term(q == 4 ? TermKind::vertex_mixed_x : TermKind::vertex_type1_x, v, layer, parity, s));
      }
      if (q > 4 && options.include_type2) terms.push_back(make_term(TermKind::vertex_type2_x, v, layer, -1, all));
    }
  }
  if (options.include_hexagon) {
    for (int layer = 0; layer < lattice.layers(); ++layer) {
      for (auto v : t.interior_vertices()) {
        bool complete = true;
        for (auto f : t.faces_at(v)) complete = complete && t.face_interior(f);
        if (!complete) continue;
        terms.push_back(make_term(TermKind::hexagon_z, v, layer, -1, link_edges(lattice, v, layer)));
      }
    }
  }
  return StabilizerCode(lattice, std::move(terms));
}

std::vector<TermId> syndrome(const StabilizerCode& code, const PauliString& op) {
  if (op.size() != code.num_qubits()) throw std::invalid_argument("operator length does not match the lattice");
  std::vector<std::uint8_t> flips(code.num_terms(), 0);
  std::vector<TermId> touched;
  auto visit = [&](const BitVec& bits, bool x_part) {
    for (auto e : bits.ones()) {
      for (auto id : code.terms_on(e)) {
        // X on an edge flips Z-type terms and vice versa
        if (is_x_type(code.term(id).kind) == x_part) continue;
        if (flips[id] == 0) touched.push_back(id);
        flips[id] ^= 2;
        flips[id] |= 1;
      }
    }
  };
  visit(op.x(), true);
  visit(op.z(), false);
  std::vector<TermId> out;
  for (auto id : touched) {
    if (flips[id] & 2) out.push_back(id);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Particle> classify_excitations(const StabilizerCode& code, const std::vector<TermId>& excited) {
  const auto& t = code.lattice().base();
  const bool flat36 = t.p() == 3 && t.q() == 6;
  std::vector<Particle> out;
  std::map<std::pair<std::uint32_t, int>, std::vector<TermId>> by_site;
  for (auto id : excited) {
    const auto& term = code.term(id);
    switch (term.kind) {
      case TermKind::prism_z: out.push_back({ParticleKind::fracton, term.anchor, term.layer, {id}, ""}); break;
      case TermKind::hexagon_z: out.push_back({ParticleKind::flux, term.anchor, term.layer, {id}, ""}); break;
      default: by_site[{term.anchor, term.layer}].push_back(id);
    }
  }
  for (auto& [site, ids] : by_site) {
    Particle p{ParticleKind::unclassified, site.first, site.second, ids, ""};
    if (ids.size() == 2) {
      p.kind = ParticleKind::vertex_composite;
      const auto& a = code.term(ids[0]);
      const auto& b = code.term(ids[1]);
      const bool both_parity = a.parity >= 0 && b.parity >= 0;
      if (both_parity) {
        p.species = t.q() == 4 ? "vertical_lineon" : (flat36 ? "charge" : "vertical_lineon");
      } else if (t.q() == 4) {
        p.species = "lineon";
      } else {
        p.species = flat36 ? "planeon" : "treeon";
      }
    }
    out.push_back(std::move(p));
  }
  return out;
}

std::optional<AuditFailure> audit(const StabilizerCode& code) {
  std::vector<std::uint32_t> overlap(code.num_terms(), 0);
  std::vector<TermId> touched;
  for (TermId a = 0; a < code.num_terms(); ++a) {
    const auto& ta = code.term(a);
    if (!is_x_type(ta.kind)) continue;
    touched.clear();
    for (auto e : ta.support) {
      for (auto b : code.terms_on(e)) {
        if (is_x_type(code.term(b).kind)) continue;
        if (overlap[b]++ == 0) touched.push_back(b);
      }
    }
    std::optional<AuditFailure> bad;
    for (auto b : touched) {
      if (!bad && overlap[b] % 2 == 1) bad = AuditFailure{std::min(a, b), std::max(a, b)};
      overlap[b] = 0;
    }
    if (bad) return bad;
  }
  return std::nullopt;
}

PauliString link_cycle_z(const Lattice3D& lattice, VertexId v, int layer) {
  return PauliString::Z(lattice.num_edges(), link_edges(lattice, v, layer));
}

}  // namespace ycube
