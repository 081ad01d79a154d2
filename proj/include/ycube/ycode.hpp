#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ycube/gf2.hpp"
#include "ycube/lattice3.hpp"
#include "ycube/paulis.hpp"

namespace ycube {

using TermId = std::uint32_t;

enum class TermKind {
  prism_z,
  vertex_planar_x,  // q = 4
  vertex_mixed_x,   // q = 4, one per slot parity
  vertex_type1_x,   // q >= 6, one per slot parity
  vertex_type2_x,   // q >= 6
  hexagon_z,        // (3,6) only, anchored at the hexagon center
};

std::string_view to_string(TermKind k);
std::optional<TermKind> term_kind_from_string(std::string_view s);
bool is_x_type(TermKind k);

struct Term {
  TermKind kind = TermKind::prism_z;
  std::uint32_t anchor = 0;  // face for prisms, vertex otherwise
  int layer = 0;             // interval for prisms
  int parity = -1;           // slot class for mixed/type-1 terms
  std::vector<Edge3Id> support;  // sorted
};

struct CodeOptions {
  bool include_hexagon = false;
  bool include_type2 = true;  // type-2 terms are products of the two type-1 terms
};

class StabilizerCode {
 public:
  StabilizerCode(Lattice3D lattice, std::vector<Term> terms);

  const Lattice3D& lattice() const { return lattice_; }
  std::size_t num_qubits() const { return lattice_.num_edges(); }
  std::size_t num_terms() const { return terms_.size(); }
  const std::vector<Term>& terms() const { return terms_; }
  const Term& term(TermId t) const { return terms_.at(t); }
  PauliString pauli(TermId t) const;
  bool has_hexagon() const;

  /// Terms whose support contains the edge.
  const std::vector<TermId>& terms_on(Edge3Id e) const { return edge_terms_.at(e); }

  GF2Matrix hx() const;
  GF2Matrix hz() const;

 private:
  Lattice3D lattice_;
  std::vector<Term> terms_;
  std::vector<std::vector<TermId>> edge_terms_;
};

/// Prism Z terms on interior faces, vertex X terms on interior vertices and optional hexagon Z terms.
StabilizerCode build_code(const Lattice3D& lattice, CodeOptions options = {});

/// Sorted ids of terms anticommuting with op.
std::vector<TermId> syndrome(const StabilizerCode& code, const PauliString& op);

enum class ParticleKind { fracton, vertex_composite, flux, unclassified };
std::string_view to_string(ParticleKind k);

struct Particle {
  ParticleKind kind = ParticleKind::unclassified;
  std::uint32_t anchor = 0;  // face (fracton), vertex (composite, flux center)
  int layer = 0;             // interval for fractons
  std::vector<TermId> terms;
  std::string species;  // lineon, vertical_lineon, treeon, planeon, charge; empty when not a pair
};

/// Groups excited terms: one fracton per prism, vertex terms by (vertex, layer), hexagons as fluxes.
std::vector<Particle> classify_excitations(const StabilizerCode& code, const std::vector<TermId>& excited);

struct AuditFailure {
  TermId a = 0;
  TermId b = 0;
};

/// First anticommuting term pair, if any.
std::optional<AuditFailure> audit(const StabilizerCode& code);

/// Z on every edge of the faces around v that avoids v, in one layer. On (3,6) this is the hexagon term.
PauliString link_cycle_z(const Lattice3D& lattice, VertexId v, int layer);

}  // namespace ycube
