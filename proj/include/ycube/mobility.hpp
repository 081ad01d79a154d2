#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "ycube/paulis.hpp"
#include "ycube/ycode.hpp"

namespace ycube {

enum class MoveSet { x, z, both };

struct MobilityQuery {
  const StabilizerCode* code = nullptr;
  PauliString initial;
  MoveSet moves = MoveSet::both;
  std::optional<std::size_t> budget;  // defaults to the initial syndrome weight
  std::size_t max_states = 200000;
  /// When non-empty, replaces the single-edge alphabet (e.g. four-edge charge hops).
  std::vector<PauliString> custom_moves;
};

struct Position {
  ParticleKind kind = ParticleKind::unclassified;
  std::uint32_t anchor = 0;
  int layer = 0;
  auto operator<=>(const Position&) const = default;
};

struct MobilityReport {
  std::set<Position> positions;        // every particle position seen in a visited state
  std::set<std::uint32_t> in_plane;    // anchors seen at the initial layers
  std::set<int> layers;                // layers (intervals for fractons) seen
  std::set<std::string> species;
  std::size_t visited = 0;
  std::size_t absorbed = 0;  // states below the initial weight: recorded, not expanded
  bool truncated = false;
};

/// Breadth-first search over syndromes. A move is admitted iff the new weight stays within the budget.
/// States whose weight falls below the initial weight (a particle left through the boundary or fused) are
/// counted but not expanded. Moves on edges next to truncated boundary terms are admitted only when they
/// drop the weight below the initial weight, so the boundary absorbs particles without converting them.
MobilityReport reachable(const MobilityQuery& query);

struct LatticeDescriptor {
  int p = 0;
  int q = 0;
  int generations = 2;
  int layers = 3;
};

struct MobilityRow {
  int p = 0;
  int q = 0;
  std::string vertex_particle;  // lineon | treeon | planeon
  std::size_t vertex_reach = 0;
  bool vertex_reach_matches_rule = false;  // equals the geodesic / fractal tree of the start
  std::string dipole_in_plane;  // "1D" or "none"
  bool dipole_vertical = false;
  std::vector<std::string> logicals;
  std::vector<std::string> single_fracton;
};

/// Qualitative per-(p,q) mobility summary computed from the constructors and BFS.
std::vector<MobilityRow> mobility_table(const std::vector<LatticeDescriptor>& lattices);

}  // namespace ycube
