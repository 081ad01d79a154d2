#pragma once

#include <algorithm>
#include <array>
#include <memory>
#include <set>
#include <vector>

#include "ycube/hyptess.hpp"
#include "ycube/lattice3.hpp"
#include "ycube/ycode.hpp"

namespace ycube::fixtures {

inline const StabilizerCode& patch_code(int p, int q, int generations, int layers = 3) {
  static std::vector<std::pair<std::array<int, 4>, std::unique_ptr<StabilizerCode>>> cache;
  const std::array<int, 4> key{p, q, generations, layers};
  for (auto& [k, c] : cache) {
    if (k == key) return *c;
  }
  auto code = std::make_unique<StabilizerCode>(build_code(Lattice3D::stack(build_patch({p, q}, generations), layers)));
  cache.emplace_back(key, std::move(code));
  return *cache.back().second;
}

inline StabilizerCode torus_code(int p, int q, int L, int layers, bool hexagon = false) {
  return build_code(Lattice3D::stack(build_periodic_flat({p, q}, L), layers), {hexagon});
}

inline std::vector<TermKind> kinds(const StabilizerCode& c, const std::vector<TermId>& ids) {
  std::vector<TermKind> out;
  for (auto id : ids) out.push_back(c.term(id).kind);
  return out;
}

inline std::size_t count_kind(const StabilizerCode& c, const std::vector<TermId>& ids, TermKind k) {
  return static_cast<std::size_t>(std::count_if(ids.begin(), ids.end(), [&](TermId id) { return c.term(id).kind == k; }));
}

}  // namespace ycube::fixtures
