#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ycube/bitvec.hpp"

namespace ycube {

/// Pauli operator on lattice edges, modulo phase: X-part and Z-part bit vectors.
class PauliString {
 public:
  PauliString() = default;
  explicit PauliString(std::size_t nqubits) : x_(nqubits), z_(nqubits) {}
  PauliString(BitVec x, BitVec z);

  static PauliString X(std::size_t nqubits, std::span<const std::uint32_t> edges);
  static PauliString Z(std::size_t nqubits, std::span<const std::uint32_t> edges);

  std::size_t size() const { return x_.size(); }
  const BitVec& x() const { return x_; }
  const BitVec& z() const { return z_; }

  void apply_x(std::size_t edge) { x_.flip(edge); }
  void apply_z(std::size_t edge) { z_.flip(edge); }

  bool is_identity() const { return !x_.any() && !z_.any(); }
  std::size_t weight() const;
  /// Sorted edges where the operator acts nontrivially.
  std::vector<std::uint32_t> support() const;

  PauliString& operator*=(const PauliString& other);
  friend PauliString operator*(PauliString a, const PauliString& b) {
    a *= b;
    return a;
  }
  friend bool operator==(const PauliString&, const PauliString&) = default;

  /// Sparse text form "X@3 Z@7 Y@9", edges ascending.
  std::string to_text() const;
  static PauliString from_text(std::string_view text, std::size_t nqubits);

 private:
  BitVec x_;
  BitVec z_;
};

PauliString multiply(const PauliString& a, const PauliString& b);

/// Symplectic form: true iff <a.x, b.z> + <a.z, b.x> = 0 over GF(2).
bool commutes(const PauliString& a, const PauliString& b);

}  // namespace ycube
