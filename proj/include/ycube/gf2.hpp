#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "ycube/bitvec.hpp"
#include "ycube/paulis.hpp"

namespace ycube {

class StabilizerCode;

/// Dense GF(2) matrix stored as packed rows.
struct GF2Matrix {
  std::vector<BitVec> rows;
  std::size_t ncols = 0;

  GF2Matrix() = default;
  explicit GF2Matrix(std::size_t cols) : ncols(cols) {}
  GF2Matrix(std::size_t nrows, std::size_t cols) : rows(nrows, BitVec(cols)), ncols(cols) {}

  std::size_t nrows() const { return rows.size(); }
  void add_row(BitVec row);
  GF2Matrix transpose() const;
};

/// Row-echelon basis grown one vector at a time. Each basis row is keyed by its
/// lowest set bit, so reducing a vector only ever clears bits from the bottom up.
class RowSpace {
 public:
  explicit RowSpace(std::size_t ncols);

  /// Inserts v; returns true when it was independent of the current basis.
  bool insert(BitVec v);
  /// Reduces v against the basis; the result is zero iff v lies in the span.
  BitVec reduce(BitVec v) const;
  bool contains(const BitVec& v) const { return !reduce(v).any(); }

  std::size_t rank() const { return basis_.size(); }
  std::size_t ncols() const { return ncols_; }
  const std::vector<BitVec>& basis() const { return basis_; }

 private:
  std::size_t ncols_;
  std::vector<BitVec> basis_;
  std::vector<std::ptrdiff_t> pivot_row_;  // column -> basis index, or -1
};

std::size_t rank(const GF2Matrix& m);

/// Basis of {x : m x = 0}.
std::vector<BitVec> kernel(const GF2Matrix& m);

/// Solves m x = b; nullopt when inconsistent.
std::optional<BitVec> solve(const GF2Matrix& m, const BitVec& b);

/// Membership oracle for the stabilizer group of a CSS code (phases ignored).
class StabilizerSpace {
 public:
  explicit StabilizerSpace(const StabilizerCode& code);

  bool contains(const PauliString& op) const;
  std::size_t rank_x() const { return x_.rank(); }
  std::size_t rank_z() const { return z_.rank(); }

 private:
  RowSpace x_;
  RowSpace z_;
};

struct GsdReport {
  std::size_t n = 0;
  std::size_t rank_x = 0;
  std::size_t rank_z = 0;
  std::size_t k = 0;
};

/// log2 of the ground-state degeneracy. Throws std::logic_error if any two terms anticommute.
GsdReport gsd_report(const StabilizerCode& code);
std::size_t gsd_exponent(const StabilizerCode& code);

bool in_stabilizer_group(const StabilizerCode& code, const PauliString& op);

struct LogicalPair {
  PauliString x;
  PauliString z;
};

/// k canonical pairs: x_i anticommutes with z_i and commutes with every other element and every term.
std::vector<LogicalPair> logical_basis(const StabilizerCode& code);

}  // namespace ycube
