#include "ycube/gf2.hpp"

#include <stdexcept>
#include <string>

#include "ycube/ycode.hpp"

namespace ycube {

namespace {

/// Reduced row echelon form restricted to the first `limit` columns. Rows of zero (within the limit) are
/// kept at the bottom; returns the pivot columns of the leading rows.
std::vector<std::size_t> rref(std::vector<BitVec>& rows, std::size_t limit) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t col = 0; col < limit && r < rows.size(); ++col) {
    std::size_t sel = r;
    while (sel < rows.size() && !rows[sel].get(col)) ++sel;
    if (sel == rows.size()) continue;
    std::swap(rows[r], rows[sel]);
    const std::size_t word = col / BitVec::kWordBits;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i != r && rows[i].get(col)) rows[i].xor_from(rows[r], word);
    }
    pivots.push_back(col);
    ++r;
  }
  return pivots;
}

}  // namespace

void GF2Matrix::add_row(BitVec row) {
  if (row.size() != ncols) throw std::invalid_argument("GF2Matrix: row length mismatch");
  rows.push_back(std::move(row));
}

GF2Matrix GF2Matrix::transpose() const {
  GF2Matrix t(ncols, rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (auto j : rows[i].ones()) t.rows[j].set(i, true);
  }
  return t;
}

RowSpace::RowSpace(std::size_t ncols) : ncols_(ncols), pivot_row_(ncols, -1) {}

BitVec RowSpace::reduce(BitVec v) const {
  if (v.size() != ncols_) throw std::invalid_argument("RowSpace: vector length mismatch");
  auto words = v.words();
  for (std::size_t w = 0; w < words.size(); ++w) {
    BitVec::Word skip = 0;
    while (true) {
      const BitVec::Word bits = words[w] & ~skip;
      if (bits == 0) break;
      const auto b = static_cast<std::size_t>(std::countr_zero(bits));
      const auto idx = pivot_row_[w * BitVec::kWordBits + b];
      if (idx < 0) {
        skip |= BitVec::Word{1} << b;
      } else {
        v.xor_from(basis_[static_cast<std::size_t>(idx)], w);
      }
    }
  }
  return v;
}

bool RowSpace::insert(BitVec v) {
  BitVec r = reduce(std::move(v));
  const auto low = r.lowest();
  if (low < 0) return false;
  pivot_row_[static_cast<std::size_t>(low)] = static_cast<std::ptrdiff_t>(basis_.size());
  basis_.push_back(std::move(r));
  return true;
}

std::size_t rank(const GF2Matrix& m) {
  RowSpace space(m.ncols);
  for (const auto& row : m.rows) space.insert(row);
  return space.rank();
}

std::vector<BitVec> kernel(const GF2Matrix& m) {
  std::vector<BitVec> rows = m.rows;
  const auto pivots = rref(rows, m.ncols);
  std::vector<bool> is_pivot(m.ncols, false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<BitVec> out;
  for (std::size_t free = 0; free < m.ncols; ++free) {
    if (is_pivot[free]) continue;
    BitVec x(m.ncols);
    x.set(free, true);
    for (std::size_t r = 0; r < pivots.size(); ++r) {
      if (rows[r].get(free)) x.set(pivots[r], true);
    }
    out.push_back(std::move(x));
  }
  return out;
}

std::optional<BitVec> solve(const GF2Matrix& m, const BitVec& b) {
  if (b.size() != m.nrows()) throw std::invalid_argument("solve: right-hand side length mismatch");
  std::vector<BitVec> rows;
  rows.reserve(m.nrows());
  for (std::size_t i = 0; i < m.nrows(); ++i) {
    BitVec aug(m.ncols + 1);
    for (auto j : m.rows[i].ones()) aug.set(j, true);
    aug.set(m.ncols, b.get(i));
    rows.push_back(std::move(aug));
  }
  const auto pivots = rref(rows, m.ncols);
  for (std::size_t r = pivots.size(); r < rows.size(); ++r) {
    if (rows[r].get(m.ncols)) return std::nullopt;
  }
  BitVec x(m.ncols);
  for (std::size_t r = 0; r < pivots.size(); ++r) x.set(pivots[r], rows[r].get(m.ncols));
  return x;
}

StabilizerSpace::StabilizerSpace(const StabilizerCode& code) : x_(code.num_qubits()), z_(code.num_qubits()) {
  for (const auto& t : code.terms()) {
    auto row = BitVec::from_indices(code.num_qubits(), t.support);
    if (is_x_type(t.kind)) {
      x_.insert(std::move(row));
    } else {
      z_.insert(std::move(row));
    }
  }
}

bool StabilizerSpace::contains(const PauliString& op) const { return x_.contains(op.x()) && z_.contains(op.z()); }

GsdReport gsd_report(const StabilizerCode& code) {
  if (auto bad = audit(code)) {
    throw std::logic_error("terms " + std::to_string(bad->a) + " and " + std::to_string(bad->b) + " anticommute");
  }
  StabilizerSpace space(code);
  GsdReport r;
  r.n = code.num_qubits();
  r.rank_x = space.rank_x();
  r.rank_z = space.rank_z();
  r.k = r.n - r.rank_x - r.rank_z;
  return r;
}

std::size_t gsd_exponent(const StabilizerCode& code) { return gsd_report(code).k; }

bool in_stabilizer_group(const StabilizerCode& code, const PauliString& op) {
  if (op.size() != code.num_qubits()) throw std::invalid_argument("operator length does not match the lattice");
  return StabilizerSpace(code).contains(op);
}

std::vector<LogicalPair> logical_basis(const StabilizerCode& code) {
  if (auto bad = audit(code)) throw std::logic_error("logical_basis needs a commuting term set");
  const std::size_t n = code.num_qubits();
  const GF2Matrix hx = code.hx();
  const GF2Matrix hz = code.hz();

  // Representatives of ker(H_other) modulo the own-type stabilizers.
  auto representatives = [n](const GF2Matrix& own, const GF2Matrix& other) {
    RowSpace space(n);
    for (const auto& row : own.rows) space.insert(row);
    std::vector<BitVec> reps;
    for (auto& v : kernel(other)) {
      if (space.insert(v)) reps.push_back(std::move(v));
    }
    return reps;
  };
  const auto xs = representatives(hx, hz);
  const auto zs = representatives(hz, hx);
  if (xs.size() != zs.size()) throw std::logic_error("logical X and Z counts disagree");
  const std::size_t k = xs.size();

  // Gram matrix G[i][j] = <x_i, z_j>; replacing z by G^{-1}-combinations makes the pairing canonical.
  std::vector<BitVec> aug;
  for (std::size_t i = 0; i < k; ++i) {
    BitVec row(2 * k);
    for (std::size_t j = 0; j < k; ++j) row.set(j, xs[i].dot(zs[j]));
    row.set(k + i, true);
    aug.push_back(std::move(row));
  }
  if (rref(aug, k).size() != k) throw std::logic_error("logical Gram matrix is singular");

  std::vector<LogicalPair> out;
  for (std::size_t j = 0; j < k; ++j) {
    BitVec z(n);
    for (std::size_t l = 0; l < k; ++l) {
      if (aug[l].get(k + j)) z ^= zs[l];
    }
    out.push_back({PauliString(xs[j], BitVec(n)), PauliString(BitVec(n), std::move(z))});
  }
  return out;
}

}  // namespace ycube
