#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace ycube {

/// Fixed-length bit vector packed in 64-bit words. Bits past size() are kept zero.
class BitVec {
 public:
  using Word = std::uint64_t;
  static constexpr std::size_t kWordBits = 64;

  BitVec() = default;
  explicit BitVec(std::size_t nbits) : nbits_(nbits), words_((nbits + kWordBits - 1) / kWordBits, 0) {}

  static BitVec from_indices(std::size_t nbits, std::span<const std::uint32_t> ones) {
    BitVec v(nbits);
    for (auto i : ones) v.flip(i);
    return v;
  }

  std::size_t size() const { return nbits_; }
  std::size_t num_words() const { return words_.size(); }

  bool get(std::size_t i) const { return (words_[i / kWordBits] >> (i % kWordBits)) & 1U; }
  void set(std::size_t i, bool value) {
    const Word mask = Word{1} << (i % kWordBits);
    if (value) {
      words_[i / kWordBits] |= mask;
    } else {
      words_[i / kWordBits] &= ~mask;
    }
  }
  void flip(std::size_t i) { words_[i / kWordBits] ^= Word{1} << (i % kWordBits); }

  BitVec& operator^=(const BitVec& other) {
    check_same_size(other);
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] ^= other.words_[w];
    return *this;
  }

  /// XOR restricted to words [first_word, end). Used by elimination where lower words are known zero.
  void xor_from(const BitVec& other, std::size_t first_word) {
    for (std::size_t w = first_word; w < words_.size(); ++w) words_[w] ^= other.words_[w];
  }

  friend BitVec operator^(BitVec a, const BitVec& b) {
    a ^= b;
    return a;
  }

  std::size_t popcount() const {
    std::size_t n = 0;
    for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
    return n;
  }

  bool any() const {
    for (auto w : words_) {
      if (w != 0) return true;
    }
    return false;
  }

  /// Parity of the bitwise AND (GF(2) inner product).
  bool dot(const BitVec& other) const {
    check_same_size(other);
    Word acc = 0;
    for (std::size_t w = 0; w < words_.size(); ++w) acc ^= words_[w] & other.words_[w];
    return (std::popcount(acc) & 1) != 0;
  }

  /// Index of the lowest set bit, or -1 when the vector is zero.
  std::ptrdiff_t lowest() const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      if (words_[w] != 0) {
        return static_cast<std::ptrdiff_t>(w * kWordBits + static_cast<std::size_t>(std::countr_zero(words_[w])));
      }
    }
    return -1;
  }

  std::vector<std::uint32_t> ones() const {
    std::vector<std::uint32_t> out;
    for (std::size_t w = 0; w < words_.size(); ++w) {
      Word bits = words_[w];
      while (bits != 0) {
        out.push_back(static_cast<std::uint32_t>(w * kWordBits + static_cast<std::size_t>(std::countr_zero(bits))));
        bits &= bits - 1;
      }
    }
    return out;
  }

  std::span<const Word> words() const { return words_; }
  std::span<Word> words() { return words_; }

  friend bool operator==(const BitVec&, const BitVec&) = default;

 private:
  void check_same_size(const BitVec& other) const {
    if (other.nbits_ != nbits_) throw std::invalid_argument("BitVec: length mismatch");
  }

  std::size_t nbits_ = 0;
  std::vector<Word> words_;
};

}  // namespace ycube
