#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"
#include "ycube/paulis.hpp"

using namespace ycube;

namespace {

PauliString random_pauli(std::mt19937& rng, std::size_t n) {
  PauliString p(n);
  std::bernoulli_distribution coin(0.3);
  for (std::size_t e = 0; e < n; ++e) {
    if (coin(rng)) p.apply_x(e);
    if (coin(rng)) p.apply_z(e);
  }
  return p;
}

// commutation by explicit counting of positions where the letters differ and neither is identity
bool commutes_by_letters(const PauliString& a, const PauliString& b) {
  int anti = 0;
  for (std::size_t e = 0; e < a.size(); ++e) {
    const int la = a.x().get(e) + 2 * a.z().get(e);
    const int lb = b.x().get(e) + 2 * b.z().get(e);
    if (la != 0 && lb != 0 && la != lb) ++anti;
  }
  return anti % 2 == 0;
}

}  // namespace

TEST(BitVec, BasicOperations) {
  BitVec v(130);
  EXPECT_EQ(v.lowest(), -1);
  v.set(129, true);
  v.flip(64);
  EXPECT_EQ(v.popcount(), 2u);
  EXPECT_EQ(v.lowest(), 64);
  EXPECT_EQ(v.ones(), (std::vector<std::uint32_t>{64, 129}));
  BitVec w = v;
  w ^= v;
  EXPECT_FALSE(w.any());
  EXPECT_THROW(v ^= BitVec(10), std::invalid_argument);
}

TEST(Paulis, SelfProductIsIdentity) {
  std::mt19937 rng(7);
  for (int i = 0; i < 50; ++i) {
    auto a = random_pauli(rng, 97);
    EXPECT_TRUE(multiply(a, a).is_identity());
  }
}

TEST(Paulis, XTimesZIsY) {
  const std::vector<std::uint32_t> e{5};
  auto y = multiply(PauliString::X(10, e), PauliString::Z(10, e));
  EXPECT_TRUE(y.x().get(5));
  EXPECT_TRUE(y.z().get(5));
  EXPECT_EQ(y.weight(), 1u);
  EXPECT_EQ(y.to_text(), "Y@5");
}

TEST(Paulis, SingleEdgeCommutation) {
  const std::vector<std::uint32_t> e{3};
  const std::vector<std::uint32_t> f{4};
  EXPECT_FALSE(commutes(PauliString::X(8, e), PauliString::Z(8, e)));
  EXPECT_TRUE(commutes(PauliString::X(8, e), PauliString::Z(8, f)));
  EXPECT_TRUE(commutes(PauliString::X(8, e), PauliString::X(8, e)));
}

TEST(Paulis, SymplecticFormMatchesLetterCounting) {
  std::mt19937 rng(11);
  for (int i = 0; i < 300; ++i) {
    auto a = random_pauli(rng, 70);
    auto b = random_pauli(rng, 70);
    EXPECT_EQ(commutes(a, b), commutes_by_letters(a, b));
    EXPECT_EQ(commutes(a, b), commutes(b, a));
  }
}

TEST(Paulis, ProductLaws) {
  std::mt19937 rng(3);
  for (int i = 0; i < 100; ++i) {
    auto a = random_pauli(rng, 65);
    auto b = random_pauli(rng, 65);
    auto c = random_pauli(rng, 65);
    EXPECT_EQ(multiply(multiply(a, b), c), multiply(a, multiply(b, c)));
    EXPECT_EQ(multiply(a, b), multiply(b, a));
    EXPECT_LE(multiply(a, b).weight(), a.weight() + b.weight());
  }
}

TEST(Paulis, LengthMismatch) {
  EXPECT_THROW(multiply(PauliString(3), PauliString(4)), std::invalid_argument);
  EXPECT_THROW(commutes(PauliString(3), PauliString(4)), std::invalid_argument);
}

TEST(Paulis, TextRoundTrip) {
  std::mt19937 rng(5);
  for (int i = 0; i < 50; ++i) {
    auto a = random_pauli(rng, 40);
    EXPECT_EQ(PauliString::from_text(a.to_text(), 40), a);
  }
  auto p = PauliString::from_text("X@12, Z@7\tY@3\n", 20);
  EXPECT_EQ(p.to_text(), "Y@3 Z@7 X@12");
  EXPECT_TRUE(PauliString::from_text("", 5).is_identity());
}

TEST(Paulis, TextErrors) {
  EXPECT_THROW(PauliString::from_text("X@20", 20), std::out_of_range);
  EXPECT_THROW(PauliString::from_text("Q@1", 20), std::invalid_argument);
  EXPECT_THROW(PauliString::from_text("X1", 20), std::invalid_argument);
  EXPECT_THROW(PauliString::from_text("X@1a", 20), std::invalid_argument);
}

TEST(Paulis, TypeOneProductIsTypeTwo) {
  const auto& code = fixtures::patch_code(4, 6, 1);
  std::size_t checked = 0;
  for (TermId id = 0; id < code.num_terms(); ++id) {
    const auto& t = code.term(id);
    if (t.kind != TermKind::vertex_type2_x) continue;
    std::vector<PauliString> ones;
    for (TermId j = 0; j < code.num_terms(); ++j) {
      const auto& u = code.term(j);
      if (u.kind == TermKind::vertex_type1_x && u.anchor == t.anchor && u.layer == t.layer) ones.push_back(code.pauli(j));
    }
    ASSERT_EQ(ones.size(), 2u);
    EXPECT_EQ(multiply(ones[0], ones[1]), code.pauli(id));
    ++checked;
  }
  EXPECT_GT(checked, 0u);
}
