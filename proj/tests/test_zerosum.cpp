#include <gtest/gtest.h>

#include "deltareal/zerosum.hpp"
#include "oracles.hpp"

using namespace deltareal;
using namespace deltareal::zerosum;

namespace {

ZeroSumSequence seq(Int n, std::map<Int, Int> m) { return ZeroSumSequence{CyclicGroup(n), std::move(m)}; }

// Multiplicity vectors of minimal zero-sum sequences by brute force over all sequences of length <= n.
std::vector<std::vector<Int>> brute_atoms(Int n, const std::vector<Int>& support) {
  std::vector<std::vector<Int>> zeroSum;
  oracle::for_each_in_box(support.size(), n, [&](const ExponentVec& c) {
    if (is_zero(c) || length(c) > n) return;
    Int s = 0;
    for (std::size_t i = 0; i < c.size(); ++i) s += support[i] * c[i];
    if (s % n == 0) zeroSum.push_back(c);
  });
  return minimalize(zeroSum);
}

}  // namespace

TEST(Sigma, Examples) {
  EXPECT_EQ(sigma(seq(3, {{1, 3}})), 0);
  EXPECT_EQ(sigma(seq(5, {})), 0);
  EXPECT_EQ(sigma(seq(4, {{1, 1}, {2, 1}})), 3);
}

TEST(MinimalZeroSum, CyclicOfOrderThree) {
  std::vector<Int> support{1, 2};
  auto atoms = minimal_zero_sum_sequences(CyclicGroup(3), support);
  ASSERT_EQ(atoms.size(), 3u);
  EXPECT_EQ(atoms[0], seq(3, {{1, 3}}));
  EXPECT_EQ(atoms[1], seq(3, {{2, 3}}));
  EXPECT_EQ(atoms[2], seq(3, {{1, 1}, {2, 1}}));
}

TEST(MinimalZeroSum, IdentityOnly) {
  std::vector<Int> support{0};
  auto atoms = minimal_zero_sum_sequences(CyclicGroup(6), support);
  ASSERT_EQ(atoms.size(), 1u);
  EXPECT_EQ(atoms[0], seq(6, {{0, 1}}));
}

TEST(MinimalZeroSum, CyclicOfOrderFour) {
  std::vector<Int> support{1, 2};
  auto v = minimal_zero_sum_vectors(CyclicGroup(4), support);
  EXPECT_EQ(v, (std::vector<std::vector<Int>>{{4, 0}, {2, 1}, {0, 2}}));
}

TEST(MinimalZeroSum, SupportIsNormalized) {
  std::vector<Int> support{4, -1, 7};
  auto v = minimal_zero_sum_vectors(CyclicGroup(3), support);
  std::vector<Int> reduced{1, 2};
  EXPECT_EQ(v, minimal_zero_sum_vectors(CyclicGroup(3), reduced));
  EXPECT_THROW(minimal_zero_sum_vectors(CyclicGroup(3), std::vector<Int>{}), PreconditionError);
  EXPECT_THROW(CyclicGroup(0), PreconditionError);
}

TEST(MinimalZeroSum, MatchesBruteForceForSmallGroups) {
  for (Int n = 1; n <= 8; ++n) {
    std::vector<std::vector<Int>> supports = {{1}, {1, n - 1}, {0, 1}, {1, 2, 3}};
    for (auto s : supports) {
      auto norm = normalize_support(CyclicGroup(n), s);
      if (norm.size() > 3) continue;
      auto got = minimal_zero_sum_vectors(CyclicGroup(n), norm);
      std::sort(got.begin(), got.end());
      EXPECT_EQ(got, brute_atoms(n, norm)) << "n=" << n;
      for (const auto& a : got) {
        Int total = 0;
        for (std::size_t i = 0; i < a.size(); ++i) total += norm[i] * a[i];
        EXPECT_EQ(total % n, 0);
      }
      for (std::size_t i = 0; i < got.size(); ++i)
        for (std::size_t j = 0; j < got.size(); ++j)
          if (i != j) EXPECT_FALSE(leq(got[i], got[j]));
    }
  }
}

TEST(BlockMonoid, Examples) {
  std::vector<Int> s12{1, 2};
  auto b3 = block_monoid(CyclicGroup(3), s12);
  EXPECT_EQ(b3.rank(), 2u);
  EXPECT_EQ(b3.atoms(), (std::vector<ElementVec>{{3, 0}, {0, 3}, {1, 1}}));
  EXPECT_EQ(b3.labels(), (std::vector<std::string>{"1^3", "2^3", "1*2"}));

  auto b2 = block_monoid(CyclicGroup(2), std::vector<Int>{1});
  EXPECT_EQ(b2.rank(), 1u);
  EXPECT_EQ(b2.atoms(), (std::vector<ElementVec>{{2}}));

  auto b5 = block_monoid(CyclicGroup(5), std::vector<Int>{0});
  EXPECT_EQ(b5.atoms(), (std::vector<ElementVec>{{1}}));

  auto b4 = block_monoid(CyclicGroup(4), s12);
  EXPECT_EQ(b4.atom_count(), 3u);
}
