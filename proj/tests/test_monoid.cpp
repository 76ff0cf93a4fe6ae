#include <gtest/gtest.h>

#include "deltareal/monoid.hpp"
#include "oracles.hpp"

using namespace deltareal;

namespace {

Presentation base(Int d) { return Presentation(2, {{d + 2, 0}, {0, d + 2}, {1, 1}}, {"v1", "v2", "v3"}); }

// base(1) extended by one gadget for m = u1*u2 (pi = (3,3)), ell = 3: atoms p1 = (3,3,-1,-1), p2, p3.
Presentation toy_extended() {
  std::vector<ElementVec> atoms{{3, 0, 0, 0}, {0, 3, 0, 0}, {1, 1, 0, 0}, {3, 3, -1, -1}, {0, 0, 1, 0}, {0, 0, 0, 1}};
  GadgetBlock g{{1, 1, 0}, 3, 2, 3};
  return Presentation(4, atoms, {"u1", "u2", "u3", "p1", "p2", "p3"}, {g});
}

}  // namespace

TEST(Presentation, Validation) {
  EXPECT_THROW(Presentation(2, {{1, 0}, {1, 0}}), PreconditionError);
  EXPECT_THROW(Presentation(2, {{0, 0}}), PreconditionError);
  EXPECT_THROW(Presentation(2, {{1}}), DimensionError);
  std::vector<ElementVec> atoms{{3, 0, 0, 0}, {0, 3, 0, 0}, {1, 1, 0, 0}, {3, 3, -1, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}};
  GadgetBlock g{{1, 1, 0}, 3, 2, 3};
  EXPECT_THROW(Presentation(4, atoms, {}, {g}), PreconditionError);
  EXPECT_NO_THROW(toy_extended());
}

TEST(DirectProduct, BaseTimesBase) {
  auto p = direct_product(base(1), base(2));
  EXPECT_EQ(p.rank(), 4u);
  EXPECT_EQ(p.atoms(), (std::vector<ElementVec>{{3, 0, 0, 0}, {0, 3, 0, 0}, {1, 1, 0, 0},
                                                 {0, 0, 4, 0}, {0, 0, 0, 4}, {0, 0, 1, 1}}));
  EXPECT_EQ(p.labels(), (std::vector<std::string>{"v1", "v2", "v3", "v1'", "v2'", "v3'"}));
  auto q = direct_product(base(3), Presentation(1, {{1}}));
  EXPECT_EQ(q.atom_count(), 4u);
}

TEST(DirectProduct, ShiftsGadgetsOfSecondFactor) {
  auto p = direct_product(base(2), toy_extended());
  ASSERT_EQ(p.gadgets().size(), 1u);
  EXPECT_EQ(p.gadgets()[0].p1Index, 6u);
  EXPECT_EQ(p.gadgets()[0].freshBegin, 4u);
  EXPECT_EQ(length_set(p, ElementVec{0, 0, 3, 3, 0, 0}), (LengthSet{2, 3}));
}

TEST(Factorizations, BaseRelation) {
  EXPECT_EQ(factorizations(base(1), ElementVec{3, 3}), (std::vector<ExponentVec>{{0, 0, 3}, {1, 1, 0}}));
  EXPECT_EQ(factorizations(base(1), ElementVec{0, 0}), (std::vector<ExponentVec>{{0, 0, 0}}));
  EXPECT_THROW(factorizations(base(1), ElementVec{1}), DimensionError);
}

TEST(Factorizations, GadgetElimination) {
  auto m = toy_extended();
  // pi(m) = (3,3): u1u2, u3^3, and the full block p1p2p3.
  EXPECT_EQ(length_set(m, ElementVec{3, 3, 0, 0}), (LengthSet{2, 3}));
  EXPECT_EQ(count_factorizations(m, ElementVec{3, 3, 0, 0}), 3u);
  // A dangling p2 only factors as p1 p2^2 p3 shifted... p2 alone is an atom.
  EXPECT_EQ(length_set(m, ElementVec{0, 0, 1, 0}), (LengthSet{1}));
  EXPECT_EQ(length_set(m, ElementVec{3, 3, 0, -1}), (LengthSet{2}));
  EXPECT_TRUE(length_set(m, ElementVec{0, 0, -1, 0}).empty());
}

TEST(Factorizations, MatchesMultisetOracle) {
  std::vector<Presentation> monoids{base(1), base(2), base(3), toy_extended()};
  for (const auto& m : monoids) {
    auto groups = oracle::multiset_products(m.atoms(), m.rank(), 5);
    for (const auto& [v, xs] : groups) {
      auto got = factorizations(m, v);
      std::vector<ExponentVec> shortOnes;
      for (auto& x : got)
        if (length(x) <= 5) shortOnes.push_back(x);
      EXPECT_EQ(shortOnes, xs) << to_string(v);
      for (auto& x : got) EXPECT_EQ(m.evaluate(x), v);
    }
  }
}

TEST(Factorizations, GenericPathForUnannotatedNegativeAtoms) {
  // Same atoms as toy_extended but without the gadget annotation: the generic solver must agree.
  auto annotated = toy_extended();
  Presentation plain(4, annotated.atoms(), annotated.labels());
  for (const auto& v : enumerate_elements(annotated, 4)) {
    EXPECT_EQ(factorizations(plain, v), factorizations(annotated, v)) << to_string(v);
  }
}

TEST(LengthSets, Examples) {
  EXPECT_EQ(length_set(base(2), ElementVec{4, 4}), (LengthSet{2, 4}));
  EXPECT_EQ(length_set(base(2), ElementVec{4, 0}), (LengthSet{1}));
  EXPECT_EQ(length_set(base(2), ElementVec{0, 0}), (LengthSet{0}));
  EXPECT_TRUE(length_set(base(1), ElementVec{1, 2}).empty());
  auto p = direct_product(base(1), base(2));
  EXPECT_EQ(length_set(p, ElementVec{3, 0, 4, 4}), (LengthSet{3, 5}));
  EXPECT_EQ(max_length(p, ElementVec{3, 0, 4, 4}), 5);
  EXPECT_FALSE(max_length(base(1), ElementVec{1, 2}).has_value());
}

TEST(DeltaOfLengths, Examples) {
  EXPECT_EQ(delta_of_lengths({3, 5}), (DeltaSet{2}));
  EXPECT_TRUE(delta_of_lengths({7}).empty());
  EXPECT_EQ(delta_of_lengths({3, 4, 5}), (DeltaSet{1}));
  EXPECT_EQ(delta_of_lengths({2, 3, 6}), (DeltaSet{1, 3}));
}

TEST(Membership, Examples) {
  EXPECT_TRUE(membership(base(1), ElementVec{0, 0}));
  EXPECT_FALSE(membership(base(1), ElementVec{1, 2}));
  auto b4 = base(4);
  for (const auto& a : b4.atoms()) EXPECT_TRUE(membership(b4, a));
}

TEST(EnumerateElements, Examples) {
  EXPECT_EQ(enumerate_elements(base(1), 0), (std::vector<ElementVec>{{0, 0}}));
  EXPECT_EQ(enumerate_elements(base(1), 1), (std::vector<ElementVec>{{0, 0}, {0, 3}, {1, 1}, {3, 0}}));
  auto three = enumerate_elements(base(1), 3);
  EXPECT_TRUE(std::binary_search(three.begin(), three.end(), ElementVec{3, 3}));
}

TEST(BoundedDelta, BaseMonoids) {
  EXPECT_EQ(bounded_delta_set(base(1), 8), (DeltaSet{1}));
  EXPECT_TRUE(bounded_delta_set(base(5), 1).empty());
  EXPECT_EQ(bounded_delta_set(base(3), 8), (DeltaSet{3}));
}

TEST(BoundedDelta, MonotoneInBoundAndMatchesBruteForce) {
  auto m = toy_extended();
  DeltaSet prev;
  for (Int k = 0; k <= 6; ++k) {
    auto d = bounded_delta_set(m, k);
    EXPECT_EQ(d, bounded_delta_set_bruteforce(m, k)) << "k=" << k;
    EXPECT_TRUE(std::includes(d.begin(), d.end(), prev.begin(), prev.end()));
    prev = d;
  }
}

TEST(AtomsMinimal, Examples) {
  for (Int d = 1; d <= 5; ++d) EXPECT_TRUE(assert_atoms_minimal(base(d)).ok);
  auto bad = assert_atoms_minimal(Presentation(2, {{1, 0}, {2, 0}, {0, 1}}));
  EXPECT_FALSE(bad.ok);
  EXPECT_EQ(bad.offendingAtom, 1u);
  EXPECT_TRUE(assert_atoms_minimal(toy_extended()).ok);
}
