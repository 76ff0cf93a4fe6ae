#include <gtest/gtest.h>

#include <random>

#include "corruptions.hpp"
#include "deltareal/verification.hpp"

using namespace deltareal;
using namespace deltareal::verification;
using realization::realize;

TEST(SplitMix64, ReferenceOutputs) {
  SplitMix64 rng(0);
  EXPECT_EQ(rng.next(), 0xe220a8397b1dcdafULL);
  EXPECT_EQ(rng.next(), 0x6e789e6aa1b965f4ULL);
  SplitMix64 a(42), b(42);
  for (int i = 0; i < 10; ++i) EXPECT_EQ(a.next(), b.next());
}

TEST(Lattice, MatchesDeterminantTestInTwoDimensions) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    ElementVec g1{static_cast<Int>(rng() % 9) - 4, static_cast<Int>(rng() % 9) - 4};
    ElementVec g2{static_cast<Int>(rng() % 9) - 4, static_cast<Int>(rng() % 9) - 4};
    const Int det = g1[0] * g2[1] - g1[1] * g2[0];
    if (det == 0) continue;
    Lattice l(2);
    l.add(g1);
    l.add(g2);
    EXPECT_EQ(l.rank(), 2u);
    for (Int x = -5; x <= 5; ++x)
      for (Int y = -5; y <= 5; ++y) {
        // Cramer: v = a g1 + b g2 with a = det(v, g2) / det, b = det(g1, v) / det.
        const bool member = (x * g2[1] - y * g2[0]) % det == 0 && (g1[0] * y - g1[1] * x) % det == 0;
        EXPECT_EQ(l.contains({x, y}), member) << to_string(g1) << to_string(g2) << x << "," << y;
      }
  }
}

TEST(Lattice, BaseMonoidGroup) {
  Lattice l(2);
  const auto base = realization::base_monoid(1);
  for (const auto& a : base.atoms()) l.add(a);
  EXPECT_TRUE(l.contains({1, 1}));
  EXPECT_TRUE(l.contains({4, 1}));
  EXPECT_FALSE(l.contains({1, 0}));
  EXPECT_THROW(l.contains({1}), DimensionError);
}

TEST(Checks, WitnessGaps) {
  auto r = realize({1, 3});
  auto c = check_witness_gaps(r);
  EXPECT_EQ(c.status, Status::Pass);
  EXPECT_EQ(c.details, "length sets {2,3} {2,5}");
  auto single = check_witness_gaps(realize({2}));
  EXPECT_EQ(single.details, "length sets {2,4}");
  auto broken = check_witness_gaps(corrupt::remove_top_v3(r));
  EXPECT_EQ(broken.status, Status::Fail);
  ASSERT_TRUE(broken.counterexample);
  EXPECT_EQ(*broken.counterexample, r.witnesses.back().element);
}

TEST(Checks, BoundedDelta) {
  DeltaSet d;
  EXPECT_EQ(check_bounded_delta(realize({1, 2}), 8, &d).status, Status::Pass);
  EXPECT_EQ(d, (DeltaSet{1, 2}));
  EXPECT_EQ(check_bounded_delta(realize({1, 2}), 1, &d).status, Status::Pass);
  EXPECT_TRUE(d.empty());
  EXPECT_EQ(check_bounded_delta(realize({2, 4}), 8, &d).status, Status::Pass);
  EXPECT_EQ(d, (DeltaSet{2, 4}));
}

TEST(Checks, A1PairsAgree) {
  auto r = realize({1, 2});
  // u1 * v1 v2: both maxima are 5, gadget lengths in H stop at 4.
  ElementVec a(r.monoid.rank(), 0);
  a[0] = 3;
  a[2] = 4;
  a[3] = 4;
  EXPECT_EQ(max_length(r.monoid, a), 5);
  EXPECT_EQ(max_length(r.top->product, ElementVec{3, 0, 4, 4}), 5);
  EXPECT_EQ(max_length(r.monoid, ElementVec(r.monoid.rank(), 0)), 0);
  auto c = check_A1(r, 100, 4, 0);
  EXPECT_EQ(c.status, Status::Pass) << c.details;
  EXPECT_EQ(check_A1(realize({2}), 10, 4, 0).status, Status::Skipped);
}

TEST(Checks, FactorizationStructureDanglingAtom) {
  auto r = realize({1, 2});
  const auto& g = r.monoid.gadgets().front();
  // a = pi(m) * p2: one dangling gadget atom, so Z(a) = Z(pi(m)) * p2.
  ElementVec a = r.monoid.core_vector(0);
  checked::axpy(a, 1, r.monoid.atom(g.p1Index + 1));
  EXPECT_EQ(count_factorizations(r.monoid, a), count_factorizations(r.monoid, r.monoid.core_vector(0)));
  EXPECT_EQ(check_factorization_structure(r, 4).status, Status::Pass);
  EXPECT_EQ(check_factorization_structure(r, 4, false).status, Status::Fail);
}

TEST(Checks, RootClosed) {
  auto base = realize({1});
  auto c = check_root_closed(base, {2, 3}, 6);
  EXPECT_EQ(c.status, Status::Pass);
  EXPECT_TRUE(membership(base.monoid, ElementVec{1, 1}));
  EXPECT_EQ(check_root_closed(realize({1, 2}), {2, 3}, 4).status, Status::Pass);
  auto broken = check_root_closed(corrupt::break_root_closure(realize({1, 2})), {2, 3}, 2);
  EXPECT_EQ(broken.status, Status::Fail);
  ASSERT_TRUE(broken.counterexample);
  EXPECT_FALSE(membership(corrupt::break_root_closure(realize({1, 2})).monoid, *broken.counterexample));
}

TEST(Checks, WorkCapSkips) {
  auto r = realize({1, 2});
  EXPECT_EQ(check_root_closed(r, {2}, 6, 1000).status, Status::Skipped);
  EXPECT_EQ(check_factorization_structure(r, 6, true, 1000).status, Status::Skipped);
}

TEST(Report, SortedAndDeterministic) {
  auto r = realize({1, 2});
  ReportConfig cfg = corrupt::control_config();
  auto a = full_report(r, cfg), b = full_report(r, cfg);
  ASSERT_EQ(a.checks.size(), 7u);
  EXPECT_TRUE(std::is_sorted(a.checks.begin(), a.checks.end(),
                             [](const CheckResult& x, const CheckResult& y) { return x.name < y.name; }));
  EXPECT_TRUE(a.passed());
  for (std::size_t i = 0; i < a.checks.size(); ++i) {
    EXPECT_EQ(a.checks[i].details, b.checks[i].details);
    EXPECT_EQ(a.checks[i].status, b.checks[i].status);
  }
}

TEST(Report, NegativeControlsDetected) {
  for (const auto& control : corrupt::controls(realize({1, 2}))) {
    auto rep = full_report(control.result, control.config);
    const CheckResult* c = rep.find(control.expectedFailure);
    ASSERT_NE(c, nullptr);
    EXPECT_EQ(c->status, Status::Fail) << control.name;
    EXPECT_TRUE(c->counterexample.has_value()) << control.name;
  }
}
