#include <gtest/gtest.h>

#include <cmath>

#include "pacert/bounds.hpp"

using namespace pacert;

namespace {
bool brackets(const Interval& x, double v, double eps = 1e-12) {
  return x.lo_rational().convert_to<double>() <= v + eps && v - eps <= x.hi_rational().convert_to<double>();
}
}  // namespace

TEST(LocalPathBound, FrozenValues) {
  EXPECT_TRUE(brackets(lemma5_bound(13, 2), 3.951243718581427));
  EXPECT_TRUE(brackets(lemma5_bound(260, 2), 0.34734879960677));
  EXPECT_TRUE(lemma5_bound(260, 2).certainly_less(Interval::point(54L) * log(Interval::point(522L)) / Interval::point(522L)));
  EXPECT_THROW(lemma5_bound(12, 2), std::domain_error);
  EXPECT_THROW(lemma5_bound(13, 1), std::domain_error);
  EXPECT_LT(lemma5_bound(13, 2).width(), Rational(1, BigInt(1) << 100));
}

TEST(EntropyCurve, FrozenValues) {
  EXPECT_TRUE(brackets(theorem_bound(1), 18.714973875118523));
  EXPECT_TRUE(brackets(theorem_bound(13), 6.42639441248075));
  EXPECT_THROW(theorem_bound(0), std::domain_error);
}

TEST(MainInequality, IdentitySpliceAtHundredPasses) {
  const ComposedMatrix tk = splice(transition_matrix(build_f3_spine_map(100, 100)), 100, LocalBlock::identity());
  const MainInequalityResult r = verify_main_inequality(tk, 100);
  EXPECT_EQ(r.verdict, Verdict::pass);
  EXPECT_NEAR(r.margin.convert_to<double>(), 1.2837970942553536, 1e-8);
  EXPECT_LE(r.margin, r.bound.lo_rational());
}

TEST(MainInequality, HugeBlockAtThirteenFails) {
  const std::int64_t e = 1000000000000LL;
  const LocalBlock h = LocalBlock::from_matrix({{{e, e, e}, {e, e, e}, {e, e, e}}});
  const ComposedMatrix tk = splice(transition_matrix(build_f3_spine_map(13, 13)), 13, h);
  const MainInequalityResult r = verify_main_inequality(tk, 13);
  EXPECT_EQ(r.verdict, Verdict::fail);
  EXPECT_LT(r.margin, 0);
}

TEST(MainInequality, ModerateBlockAtThirteenStillPasses) {
  const std::int64_t e = 1000000000LL;
  const LocalBlock h = LocalBlock::from_matrix({{{e, e, e}, {e, e, e}, {e, e, e}}});
  const ComposedMatrix tk = splice(transition_matrix(build_f3_spine_map(13, 13)), 13, h);
  EXPECT_EQ(verify_main_inequality(tk, 13).verdict, Verdict::pass);
}

TEST(MainInequality, ReducibleInputIsInconclusive) {
  const MainInequalityResult r = verify_main_inequality(TransitionMatrix::from_dense({{1, 1}, {0, 1}}), 10);
  EXPECT_EQ(r.verdict, Verdict::inconclusive);
  EXPECT_FALSE(r.note.empty());
}

TEST(MainInequality, MismatchedNIsRejected) {
  const ComposedMatrix tk = splice(transition_matrix(build_f3_spine_map(20, 20)), 20, LocalBlock::identity());
  EXPECT_THROW(verify_main_inequality(tk, 21), std::invalid_argument);
}

TEST(EmpiricalThreshold, Cases) {
  EXPECT_EQ(empirical_threshold({{30, false}, {33, true}, {36, true}}), 33);
  EXPECT_EQ(empirical_threshold({{36, true}, {30, true}, {33, false}}), 36);
  EXPECT_EQ(empirical_threshold({{30, true}, {33, false}}), std::nullopt);
  EXPECT_EQ(empirical_threshold({}), std::nullopt);
  EXPECT_EQ(empirical_threshold({{30, true}, {33, true}}), 30);
}

TEST(EntropyBudget, ChainHoldsForModestLambda) {
  const int n = 260;
  const Interval log_lambda = log(Interval::point(Rational(11, 10)));
  const EntropyBudget b = entropy_budget(n, 1, 221, log_lambda);
  EXPECT_EQ(b.n_k, 221);
  EXPECT_EQ(b.l, 20u);
  ASSERT_EQ(b.chain.size(), 5u);
  EXPECT_EQ(b.link_holds.size(), 4u);
  EXPECT_TRUE(b.link_holds[0]);
  EXPECT_TRUE(b.link_holds[3]);
}

TEST(EntropyBudget, FirstLinkFailsForLargeLambda) {
  const EntropyBudget b = entropy_budget(26, 1, 2, log(Interval::point(100L)));
  EXPECT_FALSE(b.link_holds[0]);
  EXPECT_FALSE(b.holds());
}

TEST(LiftBound, PunctureCountAndChain) {
  EXPECT_EQ(lifted_puncture_count(2, 100, 100), 5 * 201 + 1);
  for (int g : {2, 3, 4}) {
    for (int n : {100, 200}) {
      const LiftParameters p = lift_bound(g, n, n);
      EXPECT_EQ(p.s, static_cast<std::int64_t>(2 * g + 1) * (2 * n + 1) + 1);
      EXPECT_EQ(p.big_l, 162 * g);
      EXPECT_TRUE(p.holds()) << g << "," << n;
    }
  }
  EXPECT_THROW(lift_bound(1, 100, 100), std::domain_error);
  EXPECT_THROW(lift_bound(2, 100, 101), std::domain_error);
}

TEST(PsiMembership, Cases) {
  const Interval small = log(Interval::point(Rational(101, 100)));
  EXPECT_TRUE(psi_membership(2, Rational(324), 1000, small));
  EXPECT_FALSE(psi_membership(2, Rational(1, 1000), 1000, log(Interval::point(2L))));
  EXPECT_TRUE(psi_membership(0, Rational(0), 10, Interval::point(0L)));
  EXPECT_FALSE(psi_membership(0, Rational(0), 10, small));
  EXPECT_THROW(psi_membership(2, Rational(1), 2, small), std::domain_error);
  EXPECT_TRUE(brackets(psi_bound(Rational(162), 100), 162 * std::log(100.0) / 100));
}
