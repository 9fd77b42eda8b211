#include <gtest/gtest.h>

#include "wfomc/frontends.hpp"
#include "wfomc/propcheck.hpp"
#include "wfomc/transform.hpp"

namespace wfomc {

namespace {

WeightedTheory T(const char* text) { return parse_theory(text).theory; }

}  // namespace

TEST(Gen, Deterministic) {
  GenConfig a;
  a.seed = 42;
  EXPECT_EQ(serialize_theory(gen_theory(a)), serialize_theory(gen_theory(a)));
  Gen g1(7), g2(7);
  EXPECT_EQ(serialize_problog(gen_program(g1)), serialize_problog(gen_program(g2)));
}

TEST(Gen, RespectsBounds) {
  for (std::uint64_t s = 0; s < 200; ++s) {
    GenConfig c;
    c.seed = s;
    WeightedTheory t = gen_theory(c);
    EXPECT_LE(t.sentences().size(), 2u);
    for (const auto& p : t.signature()) EXPECT_LE(p.arity, 2);
  }
}

TEST(Soundness, KnownTheories) {
  for (const char* text : {"forall x exists y (WorksFor(x,y) | Boss(x))\n",
                           "forall x exists y exists z (Parents(x,y,z) | First(x))\n",
                           "weight S 1 1/2 3\nforall x ((exists y F(x,y)) <-> ~S(x))\n",
                           "exists x forall y (P(x) -> Q(y))\n"}) {
    EXPECT_TRUE(check_soundness(T(text), {1, 2}).ok()) << text;
  }
}

TEST(Soundness, SmallRun) {
  GenConfig c;
  c.seed = 100;
  RunSummary s = run_soundness(c, 60);
  EXPECT_EQ(s.failures, 0) << s.counterexample;
  EXPECT_EQ(s.runs, 60);
}

TEST(Soundness, WrongSkolemWeightIsCaughtAndShrunk) {
  CheckOptions o;
  o.skolemize.skolem_false_weight = 1;
  GenConfig c;
  c.seed = 1;
  RunSummary s = run_soundness(c, 50, o, true);
  ASSERT_EQ(s.failures, 1);
  ASSERT_TRUE(s.first_failing_seed);
  WeightedTheory original = gen_theory([&] {
    GenConfig k = c;
    k.seed = *s.first_failing_seed;
    return k;
  }());
  EXPECT_LE(s.counterexample.size(), serialize_theory(original).size() + 200);
  EXPECT_FALSE(s.counterexample.empty());
}

TEST(Shrink, ReducesToCore) {
  CheckOptions o;
  o.skolemize.skolem_false_weight = 1;
  WeightedTheory t = T("forall x ((exists y (WorksFor(x,y) & Q(y))) | Boss(x))\nforall x (Boss(x) -> Q(x))\n");
  auto fails = [&](const WeightedTheory& c) { return !check_soundness(c, {1, 2}, o).ok(); };
  ASSERT_TRUE(fails(t));
  WeightedTheory small = shrink(t, fails);
  EXPECT_TRUE(fails(small));
  std::size_t before = 0, after = 0;
  for (const auto& s : t.sentences()) before += size(s);
  for (const auto& s : small.sentences()) after += size(s);
  EXPECT_LT(after, before);
}

TEST(Modularity, KnownQuery) {
  WeightedTheory t = T("forall x exists y (WorksFor(x,y) | Boss(x))\n");
  EXPECT_TRUE(check_modularity(t, parse_formula("Boss(A)"), {1, 2}).ok());
  EXPECT_TRUE(check_modularity(t, parse_formula("~Boss(A) & ~WorksFor(A,A)"), {1, 2}).ok());
  // Queries over Skolem predicates are outside the property.
  EXPECT_EQ(check_modularity(t, parse_formula("Sk0(A)"), {1}).status, CheckStatus::Unsupported);
}

TEST(Ladder, BossTheory) {
  WeightedTheory t = T("forall x exists y (WorksFor(x,y) | Boss(x))\n");
  ElimSite site = internal_sites(t).at(0);
  Ladder l = proof_ladder(t, site);
  ASSERT_EQ(l.stages.size(), 5u);
  for (int n = 1; n <= 2; ++n) {
    Domain d = Domain::of_size(n);
    Weight c0 = wfomc(l.stages[0], d);
    for (const auto& s : l.stages) EXPECT_EQ(wfomc(s, d), c0);
  }
  EXPECT_EQ(l.stages[3].weights().get(l.s), (WeightPair{1, 0}));
  EXPECT_EQ(l.stages[4].weights().get(l.s), (WeightPair{1, -1}));
  EXPECT_TRUE(check_proof_ladder(t, site, {1, 2}).ok());
}

TEST(Ladder, CaseTables) {
  WeightedTheory t = T("forall x exists y (WorksFor(x,y) | Boss(x))\n");
  Ladder l = proof_ladder(t, internal_sites(t).at(0));
  Domain d({"A"});
  auto feature = case_table(l, 3, d);
  ASSERT_EQ(feature.size(), 4u);
  for (const auto& r : feature) {
    EXPECT_EQ(r.measured, r.predicted) << r.sigma << r.s;
    if (!(r.sigma && r.s)) EXPECT_EQ(r.measured, Weight(0));
  }
  auto impl = case_table(l, 4, d);
  Weight ft, ff;
  for (const auto& r : impl) {
    EXPECT_EQ(r.measured, r.predicted);
    if (r.sigma && !r.s) EXPECT_EQ(r.measured, Weight(0));
    if (!r.sigma && r.s) ft = r.measured;
    if (!r.sigma && !r.s) ff = r.measured;
  }
  // Unintended models cancel.
  EXPECT_NE(ft, Weight(0));
  EXPECT_EQ(ft + ff, Weight(0));
}

TEST(Ladder, UniversalSite) {
  WeightedTheory t = T("weight P 1 2 -1/3\nexists x forall y (P(x) | Q(x,y))\n");
  auto sites = internal_sites(t);
  ASSERT_FALSE(sites.empty());
  EXPECT_TRUE(check_proof_ladder(t, sites[0], {1, 2}).ok());
}

}  // namespace wfomc
