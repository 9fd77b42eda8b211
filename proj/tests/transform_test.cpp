#include <gtest/gtest.h>

#include "support/naive.hpp"
#include "wfomc/error.hpp"
#include "wfomc/frontends.hpp"
#include "wfomc/propcheck.hpp"
#include "wfomc/transform.hpp"

namespace wfomc {

namespace {

WeightedTheory T(const char* text) { return parse_theory(text).theory; }

std::vector<std::string> dom(int n) { return Domain::of_size(n).constants(); }

bool mentions(const WeightedTheory& t, const std::string& prefix) {
  for (const auto& p : t.signature())
    if (p.name.rfind(prefix, 0) == 0) return true;
  return false;
}

// Tseitin output can outgrow the naive oracle; the engine is cross-checked
// against it elsewhere.
Weight count_of(const WeightedTheory& t, const std::vector<std::string>& d) { return wfomc(t, Domain(d)); }

}  // namespace

TEST(Sites, InnermostFirstLeftToRight) {
  WeightedTheory t = T("forall x ((exists y P(x,y)) | (exists z (Q(z) & exists u P(z,u))))\n");
  auto sites = internal_sites(t);
  ASSERT_EQ(sites.size(), 3u);
  EXPECT_EQ(formula_at(t, sites[0]).variable(), "y");
  EXPECT_EQ(formula_at(t, sites[1]).variable(), "u");
  EXPECT_EQ(formula_at(t, sites[2]).variable(), "z");
  EXPECT_EQ(count_internal_quantifiers(T("forall x forall y P(x,y)\n")), 0u);
}

TEST(Eliminate, OneStepOnBossTheory) {
  WeightedTheory t = T("forall x exists y (WorksFor(x,y) | Boss(x))\n");
  FreshNamer namer(t);
  WeightedTheory r = eliminate_one(t, internal_sites(t).at(0), namer);
  ASSERT_EQ(r.sentences().size(), 4u);
  EXPECT_EQ(to_string(r.sentences()[0]), "forall x Z0(x)");
  EXPECT_EQ(to_string(r.sentences()[1]), "forall x forall y (Z0(x) | ~(WorksFor(x,y) | Boss(x)))");
  EXPECT_EQ(to_string(r.sentences()[2]), "forall x (Sk0(x) | Z0(x))");
  EXPECT_EQ(to_string(r.sentences()[3]), "forall x forall y (Sk0(x) | ~(WorksFor(x,y) | Boss(x)))");
  EXPECT_EQ(r.weights().get({"Sk0", 1}), (WeightPair{1, -1}));
  EXPECT_EQ(r.weights().get({"Z0", 1}), (WeightPair{1, 1}));
  for (int n = 1; n <= 2; ++n) EXPECT_EQ(naive::wfomc(r, dom(n)), naive::wfomc(t, dom(n)));
}

TEST(Eliminate, RejectsUniversalSite) {
  WeightedTheory t = T("exists x forall y P(x,y)\n");
  auto sites = internal_sites(t);
  ASSERT_FALSE(sites.empty());
  FreshNamer namer(t);
  EXPECT_THROW(eliminate_one(t, sites[0], namer), ModelError);
}

TEST(Eliminate, UniversalRewriteDropsDoubleNegation) {
  WeightedTheory t = T("exists x ~forall y P(x,y)\n");
  ElimSite ex;
  WeightedTheory r = rewrite_universal_site(t, internal_sites(t).at(0), &ex);
  EXPECT_EQ(to_string(r.sentences()[0]), "exists x exists y ~P(x,y)");
  EXPECT_TRUE(formula_at(r, ex).is(Formula::Kind::Exists));
}

TEST(Namer, SkipsTakenNames) {
  WeightedTheory t = T("forall x (Z0(x) | Sk1(x))\nexists x P(x)\n");
  FreshNamer namer(t);
  int k = namer.next_index({"Z", "Sk"});
  EXPECT_EQ(k, 2);
}

TEST(Skolemize, ResultIsSkolemForm) {
  WeightedTheory t = T("forall x ((exists y Parent(y,x)) -> (forall z exists u Knows(z,u)))\n");
  WeightedTheory r = skolemize(t);
  EXPECT_EQ(count_internal_quantifiers(r), 0u);
  for (const auto& s : r.sentences()) {
    NormalForm nf = classify_sentence(s);
    EXPECT_TRUE(nf == NormalForm::Skolem || nf == NormalForm::FoCnf) << to_string(s);
  }
  for (int n = 1; n <= 2; ++n) EXPECT_EQ(naive::wfomc(r, dom(n), 24), naive::wfomc(t, dom(n)));
}

TEST(Skolemize, ShortcutHasNoTseitinPredicate) {
  WeightedTheory t = T("forall x forall y exists z (R(x,z) & ~R(z,y))\n");
  SkolemizeStats st;
  WeightedTheory r = skolemize(t, {}, &st);
  EXPECT_FALSE(mentions(r, "Z"));
  EXPECT_EQ(st.shortcut_steps, 1);
  EXPECT_EQ(r.sentences().size(), 1u);
  EXPECT_EQ(to_string(r.sentences()[0]), "forall x forall y forall z (Sk0(x,y) | ~(R(x,z) & ~R(z,y)))");
  EXPECT_THROW(skolemize_prenex_shortcut(T("forall x ((exists y P(x,y)) | Q(x))\n")), ModelError);
}

TEST(Skolemize, WeightsOfOriginalPredicatesUntouched) {
  WeightedTheory t = T("weight P 1 2 -1\nexists x P(x)\n");
  WeightedTheory r = skolemize(t);
  EXPECT_EQ(r.weights().get({"P", 1}), t.weights().get({"P", 1}));
}

TEST(NormalForms, PreserveCounts) {
  for (std::uint64_t s = 0; s < 150; ++s) {
    GenConfig cfg;
    cfg.seed = s;
    WeightedTheory t = gen_theory(cfg);
    for (int n = 1; n <= 2; ++n) {
      if (static_cast<int>(t.constants().size()) > n) continue;
      auto d = Domain::of_size(n, t.constants()).constants();
      Weight want = naive::wfomc(t, d);
      EXPECT_EQ(naive::wfomc(to_nnf(t), d), want) << serialize_theory(t);
      WeightedTheory p = to_prenex(t);
      EXPECT_EQ(naive::wfomc(p, d), want) << serialize_theory(t);
      for (const auto& sentence : p.sentences()) EXPECT_NE(classify_sentence(sentence), NormalForm::Arbitrary);
    }
  }
}

TEST(Cnf, DistributionAndTseitinPreserveCounts) {
  for (std::uint64_t s = 0; s < 150; ++s) {
    GenConfig cfg;
    cfg.seed = 5000 + s;
    cfg.max_quantifier_depth = s % 2 ? 2 : 0;
    WeightedTheory t = skolemize(gen_theory(cfg));
    for (int n = 1; n <= 2; ++n) {
      if (static_cast<int>(t.constants().size()) > n) continue;
      auto d = Domain::of_size(n, t.constants()).constants();
      Weight want;
      try {
        want = naive::wfomc(t, d, 18);
      } catch (const std::runtime_error&) {
        continue;
      }
      WeightedTheory dist = to_cnf_distribute(t);
      for (const auto& c : dist.sentences()) EXPECT_TRUE(classify_sentence(c) == NormalForm::FoCnf) << to_string(c);
      EXPECT_EQ(naive::wfomc(dist, d), want);
      EXPECT_EQ(count_of(to_cnf_tseitin(t), d), want);
    }
  }
}

TEST(Cnf, UnitPropagationOnBossTheory) {
  WeightedTheory t = T("forall x exists y (WorksFor(x,y) | Boss(x))\n");
  SkolemizeOptions so;
  so.prenex_shortcut = false;
  WeightedTheory r = unit_propagate(to_cnf_distribute(skolemize(t, so)));
  ASSERT_EQ(r.sentences().size(), 2u);
  EXPECT_EQ(to_string(r.sentences()[0]), "forall x forall y (Sk0(x) | ~WorksFor(x,y))");
  EXPECT_EQ(to_string(r.sentences()[1]), "forall x (Sk0(x) | ~Boss(x))");
  for (int n = 1; n <= 2; ++n) EXPECT_EQ(naive::wfomc(r, dom(n)), naive::wfomc(t, dom(n)));
}

TEST(Cnf, UnitPropagationKeepsWeightAsFactor) {
  WeightedTheory t = T("weight P 1 3 1\nforall x P(x)\nforall x (~P(x) | Q(x))\n");
  WeightedTheory r = unit_propagate(t);
  EXPECT_FALSE(r.has_predicate({"P", 1}));
  for (int n = 1; n <= 3; ++n) EXPECT_EQ(naive::wfomc(r, dom(n)), naive::wfomc(t, dom(n)));
  WeightedTheory u = unit_propagate(T("forall x P(x)\nforall x ~P(x)\n"));
  EXPECT_TRUE(u.unsatisfiable());
}

TEST(Cnf, UnitPropagationPreservesCountsOnRandomClauses) {
  for (std::uint64_t s = 0; s < 80; ++s) {
    GenConfig cfg;
    cfg.seed = 9000 + s;
    WeightedTheory t = to_cnf_distribute(skolemize(gen_theory(cfg)));
    WeightedTheory r = unit_propagate(t);
    for (int n = 1; n <= 2; ++n) {
      if (static_cast<int>(t.constants().size()) > n) continue;
      auto d = Domain::of_size(n, t.constants()).constants();
      try {
        EXPECT_EQ(naive::wfomc(r, d, 16), naive::wfomc(t, d, 16)) << serialize_theory(t);
      } catch (const std::runtime_error&) {
      }
    }
  }
}

}  // namespace wfomc
