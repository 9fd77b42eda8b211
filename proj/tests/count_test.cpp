#include <gtest/gtest.h>

#include "support/naive.hpp"
#include "wfomc/error.hpp"
#include "wfomc/frontends.hpp"
#include "wfomc/ground.hpp"
#include "wfomc/propcheck.hpp"
#include "wfomc/transform.hpp"

namespace wfomc {

namespace {

WeightedTheory T(const char* text) { return parse_theory(text).theory; }

Weight count(const WeightedTheory& t, int n, Engine e = Engine::Auto) {
  CountOptions o;
  o.engine = e;
  return wfomc(t, Domain::of_size(n, t.constants()), o);
}

}  // namespace

TEST(Ground, HerbrandBaseSize) {
  WeightedTheory t = T("forall x (Stress(x) -> Smokes(x))\n");
  EXPECT_EQ(herbrand_base(t, Domain::of_size(2)).atoms.size(), 4u);
  WeightedTheory w = T("forall x exists y (WorksFor(x,y) | Boss(x))\n");
  EXPECT_EQ(herbrand_base(w, Domain({"A", "B"})).atoms.size(), 6u);
}

TEST(Ground, RejectsDomainMissingConstant) {
  WeightedTheory t = T("Smokes(Alice)\n");
  EXPECT_THROW(wfomc(t, Domain({"Bob"})), DomainError);
}

TEST(Count, SmallExamples) {
  EXPECT_EQ(count(T("Stress(A) -> Smokes(A)\n"), 1), Weight(3));
  EXPECT_EQ(count(T("forall x (Stress(x) -> Smokes(x))\n"), 3), Weight(27));
  EXPECT_EQ(count(T("forall y (Parent(y) & Female -> Mother(y))\n"), 2), Weight(25));
  EXPECT_EQ(count(T("false\n"), 2), Weight(0));
  // An empty theory over a declared predicate counts its free atoms.
  EXPECT_EQ(count(T("weight P 1 2 3\n"), 2), Weight(25));
}

TEST(Count, ExponentiationLaw) {
  WeightedTheory t = T("weight Smokes 1 1/2 -1\nforall x (Stress(x) -> Smokes(x))\n");
  Weight one = count(t, 1);
  for (int n = 1; n <= 5; ++n) EXPECT_EQ(count(t, n), pow(one, n));
}

TEST(Count, FloatWeights) {
  WeightedTheory t = T("weight P 1 2.5f 1\nforall x P(x)\n");
  Weight w = count(t, 3);
  EXPECT_FALSE(w.is_exact());
  EXPECT_NEAR(w.to_double(), 15.625, 1e-12);
}

TEST(Count, MatchesNaiveOracle) {
  for (std::uint64_t s = 0; s < 200; ++s) {
    GenConfig cfg;
    cfg.seed = 20000 + s;
    WeightedTheory t = gen_theory(cfg);
    for (int n = 1; n <= 2; ++n) {
      if (static_cast<int>(t.constants().size()) > n) continue;
      Domain d = Domain::of_size(n, t.constants());
      Weight want = naive::wfomc(t, d.constants());
      EXPECT_EQ(wfomc(t, d, {Engine::Brute}), want) << serialize_theory(t);
      EXPECT_EQ(wfomc(t, d, {Engine::Dpll}), want) << serialize_theory(t);
    }
  }
}

TEST(Count, BruteForceCap) {
  WeightedTheory t = T("forall x forall y forall z (R(x,y,z) | ~R(z,y,x))\n");
  CountOptions o;
  o.engine = Engine::Brute;
  o.max_atoms = 20;
  EXPECT_THROW(wfomc(t, Domain::of_size(3), o), ResourceError);
  // Auto falls back to DPLL above the cap.
  o.engine = Engine::Auto;
  // R(x,y,z) <-> R(z,y,x): 9 self-paired atoms and 9 linked pairs.
  EXPECT_EQ(wfomc(t, Domain::of_size(3), o), pow(Weight(2), 18));
}

TEST(Count, WorkersAgree) {
  WeightedTheory t = T("weight S 1 1/3 -2\nforall x forall y (S(x) & F(x,y) -> S(y))\n");
  CountOptions one, four;
  four.workers = 4;
  four.engine = one.engine = Engine::Brute;
  EXPECT_EQ(wfomc(t, Domain::of_size(4), one), wfomc(t, Domain::of_size(4), four));
}

TEST(Dpll, AgreesWithBruteForceOnGroundInstances) {
  for (std::uint64_t s = 0; s < 300; ++s) {
    Gen g(s);
    GroundGenConfig cfg;
    cfg.max_atoms = 14;
    cfg.clausal = s % 2 == 0;
    cfg.force_unsat = s % 7 == 0;
    GroundProblem p = gen_ground_problem(g, cfg);
    Weight b = wmc_bruteforce(p);
    EXPECT_EQ(wmc_dpll(p), b) << "seed " << s;
    if (cfg.force_unsat) EXPECT_EQ(b, Weight(0));
  }
}

TEST(Dimacs, ExportListsAtomsAndWeights) {
  WeightedTheory t = T("weight Smokes 1 3/10 7/10\nforall x (Stress(x) -> Smokes(x))\n");
  std::string out = export_dimacs(ground(t, Domain({"A"})));
  EXPECT_NE(out.find("p cnf"), std::string::npos);
  EXPECT_NE(out.find("c atom"), std::string::npos);
  EXPECT_NE(out.find("3/10"), std::string::npos);
  EXPECT_NE(out.find("7/10"), std::string::npos);
}

TEST(Dimacs, GroundCnfCountsMatch) {
  for (std::uint64_t s = 0; s < 100; ++s) {
    GenConfig cfg;
    cfg.seed = 777 + s;
    WeightedTheory t = gen_theory(cfg);
    if (!t.constants().empty()) continue;
    GroundProblem g = ground(t, Domain::of_size(2));
    EXPECT_EQ(wmc_dpll(to_ground_cnf(g)), wmc_bruteforce(g));
  }
}

}  // namespace wfomc
