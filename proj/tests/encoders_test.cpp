#include <gtest/gtest.h>

#include <cmath>

#include "wfomc/encoders.hpp"
#include "wfomc/error.hpp"
#include "wfomc/frontends.hpp"
#include "wfomc/propcheck.hpp"

namespace wfomc {

namespace {

const char* kWorkshop = "0.1 :: Attends(x).\n0.3 :: ToSeries(x).\nSeries :- Attends(x), ToSeries(x).\n";
const char* kWorks = "1.3 exists y (WorksFor(x,y) | Boss(x))\n";

Domain named_domain(int n, const WfomcEncoding& e, const Formula& q) {
  std::vector<std::string> named = e.theory.constants();
  for (const auto& c : constants(q))
    if (std::find(named.begin(), named.end(), c) == named.end()) named.push_back(c);
  return Domain::of_size(std::max<int>(n, named.size()), named);
}

}  // namespace

TEST(Mln, EncodingShape) {
  WfomcEncoding e = encode_mln(parse_mln(kWorks));
  ASSERT_EQ(e.theory.sentences().size(), 1u);
  EXPECT_EQ(to_string(e.theory.sentences()[0]), "forall x (P0(x) <-> (exists y (WorksFor(x,y) | Boss(x))))");
  EXPECT_NEAR(e.theory.weights().get({"P0", 1}).w_true.to_double(), std::exp(1.3), 1e-12);
  EXPECT_EQ(count_internal_quantifiers(e.query_ready), 0u);
}

TEST(Mln, PartitionFunctionAtOneConstant) {
  MlnModel m = parse_mln(kWorks);
  double z = mln_partition_function(m, Domain({"A"}));
  EXPECT_NEAR(z, 3 * std::exp(1.3) + 1, 1e-9);
  WfomcEncoding e = encode_mln(m);
  EXPECT_NEAR(wfomc(e.theory, Domain({"A"})).to_double(), z, 1e-9);
  EXPECT_NEAR(wfomc(e.query_ready, Domain({"A"})).to_double(), z, 1e-9);
}

TEST(Mln, QueryAgainstOracle) {
  MlnModel m = parse_mln(kWorks);
  WfomcEncoding e = encode_mln(m);
  Formula q = parse_formula("Boss(A)");
  double want = 2 * std::exp(1.3) / (3 * std::exp(1.3) + 1);
  EXPECT_NEAR(mln_oracle(m, Domain({"A"}), q), want, 1e-12);
  EXPECT_NEAR(query_probability(e, Domain({"A"}), q).to_double(), want, 1e-9);
}

TEST(Mln, HardFormulasAreConstraints) {
  MlnModel m = parse_mln("inf forall x Smokes(x)\n0.5 Smokes(x) -> Cancer(x)\n");
  WfomcEncoding e = encode_mln(m);
  Domain d({"A", "B"});
  Formula q = parse_formula("Cancer(A)");
  EXPECT_NEAR(query_probability(e, d, q).to_double(), mln_oracle(m, d, q), 1e-9);
  EXPECT_NEAR(query_probability(e, d, parse_formula("Smokes(B)")).to_double(), 1.0, 1e-12);
}

TEST(Mln, GeneratedModelsAgreeWithOracle) {
  int checked = 0;
  for (std::uint64_t s = 0; s < 80; ++s) {
    Gen g(s);
    MlnModel m = gen_mln(g);
    WfomcEncoding e = encode_mln(m);
    Domain d = Domain::of_size(std::max<int>(1, e.theory.constants().size()), e.theory.constants());
    for (const auto& p : e.theory.signature()) {
      if (p.name[0] == 'P' && std::isdigit(static_cast<unsigned char>(p.name[1]))) continue;
      std::vector<Term> args(p.arity, Term::constant(d[0]));
      Formula q = Formula::atom(Atom(p, args));
      double want;
      try {
        want = mln_oracle(m, d, q);
      } catch (const ModelError&) {
        EXPECT_THROW(query_probability(e, d, q), ModelError);
        continue;
      }
      EXPECT_NEAR(query_probability(e, d, q).to_double(), want, 1e-9) << serialize_mln(m);
      ++checked;
    }
  }
  EXPECT_GT(checked, 50);
}

TEST(Problog, CompletionOfWorkshop) {
  LogicProgram p = parse_problog(kWorkshop);
  WeightedTheory c = clarks_completion(p);
  ASSERT_EQ(c.sentences().size(), 1u);
  EXPECT_EQ(to_string(c.sentences()[0]), "Series <-> (exists x (Attends(x) & ToSeries(x)))");
  WfomcEncoding e = encode_problog(p);
  EXPECT_EQ(e.theory.weights().get({"Attends", 1}), (WeightPair{Rational(1, 10), Rational(9, 10)}));
}

TEST(Problog, NoisyOr) {
  LogicProgram p = parse_problog(kWorkshop);
  WfomcEncoding e = encode_problog(p);
  for (int n = 1; n <= 3; ++n) {
    Weight pr = query_probability(e, Domain::of_size(n), parse_formula("Series"));
    Rational want = 1 - pow(Weight(Rational(97, 100)), n).exact();
    EXPECT_EQ(pr, Weight(want));
  }
}

TEST(Problog, WorldWeight) {
  LogicProgram p = parse_problog(kWorkshop);
  Domain d({"A", "B"});
  std::vector<Atom> world{Atom({"Attends", 1}, {Term::constant("A")}), Atom({"ToSeries", 1}, {Term::constant("A")})};
  EXPECT_EQ(problog_world_weight(p, d, world), Rational(189, 10000));
  auto model = problog_minimal_model(p, d, world);
  EXPECT_EQ(model.size(), 3u);
}

TEST(Problog, RejectsPositiveLoop) {
  LogicProgram p = parse_problog("0.5 :: E(x).\nPath(x) :- E(x).\nPath(x) :- Path(x), E(x).\n");
  TightnessReport r = tightness_check(p);
  EXPECT_FALSE(r.tight);
  EXPECT_EQ(r.cycle.front(), r.cycle.back());
  EXPECT_THROW(clarks_completion(p), TightnessError);
  EXPECT_TRUE(tightness_check(parse_problog(kWorkshop)).tight);
}

TEST(Problog, NegationAndSharedFacts) {
  LogicProgram p = parse_problog(
      "0.4 :: Rain.\n0.5 :: Rain.\n0.2 :: Sprinkler.\nWet :- Rain.\nWet :- Sprinkler.\nDry :- ~Wet.\n");
  WfomcEncoding e = encode_problog(p);
  Domain d({"A"});
  for (const char* q : {"Rain", "Wet", "Dry", "Wet & Sprinkler"}) {
    Formula f = parse_formula(q);
    EXPECT_EQ(query_probability(e, d, f), Weight(problog_oracle(p, d, f))) << q;
  }
  EXPECT_EQ(query_probability(e, d, parse_formula("Rain")), Weight(Rational(7, 10)));
}

TEST(Problog, GeneratedProgramsAgreeWithOracle) {
  int checked = 0;
  for (std::uint64_t s = 0; s < 150; ++s) {
    Gen g(s);
    LogicProgram p = gen_program(g);
    WfomcEncoding e = encode_problog(p);
    for (const auto& r : p.rules) {
      std::vector<Term> args(r.head.pred.arity, Term::constant("A"));
      Formula q = Formula::atom(Atom(r.head.pred, args));
      Domain d = named_domain(2, e, q);
      Rational want = problog_oracle(p, d, q);
      Weight got = query_probability(e, d, q);
      EXPECT_EQ(got, Weight(want)) << serialize_problog(p);
      ++checked;
    }
  }
  EXPECT_GT(checked, 100);
}

}  // namespace wfomc
