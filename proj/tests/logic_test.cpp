#include <gtest/gtest.h>

#include <cmath>

#include "wfomc/error.hpp"
#include "wfomc/frontends.hpp"
#include "wfomc/logic.hpp"

namespace wfomc {

namespace {

Formula F(const char* s) { return parse_formula(s); }

}  // namespace

TEST(Weight, ParsesExactAndFloat) {
  EXPECT_EQ(Weight::parse("3/10"), Weight(Rational(3, 10)));
  EXPECT_EQ(Weight::parse("0.3"), Weight(Rational(3, 10)));
  EXPECT_EQ(Weight::parse("-1"), Weight(-1));
  EXPECT_EQ(Weight::parse("1e-2"), Weight(Rational(1, 100)));
  EXPECT_TRUE(Weight::parse("3/10").is_exact());
  EXPECT_FALSE(Weight::parse("2.5f").is_exact());
  EXPECT_NEAR(Weight::parse("exp(1.3)").to_double(), std::exp(1.3), 1e-15);
}

TEST(Weight, MixedArithmeticPromotesToFloat) {
  Weight a = Weight(Rational(1, 2)) + Weight::from_double(0.25);
  EXPECT_FALSE(a.is_exact());
  EXPECT_DOUBLE_EQ(a.to_double(), 0.75);
  EXPECT_EQ(pow(Weight(Rational(-1, 3)), 3), Weight(Rational(-1, 27)));
}

TEST(Weight, StrRoundTrips) {
  for (const char* s : {"3/10", "-7", "0", "2.5f", "0.1f"}) EXPECT_EQ(Weight::parse(Weight::parse(s).str()), Weight::parse(s)) << s;
}

TEST(Formula, FreeVariablesInOrder) {
  Formula f = F("exists y (WorksFor(x,y) | Boss(x))");
  EXPECT_EQ(free_vars_ordered(f), std::vector<std::string>{"x"});
  EXPECT_TRUE(free_vars(F("forall x (Stress(x) -> Smokes(x))")).empty());
  EXPECT_EQ(free_vars_ordered(F("P(z,x) & Q(y) & P(x,z)")), (std::vector<std::string>{"z", "x", "y"}));
}

TEST(Formula, SubstituteAvoidsCapture) {
  Formula f = F("exists y P(x,y)");
  Formula g = substitute(f, {{"x", Term::variable("y")}});
  EXPECT_EQ(free_vars_ordered(g), std::vector<std::string>{"y"});
  EXPECT_NE(g.variable(), "y");
  EXPECT_EQ(substitute(F("P(x) & Q(x)"), {{"x", Term::constant("A")}}), F("P(A) & Q(A)"));
  EXPECT_THROW(substitute(F("exists x P(x)"), {{"x", Term::constant("A")}}), ModelError);
}

TEST(Formula, Classification) {
  EXPECT_EQ(classify_sentence(F("forall x (Stress(x) -> Smokes(x))")), NormalForm::Skolem);
  EXPECT_EQ(classify_sentence(F("forall x exists y (P(x) -> Q(y))")), NormalForm::Prenex);
  EXPECT_EQ(classify_sentence(F("forall x forall y (S(x) | ~F(x,y))")), NormalForm::FoCnf);
  EXPECT_EQ(classify_sentence(F("forall x exists y (WorksFor(x,y) | Boss(x))")), NormalForm::PrenexClausal);
  EXPECT_EQ(classify_sentence(F("forall x ((exists y P(x,y)) -> Q(x))")), NormalForm::Arbitrary);
  EXPECT_TRUE(is_clause(F("~P | Q | R")));
  EXPECT_FALSE(is_clause(F("P & Q")));
}

TEST(Formula, Size) {
  EXPECT_EQ(size(F("P")), 1u);
  EXPECT_EQ(size(F("forall x (P(x) | ~Q(x))")), 5u);
}

TEST(Theory, RejectsFreeVariablesAndArityClash) {
  WeightedTheory t;
  EXPECT_THROW(t.add_sentence(F("P(x)")), ModelError);
  t.add_sentence(F("forall x P(x)"));
  EXPECT_THROW(t.add_sentence(F("forall x forall y P(x,y)")), ModelError);
}

TEST(Theory, SignatureKeepsDeclaredPredicates) {
  WeightedTheory t;
  t.declare({"Q", 2});
  t.add_sentence(F("forall x P(x)"));
  auto sig = t.signature();
  EXPECT_EQ(sig.size(), 2u);
  EXPECT_TRUE(t.has_predicate({"Q", 2}));
}

TEST(Domain, OfSizeKeepsNamedConstants) {
  Domain d = Domain::of_size(3, {"A"});
  EXPECT_EQ(d.constants(), (std::vector<std::string>{"A", "C1", "C2"}));
  Domain e = Domain::of_size(2, {"C1"});
  EXPECT_EQ(e.constants(), (std::vector<std::string>{"C1", "C2"}));
  EXPECT_THROW(Domain::of_size(1, {"A", "B"}), DomainError);
  EXPECT_THROW(Domain(std::vector<std::string>{}), DomainError);
  EXPECT_THROW(Domain(std::vector<std::string>{"A", "A"}), DomainError);
}

TEST(Theory, StandardizeApart) {
  WeightedTheory t;
  t.add_sentence(F("(forall x P(x)) & (exists x Q(x))"));
  auto s = standardize_apart(t);
  auto bv = bound_vars(s.sentences()[0]);
  EXPECT_EQ(bv.size(), 2u);
  WeightedTheory u;
  u.add_sentence(F("forall x exists y R(x,y)"));
  EXPECT_EQ(standardize_apart(u), u);
}

}  // namespace wfomc
