#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "wfomc/weight.hpp"

namespace wfomc {

/// P/n. Identity is the (name, arity) pair.
struct Predicate {
  std::string name;
  int arity = 0;

  auto operator<=>(const Predicate&) const = default;
};

std::string to_string(const Predicate& p);

/// True for `[A-Za-z][A-Za-z0-9_]*`.
bool is_identifier(std::string_view s);

class Term {
 public:
  enum class Kind : std::uint8_t { Constant, Variable };

  static Term constant(std::string name) { return Term(Kind::Constant, std::move(name)); }
  static Term variable(std::string name) { return Term(Kind::Variable, std::move(name)); }

  Kind kind() const { return kind_; }
  bool is_variable() const { return kind_ == Kind::Variable; }
  bool is_constant() const { return kind_ == Kind::Constant; }
  const std::string& name() const { return name_; }

  auto operator<=>(const Term&) const = default;

 private:
  Term(Kind k, std::string n) : kind_(k), name_(std::move(n)) {}

  Kind kind_;
  std::string name_;
};

struct Atom {
  Atom(Predicate p, std::vector<Term> a);

  Predicate pred;
  std::vector<Term> args;

  auto operator<=>(const Atom&) const = default;
};

/// Immutable function-free first-order formula. Copies share structure.
/// And/Or are n-ary (the parser produces one node per `a | b | c` chain).
class Formula {
 public:
  enum class Kind : std::uint8_t { True, False, Atom, Not, And, Or, Implies, Iff, ForAll, Exists };

  Formula();  // True

  static Formula top();
  static Formula bottom();
  static Formula atom(wfomc::Atom a);
  static Formula negation(Formula f);
  /// 0 operands give True/False, a single operand is returned unchanged.
  static Formula conj(std::vector<Formula> fs);
  static Formula disj(std::vector<Formula> fs);
  static Formula conj(Formula a, Formula b) { return conj(std::vector<Formula>{std::move(a), std::move(b)}); }
  static Formula disj(Formula a, Formula b) { return disj(std::vector<Formula>{std::move(a), std::move(b)}); }
  static Formula implies(Formula a, Formula b);
  static Formula iff(Formula a, Formula b);
  static Formula forall(std::string var, Formula body);
  static Formula exists(std::string var, Formula body);
  /// Wraps `body` in one quantifier per variable, outermost first.
  static Formula forall(const std::vector<std::string>& vars, Formula body);
  static Formula quantifier(Kind k, std::string var, Formula body);
  /// Same kind and payload as `f`, new children.
  static Formula rebuild(const Formula& f, std::vector<Formula> children);

  Kind kind() const;
  bool is(Kind k) const { return kind() == k; }
  bool is_quantifier() const { return is(Kind::ForAll) || is(Kind::Exists); }
  bool is_literal() const;

  const wfomc::Atom& atom() const;
  std::span<const Formula> children() const;
  const Formula& child(std::size_t i) const { return children()[i]; }
  /// Bound variable of a quantifier node.
  const std::string& variable() const;
  const Formula& body() const { return child(0); }

  /// Structural equality (no alpha-equivalence).
  friend bool operator==(const Formula& a, const Formula& b);

  struct Node;  // defined in logic.cpp

 private:
  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

  std::shared_ptr<const Node> node_;
};

std::string to_string(Formula::Kind k);

/// Variables with an unbound occurrence.
std::set<std::string> free_vars(const Formula& f);
/// Same set, in order of first (left-to-right) occurrence.
std::vector<std::string> free_vars_ordered(const Formula& f);
std::set<std::string> bound_vars(const Formula& f);

using Binding = std::map<std::string, Term>;

/// Capture-avoiding substitution of free variables. Throws ModelError when a
/// key only occurs bound in `f`.
Formula substitute(const Formula& f, const Binding& binding);

std::set<Predicate> predicates(const Formula& f);
/// Constants in order of first occurrence.
std::vector<std::string> constants(const Formula& f);
/// Number of nodes.
std::size_t size(const Formula& f);
bool is_quantifier_free(const Formula& f);
/// Negation that collapses a double negation.
Formula negate(const Formula& f);

/// Printed in the `.fol` surface syntax, e.g. `forall x (Stress(x) -> Smokes(x))`.
std::string to_string(const Formula& f);
std::string to_string(const Atom& a);

struct WeightPair {
  Weight w_true = 1;
  Weight w_false = 1;

  friend bool operator==(const WeightPair&, const WeightPair&) = default;
};

/// Predicate weights; unmapped predicates weigh (1, 1). Weights may be negative.
class WeightFn {
 public:
  WeightPair get(const Predicate& p) const;
  void set(const Predicate& p, WeightPair w) { explicit_[p] = std::move(w); }
  void erase(const Predicate& p) { explicit_.erase(p); }
  bool contains(const Predicate& p) const { return explicit_.contains(p); }
  const std::map<Predicate, WeightPair>& entries() const { return explicit_; }

  friend bool operator==(const WeightFn&, const WeightFn&) = default;

 private:
  std::map<Predicate, WeightPair> explicit_;
};

/// Contributes base^(|D|^arity) to every count: the weight of a predicate
/// that unit propagation fixed to one truth value and removed.
struct Factor {
  Weight base;
  int arity = 0;

  friend bool operator==(const Factor&, const Factor&) = default;
};

/// A conjunction of sentences, its predicate signature and weights.
///
/// The signature is every predicate the count ranges over: all predicates of
/// the sentences, every weighted predicate and anything declared. A predicate
/// can outlive its last occurrence (its atoms then contribute w_true + w_false
/// each), so transformations carry the signature along explicitly.
class WeightedTheory {
 public:
  /// Throws ModelError for free variables or an arity clash.
  void add_sentence(Formula f);
  void replace_sentence(std::size_t i, Formula f);
  void declare(const Predicate& p);
  void set_weight(const Predicate& p, WeightPair w);
  /// Drops a predicate that no longer occurs in any sentence.
  void remove_predicate(const Predicate& p);
  void add_factor(Factor f) { factors_.push_back(std::move(f)); }
  void set_unsatisfiable();

  const std::vector<Formula>& sentences() const { return sentences_; }
  const WeightFn& weights() const { return weights_; }
  std::vector<Predicate> signature() const;
  std::optional<int> arity_of(const std::string& name) const;
  bool has_predicate(const Predicate& p) const;
  const std::vector<Factor>& factors() const { return factors_; }
  bool unsatisfiable() const { return unsat_; }
  /// Constants used by any sentence, first occurrence order.
  std::vector<std::string> constants() const;
  /// True iff every weight and factor is an exact rational.
  bool exact() const;

  /// Copy with all sentences dropped; keeps signature, weights and factors.
  WeightedTheory without_sentences() const;

  friend bool operator==(const WeightedTheory&, const WeightedTheory&) = default;

 private:
  void check_sentence(const Formula& f) const;

  std::vector<Formula> sentences_;
  WeightFn weights_;
  std::map<std::string, int> arities_;
  std::vector<Factor> factors_;
  bool unsat_ = false;
};

/// Finite, ordered, duplicate-free and non-empty set of constants.
class Domain {
 public:
  explicit Domain(std::vector<std::string> constants);

  /// Exactly `n` constants: `named` first, then C1, C2, ... (skipping taken
  /// names). Throws DomainError if `named` has more than `n` entries.
  static Domain of_size(int n, const std::vector<std::string>& named = {});

  std::size_t size() const { return constants_.size(); }
  const std::vector<std::string>& constants() const { return constants_; }
  const std::string& operator[](std::size_t i) const { return constants_[i]; }
  std::optional<std::size_t> index_of(const std::string& c) const;
  bool contains(const std::string& c) const { return index_of(c).has_value(); }

 private:
  std::vector<std::string> constants_;
  std::map<std::string, std::size_t> index_;
};

/// Renames quantified variables so that no name is bound twice anywhere in
/// the theory (`x` becomes `x_1`, `x_2`, ...). Already-apart input is
/// returned unchanged.
WeightedTheory standardize_apart(const WeightedTheory& t);

enum class NormalForm { Arbitrary, Prenex, PrenexClausal, Skolem, FoCnf };

std::string to_string(NormalForm nf);
NormalForm classify_sentence(const Formula& f);
/// Strongest label that holds for every sentence.
NormalForm classify_normal_form(const WeightedTheory& t);

/// Disjunction of literals (a single literal, or False as the empty clause).
bool is_clause(const Formula& f);

}  // namespace wfomc
