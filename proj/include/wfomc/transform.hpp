#pragma once

#include <initializer_list>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "wfomc/logic.hpp"

namespace wfomc {

/// Hands out predicate names that are not in the theory's signature and were
/// not handed out before. Prefixes that are passed together share a counter,
/// so `next_index({"Z", "Sk"})` yields k with both Zk and Skk free.
class FreshNamer {
 public:
  FreshNamer() = default;
  explicit FreshNamer(const WeightedTheory& t);

  void reserve(const std::string& name) { reserved_.insert(name); }
  int next_index(std::initializer_list<std::string_view> prefixes);
  std::string fresh(std::string_view prefix) { return std::string(prefix) + std::to_string(next_index({prefix})); }

 private:
  std::set<std::string> reserved_;
  std::map<std::string, int> counters_;
};

/// A quantifier node inside a sentence: child indices from the sentence root.
struct ElimSite {
  std::size_t sentence = 0;
  std::vector<std::size_t> path;

  friend bool operator==(const ElimSite&, const ElimSite&) = default;
};

/// Node at `site`; throws ModelError if the path does not exist.
const Formula& formula_at(const WeightedTheory& t, const ElimSite& site);

/// Quantifier nodes outside each sentence's leading block of universals,
/// innermost first, then left to right (post-order), sentence by sentence.
std::vector<ElimSite> internal_sites(const WeightedTheory& t);
std::size_t count_internal_quantifiers(const WeightedTheory& t);

Formula to_nnf(const Formula& f);
/// Assumes bound variables are distinct; clashing names are still renamed.
Formula to_prenex(const Formula& f);
WeightedTheory to_nnf(const WeightedTheory& t);
WeightedTheory to_prenex(const WeightedTheory& t);

/// Replaces the universal at `site` by ~exists x ~phi (double negation
/// dropped). `existential` receives the site of the new existential.
WeightedTheory rewrite_universal_site(const WeightedTheory& t, const ElimSite& site, ElimSite* existential = nullptr);

struct EliminationOptions {
  Weight skolem_false_weight = -1;
};

/// One elimination step on the existential at `site`: the subformula becomes
/// Z(ys) and three sentences are appended,
///   forall ys forall x (Z(ys) | ~phi),  forall ys (S(ys) | Z(ys)),
///   forall ys forall x (S(ys) | ~phi)
/// with Z weighted (1,1) and S weighted (1,-1).
WeightedTheory eliminate_one(const WeightedTheory& t, const ElimSite& site, FreshNamer& namer,
                             const EliminationOptions& opts = {});

/// Replaces a sentence `forall ys exists xs phi` (phi quantifier-free) by the
/// single sentence `forall ys forall xs (S(ys) | ~phi)`. No Z predicate.
WeightedTheory eliminate_prenex(const WeightedTheory& t, std::size_t sentence, FreshNamer& namer,
                                const EliminationOptions& opts = {});

/// True for `forall* exists+ phi` with phi quantifier-free.
bool has_shortcut_form(const Formula& sentence);

struct SkolemizeOptions {
  /// Route `forall ys exists xs phi` sentences to eliminate_prenex.
  bool prenex_shortcut = true;
  Weight skolem_false_weight = -1;
  /// Turn universal sites into ~exists~ before eliminating. Disabling this is
  /// unsound and only exists for mutation tests.
  bool negate_universal_sites = true;
};

struct SkolemizeStats {
  int eliminations = 0;  // Def-3 steps plus shortcut steps
  int shortcut_steps = 0;
};

/// Eliminates every internal quantifier, innermost first. The result has
/// only universal prefixes.
WeightedTheory skolemize(const WeightedTheory& t, const SkolemizeOptions& opts = {}, SkolemizeStats* stats = nullptr);

/// Strict variant for prenex input: every sentence must be `forall* exists*
/// phi` with phi quantifier-free, and each existential block goes through
/// eliminate_prenex. Throws ModelError otherwise.
WeightedTheory skolemize_prenex_shortcut(const WeightedTheory& t, const EliminationOptions& opts = {});

/// Each clause of the distributed matrix becomes its own sentence, quantified
/// over the variables it uses. Requires Skolem normal form.
WeightedTheory to_cnf_distribute(const WeightedTheory& t);

/// Clausal form via definition predicates `T{k}` (weights (1,1), full
/// equivalences, so each model extends uniquely). Requires Skolem normal form.
WeightedTheory to_cnf_tseitin(const WeightedTheory& t);
WeightedTheory to_cnf_tseitin(const WeightedTheory& t, FreshNamer& namer);

/// First-order unit propagation on a clausal theory. A unit `forall xs L(xs)`
/// over distinct variables fixes its predicate: clauses it satisfies are
/// deleted, the opposite literal is removed, the predicate leaves the
/// signature and its forced weight is kept as a Factor. Deriving the empty
/// clause marks the theory unsatisfiable.
WeightedTheory unit_propagate(const WeightedTheory& t);

/// Clause helpers shared by the CNF code and the counters.
struct ClauseParts {
  std::vector<std::string> vars;  // universal prefix
  std::vector<Formula> literals;  // empty for False
};
/// Splits `forall xs clause`; throws ModelError if the sentence is not one.
ClauseParts split_clause(const Formula& sentence);
/// Rebuilds a clause sentence quantified over the variables it uses, in the
/// order given by `order` (variables missing from `order` follow).
Formula make_clause(const std::vector<Formula>& literals, const std::vector<std::string>& order = {});

}  // namespace wfomc
