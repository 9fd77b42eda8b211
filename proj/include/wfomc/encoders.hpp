#pragma once

#include <string>
#include <vector>

#include "wfomc/ground.hpp"
#include "wfomc/logic.hpp"
#include "wfomc/programs.hpp"

namespace wfomc {

/// A WFOMC encoding of a probabilistic model. `query_ready` is the
/// skolemized clausal form of `theory`; queries are conjoined to it.
struct WfomcEncoding {
  WeightedTheory theory;
  WeightedTheory query_ready;
};

/// Skolemizes and clausifies `delta` (no unit propagation, so any query
/// over the original predicates can still be conjoined).
WfomcEncoding make_encoding(WeightedTheory delta);

/// One parameter predicate P{k} per soft formula: `forall xs (P(xs) <-> phi)`
/// with P weighted (e^w, 1) in floating point. Hard formulas become plain
/// constraints closed over their free variables.
WfomcEncoding encode_mln(const MlnModel& m);

struct MlnOracleOptions {
  std::size_t max_atoms = 20;
};

/// Enumerates every world of the grounded MLN. Returns Pr(query).
double mln_oracle(const MlnModel& m, const Domain& d, const Formula& query, const MlnOracleOptions& opts = {});
/// Sum of world weights (hard violations weigh 0).
double mln_partition_function(const MlnModel& m, const Domain& d, const MlnOracleOptions& opts = {});

struct TightnessReport {
  bool tight = true;
  std::vector<std::string> cycle;  // p, q, ..., p when not tight
};

/// Cycle check on the dependency graph of positive body literals.
TightnessReport tightness_check(const LogicProgram& p);

/// Completion `forall xs (P(xs) <-> rule bodies)` per derived predicate and
/// `forall xs ~P(xs)` for predicates that are neither derived nor facts.
/// Facts sharing a predicate with other facts or rules are routed through
/// auxiliary predicates. Throws TightnessError on a positive loop.
WeightedTheory clarks_completion(const LogicProgram& p);

/// Completion plus fact weights (p, 1-p).
WfomcEncoding encode_problog(const LogicProgram& p);

struct ProblogOracleOptions {
  std::size_t max_facts = 20;  // ground probabilistic facts
};

/// Enumerates fact worlds and evaluates the query in each world's minimal
/// model. Needs a stratified program.
Rational problog_oracle(const LogicProgram& p, const Domain& d, const Formula& query,
                        const ProblogOracleOptions& opts = {});

/// Probability of the fact world in which exactly `true_facts` hold.
Rational problog_world_weight(const LogicProgram& p, const Domain& d, const std::vector<Atom>& true_facts);

/// Minimal model of the rules on top of the ground facts `facts`.
std::vector<Atom> problog_minimal_model(const LogicProgram& p, const Domain& d, const std::vector<Atom>& facts);

/// WFOMC(query_ready & phi) / WFOMC(query_ready). Exact when every weight is
/// exact. Throws ModelError when the denominator is zero.
Weight query_probability(const WfomcEncoding& e, const Domain& d, const Formula& phi, const CountOptions& opts = {});

/// `t` with `phi` appended; predicates of `phi` join the signature.
WeightedTheory conjoin(const WeightedTheory& t, const Formula& phi);

}  // namespace wfomc
