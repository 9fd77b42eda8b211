#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "wfomc/encoders.hpp"
#include "wfomc/ground.hpp"
#include "wfomc/transform.hpp"

namespace wfomc {

struct GenConfig {
  int max_predicates = 3;
  int max_arity = 2;
  int max_quantifier_depth = 3;
  int max_connective_depth = 3;
  int max_sentences = 2;
  std::vector<int> sizes{1, 2};
  std::vector<Rational> weight_pool{1, 2, Rational(1, 2), -1, 3, Rational(-1, 3), 0};
  /// Chance that an argument is the constant A instead of a bound variable.
  double constant_rate = 0.1;
  std::uint64_t seed = 0;
};

/// Draws are `rng() % n` on a 64-bit Mersenne twister, so a seed gives the
/// same instance on every platform.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}
  std::uint64_t below(std::uint64_t n) { return rng_() % n; }
  bool chance(double p) { return static_cast<double>(rng_() % 1'000'000) < p * 1'000'000; }
  template <class T>
  const T& pick(const std::vector<T>& v) {
    return v[below(v.size())];
  }

 private:
  std::mt19937_64 rng_;
};

WeightedTheory gen_theory(const GenConfig& cfg);
/// Conjunction of 1-3 ground literals over the theory's predicates and the
/// domain's constants.
Formula gen_query(Gen& g, const WeightedTheory& t, const Domain& d);

struct GroundGenConfig {
  int max_atoms = 20;
  std::vector<Rational> weight_pool{1, 2, Rational(1, 2), -1, 3, Rational(-2, 5)};
  bool force_unsat = false;
  bool clausal = true;
};
GroundProblem gen_ground_problem(Gen& g, const GroundGenConfig& cfg);

/// Tight, stratified program: probabilistic facts on F-predicates and rules
/// for D-predicates that only use earlier predicates.
LogicProgram gen_program(Gen& g);
MlnModel gen_mln(Gen& g);

enum class CheckStatus { Pass, Fail, Unsupported };

struct CheckReport {
  CheckStatus status = CheckStatus::Pass;
  int domain_size = 0;  // smallest failing size
  Weight expected, actual;
  std::string detail;

  bool ok() const { return status != CheckStatus::Fail; }
};

struct CheckOptions {
  SkolemizeOptions skolemize;
  CountOptions count;
};

/// WFOMC(t) = WFOMC(skolemize(t)) at every size.
CheckReport check_soundness(const WeightedTheory& t, const std::vector<int>& sizes, const CheckOptions& opts = {});

/// WFOMC(t & phi) = WFOMC(skolemize(t) & phi), phi conjoined after
/// Skolemization. Unsupported when phi uses a predicate outside t.
CheckReport check_modularity(const WeightedTheory& t, const Formula& phi, const std::vector<int>& sizes,
                             const CheckOptions& opts = {});

/// The four intermediate theories of the elimination proof for one site.
struct Ladder {
  /// original, isolated, split, feature (S weighted (1,0)), implication (S (1,-1))
  std::vector<WeightedTheory> stages;
  /// Stage 2 without the sentence that stages 3 and 4 replace.
  WeightedTheory gamma;
  Predicate z, s;
  std::vector<std::string> ys;
  /// exists x (~Z(ys) | phi), the formula S is tied to.
  Formula sigma;
};

inline constexpr const char* kLadderStageNames[] = {"original", "isolate the quantifier", "split the equivalence",
                                                    "convert to a feature", "convert to an implication"};

/// A universal site is first rewritten to ~exists~.
Ladder proof_ladder(const WeightedTheory& t, const ElimSite& site);

struct CaseRow {
  bool sigma;
  bool s;
  Weight measured;   // WFOMC(stage & Sigma(A)^sigma & S(A)^s)
  Weight predicted;  // the table's entry, from counts of gamma
};

/// Case table for stage 3 or 4 on a domain with a single grounding of ys.
std::vector<CaseRow> case_table(const Ladder& l, int stage, const Domain& d, const CountOptions& opts = {});

CheckReport check_proof_ladder(const WeightedTheory& t, const ElimSite& site, const std::vector<int>& sizes,
                               const CountOptions& opts = {});

/// Greedy minimization: drops sentences and replaces subformulas while
/// `fails` keeps returning true.
WeightedTheory shrink(const WeightedTheory& t, const std::function<bool(const WeightedTheory&)>& fails);

struct RunSummary {
  int runs = 0;
  int failures = 0;
  int unsupported = 0;
  std::optional<std::uint64_t> first_failing_seed;
  std::string counterexample;  // shrunk theory and sizes
};

/// check_soundness over `seeds` consecutive seeds starting at cfg.seed.
RunSummary run_soundness(const GenConfig& cfg, int seeds, const CheckOptions& opts = {}, bool stop_at_first = false);
/// check_modularity over `seeds` (theory, query) pairs.
RunSummary run_modularity(const GenConfig& cfg, int seeds, const CheckOptions& opts = {});

}  // namespace wfomc
