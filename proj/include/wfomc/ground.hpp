#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "wfomc/logic.hpp"

namespace wfomc {

/// Every ground atom over the signature, ordered by predicate (name, arity)
/// and then by argument tuple in domain order.
struct HerbrandBase {
  std::vector<Atom> atoms;

  std::size_t size() const { return atoms.size(); }
  /// Position of a ground atom, or -1.
  long index_of(const Atom& a, const Domain& d) const;

  std::vector<Predicate> predicates;
  std::vector<std::size_t> offsets;  // per predicate, into atoms
};

HerbrandBase herbrand_base(const WeightedTheory& t, const Domain& d);

/// Propositional formula over atom indices, stored as a node table. The
/// builders fold constants, so True/False only survive as the whole formula.
class GroundFormula {
 public:
  enum class Op : std::uint8_t { True, False, Var, Not, And, Or, Implies, Iff };
  struct Node {
    Op op;
    int var = -1;
    std::vector<int> kids;
  };

  GroundFormula();

  int constant(bool value) const { return value ? 0 : 1; }
  int var(int v);
  int negation(int a);
  int nary(Op op, std::vector<int> kids);  // And / Or
  int implies(int a, int b);
  int iff(int a, int b);

  const Node& node(int i) const { return nodes_[i]; }
  std::size_t size() const { return nodes_.size(); }
  int root() const { return root_; }
  void set_root(int r) { root_ = r; }

  /// Direct evaluation; the reference semantics for the counters.
  bool evaluate(const std::vector<bool>& assignment) const;
  bool evaluate(int node, const std::vector<bool>& assignment) const;
  /// Variables reachable from the root.
  std::vector<bool> occurring(std::size_t num_vars) const;

 private:
  int add(Node n);

  std::vector<Node> nodes_;
  std::vector<int> var_nodes_;
  int root_ = 0;
};

struct GroundProblem {
  std::vector<Atom> atoms;          // the Herbrand base
  std::vector<WeightPair> weights;  // per atom, inherited from its predicate
  GroundFormula formula;
  /// Product of the theory's factors; multiplies the count.
  Weight multiplier = 1;
  /// Every weight is an exact rational (otherwise counting runs in double).
  bool exact = true;
};

/// Expands quantifiers over `d` and conjoins the sentences. Throws
/// DomainError when a constant of `t` is not in `d`.
GroundProblem ground(const WeightedTheory& t, const Domain& d);

/// Grounds the closed formula `f` into `out` over the atoms of `hb` and
/// returns its node.
int ground_formula(GroundFormula& out, const Formula& f, const HerbrandBase& hb, const Domain& d);

/// Clausal form of a ground problem: variables are 1-based, clauses use
/// signed literals. Tseitin variables (weight (1,1)) follow the atoms.
struct GroundCnf {
  int num_vars = 0;
  std::vector<std::vector<int>> clauses;
  std::vector<WeightPair> weights;  // per variable, index v-1
  Weight multiplier = 1;
  bool exact = true;
};

GroundCnf to_ground_cnf(const GroundProblem& g);
/// DIMACS with `c wght <lit> <w>` weight lines and `c atom <v> <atom>` names.
std::string export_dimacs(const GroundProblem& g);

struct BruteForceOptions {
  /// Cap on the number of atoms that occur in the formula (the others are
  /// summed out analytically).
  std::size_t max_atoms = 26;
  unsigned workers = 1;
};

/// Sum over all assignments satisfying the formula of the product of literal
/// weights, times the multiplier. Exact when `g.exact`, double otherwise.
/// Throws ResourceError above the cap.
Weight wmc_bruteforce(const GroundProblem& g, const BruteForceOptions& opts = {});

/// Exhaustive DPLL with unit propagation, component decomposition and a
/// component cache. Same value as wmc_bruteforce.
Weight wmc_dpll(const GroundProblem& g);
Weight wmc_dpll(const GroundCnf& cnf);

enum class Engine { Brute, Dpll, Auto };

struct CountOptions {
  Engine engine = Engine::Auto;
  std::size_t max_atoms = 26;
  unsigned workers = 1;
};

/// WFOMC(t, d): the WMC of the grounding under predicate-inherited weights.
/// Auto picks brute force within the cap and DPLL beyond it.
Weight wfomc(const WeightedTheory& t, const Domain& d, const CountOptions& opts = {});

/// Domain for counting `t`: the given constants must include all of the
/// theory's constants.
void check_domain(const WeightedTheory& t, const Domain& d);

}  // namespace wfomc
