#include <cmath>
#include <map>

#include "wfomc/encoders.hpp"
#include "wfomc/error.hpp"

namespace wfomc {

namespace {

// Every tuple of domain constants of length k, in domain order.
std::vector<std::vector<std::string>> tuples(const Domain& d, std::size_t k) {
  std::vector<std::vector<std::string>> out{{}};
  for (std::size_t i = 0; i < k; ++i) {
    std::vector<std::vector<std::string>> next;
    for (const auto& t : out)
      for (const auto& c : d.constants()) {
        auto u = t;
        u.push_back(c);
        next.push_back(std::move(u));
      }
    out = std::move(next);
  }
  return out;
}

Binding bind_tuple(const std::vector<std::string>& vars, const std::vector<std::string>& values) {
  Binding b;
  for (std::size_t i = 0; i < vars.size(); ++i) b.emplace(vars[i], Term::constant(values[i]));
  return b;
}

Atom ground_atom(const Atom& a, const Binding& b) {
  std::vector<Term> args;
  for (const auto& t : a.args) {
    if (t.is_variable()) {
      auto it = b.find(t.name());
      if (it == b.end()) throw ModelError("unbound variable '" + t.name() + "'");
      args.push_back(it->second);
    } else {
      args.push_back(t);
    }
  }
  return Atom(a.pred, std::move(args));
}

std::vector<std::string> atom_vars(const std::vector<Atom>& atoms) {
  std::vector<std::string> out;
  for (const auto& a : atoms)
    for (const auto& t : a.args)
      if (t.is_variable() && std::find(out.begin(), out.end(), t.name()) == out.end()) out.push_back(t.name());
  return out;
}

void require_closed(const Formula& q) {
  if (auto free = free_vars_ordered(q); !free.empty())
    throw ModelError("query has free variable '" + free.front() + "'");
}

HerbrandBase base_over(const std::set<Predicate>& preds, const Domain& d) {
  WeightedTheory t;
  for (const auto& p : preds) t.declare(p);
  return herbrand_base(t, d);
}

struct MlnSums {
  double z = 0;
  double query = 0;
};

MlnSums mln_sums(const MlnModel& m, const Domain& d, const Formula* query, const MlnOracleOptions& opts) {
  std::set<Predicate> preds;
  for (const auto& f : m.formulas)
    for (const auto& p : predicates(f.formula)) preds.insert(p);
  if (query)
    for (const auto& p : predicates(*query)) preds.insert(p);
  HerbrandBase hb = base_over(preds, d);
  if (hb.size() > opts.max_atoms)
    throw ResourceError("MLN grounding has " + std::to_string(hb.size()) + " atoms, oracle cap is " +
                        std::to_string(opts.max_atoms));

  GroundFormula gf;
  struct Instances {
    double weight;
    bool hard;
    std::vector<int> nodes;
  };
  std::vector<Instances> ground;
  for (const auto& f : m.formulas) {
    auto vars = free_vars_ordered(f.formula);
    Instances inst{f.hard() ? 0.0 : f.weight->to_double(), f.hard(), {}};
    for (const auto& tup : tuples(d, vars.size()))
      inst.nodes.push_back(ground_formula(gf, substitute(f.formula, bind_tuple(vars, tup)), hb, d));
    ground.push_back(std::move(inst));
  }
  int q = query ? ground_formula(gf, *query, hb, d) : -1;

  MlnSums sums;
  const std::size_t n = hb.size();
  std::vector<bool> world(n);
  for (std::uint64_t bits = 0; bits < (1ULL << n); ++bits) {
    for (std::size_t i = 0; i < n; ++i) world[i] = (bits >> i) & 1;
    double exponent = 0;
    bool allowed = true;
    for (const auto& inst : ground) {
      int satisfied = 0;
      for (int node : inst.nodes) satisfied += gf.evaluate(node, world);
      if (inst.hard) {
        if (satisfied != static_cast<int>(inst.nodes.size())) {
          allowed = false;
          break;
        }
      } else {
        exponent += inst.weight * satisfied;
      }
    }
    if (!allowed) continue;
    double w = std::exp(exponent);
    sums.z += w;
    if (q >= 0 && gf.evaluate(q, world)) sums.query += w;
  }
  return sums;
}

}  // namespace

double mln_oracle(const MlnModel& m, const Domain& d, const Formula& query, const MlnOracleOptions& opts) {
  require_closed(query);
  MlnSums s = mln_sums(m, d, &query, opts);
  if (s.z == 0) throw ModelError("model has zero partition function");
  return s.query / s.z;
}

double mln_partition_function(const MlnModel& m, const Domain& d, const MlnOracleOptions& opts) {
  return mln_sums(m, d, nullptr, opts).z;
}

// ---------------------------------------------------------------------------

namespace {

struct GroundFact {
  Atom atom;
  Rational p;
};

std::vector<GroundFact> ground_facts(const LogicProgram& prog, const Domain& d) {
  std::vector<GroundFact> out;
  for (const auto& f : prog.facts) {
    auto vars = atom_vars({f.atom});
    for (const auto& tup : tuples(d, vars.size())) out.push_back({ground_atom(f.atom, bind_tuple(vars, tup)), f.probability});
  }
  return out;
}

// Stratum per predicate name; throws when negation runs through a cycle.
std::map<std::string, int> strata(const LogicProgram& prog) {
  std::map<std::string, int> s;
  for (const auto& r : prog.rules) {
    s[r.head.pred.name];
    for (const auto& l : r.body) s[l.atom.pred.name];
  }
  for (std::size_t round = 0; round <= s.size() + 1; ++round) {
    bool changed = false;
    for (const auto& r : prog.rules) {
      int need = 0;
      for (const auto& l : r.body) need = std::max(need, s[l.atom.pred.name] + (l.positive ? 0 : 1));
      if (need > s[r.head.pred.name]) {
        s[r.head.pred.name] = need;
        changed = true;
      }
    }
    if (!changed) return s;
  }
  throw ModelError("program is not stratified (negation through a cycle); the oracle needs a unique minimal model");
}

}  // namespace

std::vector<Atom> problog_minimal_model(const LogicProgram& prog, const Domain& d, const std::vector<Atom>& facts) {
  auto level = strata(prog);
  int top = 0;
  for (const auto& [p, s] : level) top = std::max(top, s);
  std::set<Atom> model(facts.begin(), facts.end());

  struct Prepared {
    const Rule* rule;
    std::vector<std::string> vars;
    std::vector<std::vector<std::string>> bindings;
  };
  std::vector<Prepared> rules;
  for (const auto& r : prog.rules) {
    std::vector<Atom> atoms{r.head};
    for (const auto& l : r.body) atoms.push_back(l.atom);
    auto vars = atom_vars(atoms);
    rules.push_back({&r, vars, tuples(d, vars.size())});
  }

  for (int s = 0; s <= top; ++s) {
    bool changed = true;
    while (changed) {
      changed = false;
      for (const auto& pr : rules) {
        if (level[pr.rule->head.pred.name] != s) continue;
        for (const auto& tup : pr.bindings) {
          Binding b = bind_tuple(pr.vars, tup);
          bool holds = true;
          for (const auto& l : pr.rule->body) {
            if (model.contains(ground_atom(l.atom, b)) != l.positive) {
              holds = false;
              break;
            }
          }
          if (holds && model.insert(ground_atom(pr.rule->head, b)).second) changed = true;
        }
      }
    }
  }
  return {model.begin(), model.end()};
}

Rational problog_oracle(const LogicProgram& prog, const Domain& d, const Formula& query,
                        const ProblogOracleOptions& opts) {
  require_closed(query);
  auto facts = ground_facts(prog, d);
  if (facts.size() > opts.max_facts)
    throw ResourceError(std::to_string(facts.size()) + " ground probabilistic facts exceed the oracle cap of " +
                        std::to_string(opts.max_facts));
  strata(prog);

  std::set<Predicate> preds = predicates(query);
  for (const auto& f : prog.facts) preds.insert(f.atom.pred);
  for (const auto& r : prog.rules) {
    preds.insert(r.head.pred);
    for (const auto& l : r.body) preds.insert(l.atom.pred);
  }
  HerbrandBase hb = base_over(preds, d);
  GroundFormula gf;
  int q = ground_formula(gf, query, hb, d);

  Rational total = 0;
  std::vector<bool> world(hb.size());
  for (std::uint64_t bits = 0; bits < (1ULL << facts.size()); ++bits) {
    Rational w = 1;
    std::vector<Atom> chosen;
    for (std::size_t i = 0; i < facts.size(); ++i) {
      if ((bits >> i) & 1) {
        w *= facts[i].p;
        chosen.push_back(facts[i].atom);
      } else {
        w *= 1 - facts[i].p;
      }
    }
    if (w == 0) continue;
    std::fill(world.begin(), world.end(), false);
    for (const auto& a : problog_minimal_model(prog, d, chosen)) world[hb.index_of(a, d)] = true;
    if (gf.evaluate(q, world)) total += w;
  }
  total.canonicalize();
  return total;
}

Rational problog_world_weight(const LogicProgram& prog, const Domain& d, const std::vector<Atom>& true_facts) {
  Rational w = 1;
  for (const auto& f : ground_facts(prog, d)) {
    bool on = std::find(true_facts.begin(), true_facts.end(), f.atom) != true_facts.end();
    w *= on ? f.p : Rational(1 - f.p);
  }
  w.canonicalize();
  return w;
}

}  // namespace wfomc
