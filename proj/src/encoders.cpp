#include "wfomc/encoders.hpp"

#include <cmath>
#include <functional>
#include <map>

#include "wfomc/error.hpp"
#include "wfomc/transform.hpp"

namespace wfomc {

WfomcEncoding make_encoding(WeightedTheory delta) {
  WeightedTheory ready = to_cnf_distribute(skolemize(delta));
  return {std::move(delta), std::move(ready)};
}

WfomcEncoding encode_mln(const MlnModel& m) {
  WeightedTheory t;
  for (const auto& f : m.formulas)
    for (const auto& p : predicates(f.formula)) t.declare(p);
  FreshNamer namer(t);
  for (const auto& f : m.formulas) {
    auto vars = free_vars_ordered(f.formula);
    if (f.hard()) {
      t.add_sentence(Formula::forall(vars, f.formula));
      continue;
    }
    std::vector<Term> args;
    for (const auto& v : vars) args.push_back(Term::variable(v));
    Predicate p{namer.fresh("P"), static_cast<int>(vars.size())};
    t.set_weight(p, {Weight::from_double(std::exp(f.weight->to_double())), 1});
    t.add_sentence(Formula::forall(vars, Formula::iff(Formula::atom(Atom(p, std::move(args))), f.formula)));
  }
  return make_encoding(std::move(t));
}

// ---------------------------------------------------------------------------

namespace {

std::vector<Predicate> program_predicates(const LogicProgram& p) {
  std::vector<Predicate> out;
  auto add = [&](const Predicate& q) {
    if (std::find(out.begin(), out.end(), q) == out.end()) out.push_back(q);
  };
  for (const auto& f : p.facts) add(f.atom.pred);
  for (const auto& r : p.rules) {
    add(r.head.pred);
    for (const auto& l : r.body) add(l.atom.pred);
  }
  return out;
}

void require_distinct_variables(const Atom& a, const char* what) {
  std::set<std::string> seen;
  for (const auto& t : a.args)
    if (!t.is_variable() || !seen.insert(t.name()).second)
      throw ModelError(std::string(what) + " " + to_string(a) +
                       " must have pairwise distinct variables as arguments");
}

std::vector<std::string> canonical_vars(int n) {
  static const char* names[] = {"x", "y", "z", "u", "v", "w"};
  std::vector<std::string> out;
  for (int i = 0; i < n; ++i) out.push_back(i < 6 ? names[i] : "x" + std::to_string(i + 1));
  return out;
}

std::vector<std::string> head_vars(const Atom& head) {
  std::vector<std::string> out;
  for (const auto& t : head.args) out.push_back(t.name());
  return out;
}

// Body of `r` as a formula over the variables `xs` standing for its head.
Formula completion_disjunct(const Rule& r, const std::vector<std::string>& xs) {
  std::set<std::string> head_names;
  for (const auto& t : r.head.args) head_names.insert(t.name());
  std::set<std::string> used(xs.begin(), xs.end());
  for (const auto& l : r.body)
    for (const auto& t : l.atom.args)
      if (t.is_variable()) used.insert(t.name());

  Binding b;
  for (std::size_t j = 0; j < r.head.args.size(); ++j) b.emplace(r.head.args[j].name(), Term::variable(xs[j]));
  std::vector<std::string> locals;
  for (const auto& l : r.body) {
    for (const auto& t : l.atom.args) {
      if (!t.is_variable() || head_names.contains(t.name()) || b.contains(t.name())) continue;
      std::string name = t.name();
      if (std::find(xs.begin(), xs.end(), name) != xs.end()) {
        for (int k = 1;; ++k) {
          std::string cand = t.name() + "_" + std::to_string(k);
          if (!used.contains(cand)) {
            name = cand;
            break;
          }
        }
        used.insert(name);
      }
      b.emplace(t.name(), Term::variable(name));
      locals.push_back(name);
    }
  }
  std::vector<Formula> lits;
  for (const auto& l : r.body) {
    Formula a = substitute(Formula::atom(l.atom), b);
    lits.push_back(l.positive ? a : Formula::negation(a));
  }
  Formula body = Formula::conj(std::move(lits));
  for (auto it = locals.rbegin(); it != locals.rend(); ++it) body = Formula::exists(*it, body);
  return body;
}

struct Completion {
  WeightedTheory theory;
  std::vector<std::pair<Predicate, WeightPair>> weights;
};

Completion complete(const LogicProgram& prog) {
  for (const auto& f : prog.facts) require_distinct_variables(f.atom, "probabilistic fact");
  for (const auto& r : prog.rules) require_distinct_variables(r.head, "rule head");
  if (auto rep = tightness_check(prog); !rep.tight) {
    std::string cycle;
    for (std::size_t i = 0; i < rep.cycle.size(); ++i) cycle += (i ? " -> " : "") + rep.cycle[i];
    throw TightnessError("program is not tight, positive loop: " + cycle);
  }

  Completion out;
  auto preds = program_predicates(prog);
  for (const auto& p : preds) out.theory.declare(p);
  FreshNamer namer(out.theory);

  std::vector<Rule> rules = prog.rules;
  std::map<Predicate, int> fact_count, rule_count;
  for (const auto& f : prog.facts) ++fact_count[f.atom.pred];
  for (const auto& r : prog.rules) ++rule_count[r.head.pred];
  std::set<Predicate> probabilistic;
  for (const auto& f : prog.facts) {
    const Predicate& p = f.atom.pred;
    WeightPair w{Weight(f.probability), Weight(Rational(1 - f.probability))};
    if (fact_count[p] == 1 && rule_count[p] == 0) {
      probabilistic.insert(p);
      out.weights.emplace_back(p, w);
      continue;
    }
    Predicate aux{namer.fresh(p.name + "_"), p.arity};
    out.theory.declare(aux);
    probabilistic.insert(aux);
    out.weights.emplace_back(aux, w);
    rules.push_back({f.atom, {Literal{Atom(aux, f.atom.args), true}}});
  }

  std::vector<Predicate> derived;
  for (const auto& r : rules)
    if (std::find(derived.begin(), derived.end(), r.head.pred) == derived.end()) derived.push_back(r.head.pred);

  for (const auto& p : derived) {
    std::vector<std::string> xs;
    std::vector<Formula> bodies;
    for (const auto& r : rules) {
      if (r.head.pred != p) continue;
      if (xs.empty() && p.arity > 0) xs = head_vars(r.head);
      bodies.push_back(completion_disjunct(r, xs));
    }
    std::vector<Term> args;
    for (const auto& x : xs) args.push_back(Term::variable(x));
    Formula head = Formula::atom(Atom(p, std::move(args)));
    out.theory.add_sentence(Formula::forall(xs, Formula::iff(head, Formula::disj(std::move(bodies)))));
  }

  for (const auto& p : preds) {
    if (probabilistic.contains(p) || std::find(derived.begin(), derived.end(), p) != derived.end()) continue;
    auto xs = canonical_vars(p.arity);
    std::vector<Term> args;
    for (const auto& x : xs) args.push_back(Term::variable(x));
    out.theory.add_sentence(Formula::forall(xs, Formula::negation(Formula::atom(Atom(p, std::move(args))))));
  }
  return out;
}

}  // namespace

TightnessReport tightness_check(const LogicProgram& p) {
  std::map<std::string, std::vector<std::string>> edges;
  std::vector<std::string> nodes;
  auto node = [&](const std::string& n) {
    if (std::find(nodes.begin(), nodes.end(), n) == nodes.end()) nodes.push_back(n);
  };
  for (const auto& r : p.rules) {
    node(r.head.pred.name);
    for (const auto& l : r.body) {
      node(l.atom.pred.name);
      if (!l.positive) continue;
      auto& out = edges[r.head.pred.name];
      if (std::find(out.begin(), out.end(), l.atom.pred.name) == out.end()) out.push_back(l.atom.pred.name);
    }
  }
  std::map<std::string, int> state;  // 0 new, 1 on stack, 2 done
  std::vector<std::string> stack;
  TightnessReport report;
  std::function<bool(const std::string&)> dfs = [&](const std::string& n) {
    state[n] = 1;
    stack.push_back(n);
    for (const auto& m : edges[n]) {
      if (state[m] == 1) {
        auto from = std::find(stack.begin(), stack.end(), m);
        report.cycle.assign(from, stack.end());
        report.cycle.push_back(m);
        return true;
      }
      if (state[m] == 0 && dfs(m)) return true;
    }
    stack.pop_back();
    state[n] = 2;
    return false;
  };
  for (const auto& n : nodes) {
    if (state[n] == 0 && dfs(n)) {
      report.tight = false;
      break;
    }
  }
  return report;
}

WeightedTheory clarks_completion(const LogicProgram& p) { return complete(p).theory; }

WfomcEncoding encode_problog(const LogicProgram& p) {
  Completion c = complete(p);
  for (const auto& [pred, w] : c.weights) c.theory.set_weight(pred, w);
  return make_encoding(std::move(c.theory));
}

// ---------------------------------------------------------------------------

WeightedTheory conjoin(const WeightedTheory& t, const Formula& phi) {
  WeightedTheory out = t;
  if (out.unsatisfiable()) {
    for (const auto& p : predicates(phi)) out.declare(p);
    return out;
  }
  out.add_sentence(phi);
  return out;
}

Weight query_probability(const WfomcEncoding& e, const Domain& d, const Formula& phi, const CountOptions& opts) {
  if (auto free = free_vars_ordered(phi); !free.empty())
    throw ModelError("query has free variable '" + free.front() + "'");
  WeightedTheory denominator = e.query_ready;
  for (const auto& p : predicates(phi)) denominator.declare(p);
  WeightedTheory numerator = conjoin(e.query_ready, phi);
  Weight z = wfomc(denominator, d, opts);
  if (z.is_zero()) throw ModelError("model has zero partition function");
  return wfomc(numerator, d, opts) / z;
}

}  // namespace wfomc
