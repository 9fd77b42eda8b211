#include "wfomc/propcheck.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "wfomc/error.hpp"
#include "wfomc/frontends.hpp"

namespace wfomc {

using K = Formula::Kind;

namespace {

const std::vector<std::string> kVarNames{"x", "y", "z", "u", "v", "w"};

struct FormulaGen {
  Gen& g;
  const std::vector<Predicate>& preds;
  double constant_rate;

  Formula atom(const std::vector<std::string>& bound) {
    const Predicate& p = g.pick(preds);
    std::vector<Term> args;
    for (int i = 0; i < p.arity; ++i) {
      if (bound.empty() || g.chance(constant_rate)) args.push_back(Term::constant("A"));
      else args.push_back(Term::variable(g.pick(bound)));
    }
    return Formula::atom(Atom(p, std::move(args)));
  }

  Formula formula(int qdepth, int cdepth, std::vector<std::string>& bound) {
    auto r = g.below(10);
    if (qdepth > 0 && r < (bound.empty() ? 7u : 3u)) {
      std::string v = kVarNames[std::min(bound.size(), kVarNames.size() - 1)];
      bool fresh = std::find(bound.begin(), bound.end(), v) == bound.end();
      if (fresh) bound.push_back(v);
      Formula body = formula(qdepth - 1, cdepth, bound);
      if (fresh) bound.pop_back();
      return g.chance(0.5) ? Formula::forall(v, body) : Formula::exists(v, body);
    }
    if (cdepth > 0 && r < 8) {
      switch (g.below(6)) {
        case 0:
          return Formula::negation(formula(qdepth, cdepth - 1, bound));
        case 1:
        case 2: {
          Formula a = formula(qdepth, cdepth - 1, bound);
          return Formula::disj(a, formula(qdepth, cdepth - 1, bound));
        }
        case 3: {
          Formula a = formula(qdepth, cdepth - 1, bound);
          return Formula::conj(a, formula(qdepth, cdepth - 1, bound));
        }
        case 4: {
          Formula a = formula(qdepth, cdepth - 1, bound);
          return Formula::implies(a, formula(qdepth, cdepth - 1, bound));
        }
        default: {
          Formula a = formula(qdepth, cdepth - 1, bound);
          return Formula::iff(a, formula(qdepth, cdepth - 1, bound));
        }
      }
    }
    return atom(bound);
  }
};

Formula literal_over(Gen& g, const Predicate& p, const Domain& d) {
  std::vector<Term> args;
  for (int i = 0; i < p.arity; ++i) args.push_back(Term::constant(d[g.below(d.size())]));
  Formula a = Formula::atom(Atom(p, std::move(args)));
  return g.chance(0.5) ? a : Formula::negation(a);
}

bool same(const Weight& a, const Weight& b) {
  if (a.is_exact() && b.is_exact()) return a == b;
  double x = a.to_double(), y = b.to_double();
  return std::abs(x - y) <= 1e-9 * std::max({1.0, std::abs(x), std::abs(y)});
}

}  // namespace

WeightedTheory gen_theory(const GenConfig& cfg) {
  Gen g(cfg.seed);
  static const char* names[] = {"P", "Q", "R", "U", "V", "W"};
  int np = 1 + static_cast<int>(g.below(std::clamp(cfg.max_predicates, 1, 6)));
  std::vector<Predicate> preds;
  WeightedTheory t;
  for (int i = 0; i < np; ++i) {
    Predicate p{names[i], static_cast<int>(g.below(cfg.max_arity + 1))};
    preds.push_back(p);
    if (g.chance(0.6)) t.set_weight(p, {Weight(g.pick(cfg.weight_pool)), Weight(g.pick(cfg.weight_pool))});
    else t.declare(p);
  }
  FormulaGen fg{g, preds, cfg.constant_rate};
  int ns = 1 + static_cast<int>(g.below(std::max(1, cfg.max_sentences)));
  for (int i = 0; i < ns; ++i) {
    std::vector<std::string> bound;
    t.add_sentence(fg.formula(cfg.max_quantifier_depth, cfg.max_connective_depth, bound));
  }
  return t;
}

Formula gen_query(Gen& g, const WeightedTheory& t, const Domain& d) {
  auto sig = t.signature();
  int k = 1 + static_cast<int>(g.below(3));
  std::vector<Formula> lits;
  for (int i = 0; i < k; ++i) lits.push_back(literal_over(g, g.pick(sig), d));
  return Formula::conj(std::move(lits));
}

GroundProblem gen_ground_problem(Gen& g, const GroundGenConfig& cfg) {
  GroundProblem p;
  int n = 1 + static_cast<int>(g.below(cfg.max_atoms));
  for (int i = 0; i < n; ++i) {
    p.atoms.emplace_back(Predicate{"V" + std::to_string(i + 1), 0}, std::vector<Term>{});
    p.weights.push_back({Weight(g.pick(cfg.weight_pool)), Weight(g.pick(cfg.weight_pool))});
  }
  GroundFormula& f = p.formula;
  auto lit = [&](int v) { return g.chance(0.5) ? f.var(v) : f.negation(f.var(v)); };
  std::vector<int> parts;
  if (cfg.clausal) {
    int m = static_cast<int>(g.below(3 * n + 2));
    for (int c = 0; c < m; ++c) {
      int len = 1 + static_cast<int>(g.below(c % 7 == 0 ? 1 : 3));
      std::vector<int> lits;
      for (int j = 0; j < len; ++j) lits.push_back(lit(static_cast<int>(g.below(n))));
      parts.push_back(f.nary(GroundFormula::Op::Or, std::move(lits)));
    }
  } else {
    std::function<int(int)> rnd = [&](int depth) -> int {
      if (depth == 0 || g.chance(0.25)) return lit(static_cast<int>(g.below(n)));
      int a = rnd(depth - 1), b = rnd(depth - 1);
      switch (g.below(4)) {
        case 0: return f.nary(GroundFormula::Op::And, {a, b});
        case 1: return f.nary(GroundFormula::Op::Or, {a, b});
        case 2: return f.implies(a, b);
        default: return f.iff(a, b);
      }
    };
    int m = 1 + static_cast<int>(g.below(3));
    for (int i = 0; i < m; ++i) parts.push_back(rnd(4));
  }
  if (cfg.force_unsat) {
    // Every sign pattern over k variables: no assignment survives.
    int k = 1 + static_cast<int>(g.below(std::min(n, 3)));
    std::vector<int> vars;
    for (int i = 0; i < k; ++i) vars.push_back(static_cast<int>((i * 7 + g.below(n)) % n));
    std::sort(vars.begin(), vars.end());
    vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
    for (int mask = 0; mask < (1 << vars.size()); ++mask) {
      std::vector<int> lits;
      for (std::size_t j = 0; j < vars.size(); ++j)
        lits.push_back((mask >> j) & 1 ? f.var(vars[j]) : f.negation(f.var(vars[j])));
      parts.push_back(f.nary(GroundFormula::Op::Or, std::move(lits)));
    }
  }
  f.set_root(f.nary(GroundFormula::Op::And, std::move(parts)));
  return p;
}

LogicProgram gen_program(Gen& g) {
  static const std::vector<Rational> probs{Rational(1, 10), Rational(3, 10), Rational(1, 2), Rational(7, 10),
                                           Rational(9, 10), Rational(1), Rational(0)};
  LogicProgram prog;
  std::vector<Predicate> avail;
  int nf = 1 + static_cast<int>(g.below(2));
  for (int i = 0; i < nf; ++i) {
    Predicate p{"F" + std::to_string(i), static_cast<int>(g.below(2))};
    avail.push_back(p);
    std::vector<Term> args;
    if (p.arity == 1) args.push_back(Term::variable("x"));
    prog.facts.push_back({g.pick(probs), Atom(p, args)});
    if (i == 0 && g.chance(0.2)) prog.facts.push_back({g.pick(probs), Atom(p, args)});
  }
  int nd = 1 + static_cast<int>(g.below(2));
  int rules_left = 2;
  for (int i = 0; i < nd && rules_left > 0; ++i) {
    Predicate head{"D" + std::to_string(i), static_cast<int>(g.below(2))};
    int nr = (i == nd - 1) ? rules_left : 1;
    for (int r = 0; r < nr; ++r, --rules_left) {
      std::vector<Term> hargs;
      if (head.arity == 1) hargs.push_back(Term::variable("x"));
      Rule rule{Atom(head, hargs), {}};
      int nb = 1 + static_cast<int>(g.below(2));
      for (int b = 0; b < nb; ++b) {
        const Predicate& p = g.pick(avail);
        std::vector<Term> args;
        for (int a = 0; a < p.arity; ++a) {
          auto c = g.below(5);
          args.push_back(c == 0 ? Term::constant("A") : Term::variable(c < 3 && head.arity ? "x" : "y"));
        }
        rule.body.push_back({Atom(p, std::move(args)), !g.chance(0.3)});
      }
      prog.rules.push_back(std::move(rule));
    }
    avail.push_back(head);
  }
  return prog;
}

MlnModel gen_mln(Gen& g) {
  static const std::vector<std::string> weights{"-1.5", "0.5", "1.3", "2", "-0.7", "0"};
  std::vector<Predicate> preds;
  int np = 1 + static_cast<int>(g.below(2));
  static const char* names[] = {"Smokes", "Friends"};
  for (int i = 0; i < np; ++i) preds.push_back({names[i], 1 + static_cast<int>(g.below(2))});
  FormulaGen fg{g, preds, 0.1};
  MlnModel m;
  int nf = 1 + static_cast<int>(g.below(2));
  for (int i = 0; i < nf; ++i) {
    std::vector<std::string> bound{"x"};
    if (g.chance(0.5)) bound.push_back("y");
    MlnFormula f;
    if (!g.chance(0.1)) f.weight = Weight::parse(g.pick(weights));
    f.formula = fg.formula(1, 2, bound);
    m.formulas.push_back(std::move(f));
  }
  return m;
}

// ---------------------------------------------------------------------------

CheckReport check_soundness(const WeightedTheory& t, const std::vector<int>& sizes, const CheckOptions& opts) {
  WeightedTheory sk = skolemize(t, opts.skolemize);
  std::vector<int> order = sizes;
  std::sort(order.begin(), order.end());
  CheckReport r;
  for (int n : order) {
    if (static_cast<int>(t.constants().size()) > n) continue;
    Domain d = Domain::of_size(n, t.constants());
    Weight before = wfomc(t, d, opts.count);
    Weight after = wfomc(sk, d, opts.count);
    if (!same(before, after)) {
      r.status = CheckStatus::Fail;
      r.domain_size = n;
      r.expected = before;
      r.actual = after;
      r.detail = "count changes under skolemize";
      return r;
    }
  }
  return r;
}

CheckReport check_modularity(const WeightedTheory& t, const Formula& phi, const std::vector<int>& sizes,
                             const CheckOptions& opts) {
  CheckReport r;
  for (const auto& p : predicates(phi)) {
    if (!t.has_predicate(p)) {
      r.status = CheckStatus::Unsupported;
      r.detail = "query mentions " + to_string(p) + ", which is not a predicate of the original theory";
      return r;
    }
  }
  WeightedTheory lhs = conjoin(t, phi);
  WeightedTheory rhs = conjoin(skolemize(t, opts.skolemize), phi);
  std::vector<std::string> named = t.constants();
  for (const auto& c : constants(phi))
    if (std::find(named.begin(), named.end(), c) == named.end()) named.push_back(c);
  for (int n : sizes) {
    if (static_cast<int>(named.size()) > n) continue;
    Domain d = Domain::of_size(n, named);
    Weight a = wfomc(lhs, d, opts.count);
    Weight b = wfomc(rhs, d, opts.count);
    if (!same(a, b)) {
      r.status = CheckStatus::Fail;
      r.domain_size = n;
      r.expected = a;
      r.actual = b;
      r.detail = "count with query changes under skolemize";
      return r;
    }
  }
  return r;
}

// ---------------------------------------------------------------------------

namespace {

Formula replace_at(const Formula& f, std::span<const std::size_t> path, const Formula& replacement) {
  if (path.empty()) return replacement;
  std::vector<Formula> kids(f.children().begin(), f.children().end());
  kids[path.front()] = replace_at(kids[path.front()], path.subspan(1), replacement);
  return Formula::rebuild(f, std::move(kids));
}

void simpler_forms(const Formula& f, std::vector<std::size_t>& path, std::vector<std::pair<std::vector<std::size_t>, Formula>>& out) {
  if (!f.is(K::True) && !f.is(K::False)) {
    out.emplace_back(path, Formula::top());
    out.emplace_back(path, Formula::bottom());
  }
  if (f.is_quantifier()) {
    out.emplace_back(path, substitute(f.body(), Binding{{f.variable(), Term::constant("A")}}));
  } else if (!f.is(K::Atom)) {
    for (const auto& c : f.children()) out.emplace_back(path, c);
  }
  for (std::size_t i = 0; i < f.children().size(); ++i) {
    path.push_back(i);
    simpler_forms(f.child(i), path, out);
    path.pop_back();
  }
}

}  // namespace

WeightedTheory shrink(const WeightedTheory& t, const std::function<bool(const WeightedTheory&)>& fails) {
  WeightedTheory cur = t;
  int budget = 400;
  bool improved = true;
  auto attempt = [&](const WeightedTheory& cand) {
    if (--budget < 0) return false;
    try {
      return fails(cand);
    } catch (const std::exception&) {
      return false;
    }
  };
  while (improved && budget > 0) {
    improved = false;
    const auto& ss = cur.sentences();
    for (std::size_t i = 0; i < ss.size() && !improved && ss.size() > 1; ++i) {
      WeightedTheory cand = cur.without_sentences();
      for (std::size_t j = 0; j < ss.size(); ++j)
        if (j != i) cand.add_sentence(ss[j]);
      if (attempt(cand)) {
        cur = cand;
        improved = true;
      }
    }
    for (std::size_t i = 0; i < cur.sentences().size() && !improved; ++i) {
      std::vector<std::size_t> path;
      std::vector<std::pair<std::vector<std::size_t>, Formula>> forms;
      simpler_forms(cur.sentences()[i], path, forms);
      for (const auto& [p, repl] : forms) {
        Formula next = replace_at(cur.sentences()[i], p, repl);
        if (size(next) >= size(cur.sentences()[i])) continue;
        WeightedTheory cand = cur;
        cand.replace_sentence(i, next);
        if (attempt(cand)) {
          cur = cand;
          improved = true;
          break;
        }
      }
    }
  }
  return cur;
}

namespace {

std::string describe_failure(const WeightedTheory& t, const CheckReport& r) {
  std::ostringstream os;
  os << serialize_theory(t) << "# " << r.detail << " at |D|=" << r.domain_size << ": expected " << r.expected
     << ", got " << r.actual;
  return os.str();
}

}  // namespace

RunSummary run_soundness(const GenConfig& cfg, int seeds, const CheckOptions& opts, bool stop_at_first) {
  RunSummary sum;
  for (int s = 0; s < seeds; ++s) {
    GenConfig c = cfg;
    c.seed = cfg.seed + static_cast<std::uint64_t>(s);
    WeightedTheory t = gen_theory(c);
    ++sum.runs;
    CheckReport r;
    try {
      r = check_soundness(t, c.sizes, opts);
    } catch (const ResourceError&) {
      ++sum.unsupported;
      continue;
    }
    if (r.ok()) continue;
    ++sum.failures;
    if (!sum.first_failing_seed) {
      sum.first_failing_seed = c.seed;
      WeightedTheory small = shrink(t, [&](const WeightedTheory& x) { return !check_soundness(x, c.sizes, opts).ok(); });
      sum.counterexample = describe_failure(small, check_soundness(small, c.sizes, opts));
    }
    if (stop_at_first) break;
  }
  return sum;
}

RunSummary run_modularity(const GenConfig& cfg, int seeds, const CheckOptions& opts) {
  RunSummary sum;
  for (int s = 0; s < seeds; ++s) {
    GenConfig c = cfg;
    c.seed = cfg.seed + static_cast<std::uint64_t>(s);
    WeightedTheory t = gen_theory(c);
    Gen g(c.seed ^ 0x5bd1e995ULL);
    int n = g.pick(c.sizes);
    if (static_cast<int>(t.constants().size()) > n) n = static_cast<int>(t.constants().size());
    Domain d = Domain::of_size(n, t.constants());
    Formula phi = gen_query(g, t, d);
    ++sum.runs;
    CheckReport r;
    try {
      r = check_modularity(t, phi, {n}, opts);
    } catch (const ResourceError&) {
      ++sum.unsupported;
      continue;
    }
    if (r.status == CheckStatus::Unsupported) ++sum.unsupported;
    if (r.ok()) continue;
    ++sum.failures;
    if (!sum.first_failing_seed) {
      sum.first_failing_seed = c.seed;
      sum.counterexample = describe_failure(t, r) + "\n# query: " + to_string(phi);
    }
  }
  return sum;
}

}  // namespace wfomc
