#include <algorithm>

#include "wfomc/error.hpp"
#include "wfomc/transform.hpp"

namespace wfomc {

using K = Formula::Kind;

namespace {

using Clause = std::vector<Formula>;

struct Prefixed {
  std::vector<std::string> vars;
  Formula matrix;
};

Prefixed strip_universals(const Formula& sentence, const char* who) {
  Prefixed p;
  const Formula* f = &sentence;
  while (f->is(K::ForAll)) {
    p.vars.push_back(f->variable());
    f = &f->body();
  }
  if (!is_quantifier_free(*f))
    throw ModelError(std::string(who) + " needs Skolem normal form, got: " + to_string(sentence));
  p.matrix = *f;
  return p;
}

Formula simplify_constants(const Formula& f) {
  if (!f.is(K::And) && !f.is(K::Or)) return f;
  bool conj = f.is(K::And);
  std::vector<Formula> kids;
  for (const auto& c : f.children()) {
    Formula s = simplify_constants(c);
    if (s.is(conj ? K::True : K::False)) continue;
    if (s.is(conj ? K::False : K::True)) return s;
    kids.push_back(s);
  }
  return conj ? Formula::conj(std::move(kids)) : Formula::disj(std::move(kids));
}

// Drops repeated literals; nullopt for a tautology.
std::optional<Clause> normalize(const Clause& c) {
  Clause out;
  for (const auto& l : c) {
    if (std::ranges::find(out, l) != out.end()) continue;
    if (std::ranges::find(out, negate(l)) != out.end()) return std::nullopt;
    out.push_back(l);
  }
  return out;
}

std::vector<Clause> distribute(const Formula& f) {
  switch (f.kind()) {
    case K::True:
      return {};
    case K::False:
      return {Clause{}};
    case K::And: {
      std::vector<Clause> out;
      for (const auto& c : f.children()) {
        auto part = distribute(c);
        out.insert(out.end(), part.begin(), part.end());
      }
      return out;
    }
    case K::Or: {
      std::vector<Clause> acc{Clause{}};
      for (const auto& c : f.children()) {
        auto part = distribute(c);
        std::vector<Clause> next;
        for (const auto& a : acc) {
          for (const auto& b : part) {
            Clause m = a;
            m.insert(m.end(), b.begin(), b.end());
            next.push_back(std::move(m));
          }
        }
        acc = std::move(next);
      }
      return acc;
    }
    default:
      return {Clause{f}};  // literal (input is in NNF)
  }
}

void emit_clauses(WeightedTheory& out, const std::vector<Clause>& clauses, const std::vector<std::string>& order) {
  std::vector<Clause> seen;
  for (const auto& c : clauses) {
    auto n = normalize(c);
    if (!n || std::ranges::find(seen, *n) != seen.end()) continue;
    seen.push_back(*n);
    out.add_sentence(make_clause(*n, order));
  }
}

class Tseitin {
 public:
  Tseitin(WeightedTheory& out, FreshNamer& namer, std::vector<std::string> order)
      : out_(out), namer_(namer), order_(std::move(order)) {}

  void top(const Formula& f) {
    if (f.is(K::And)) {
      for (const auto& c : f.children()) top(c);
      return;
    }
    Clause lits;
    if (f.is(K::Or)) {
      for (const auto& c : f.children()) lits.push_back(literal(c));
    } else {
      lits.push_back(literal(f));
    }
    clauses_.push_back(std::move(lits));
  }

  void flush() { emit_clauses(out_, clauses_, order_); }

 private:
  Formula literal(const Formula& f) {
    if (f.is_literal()) return f;
    Clause kids;
    for (const auto& c : f.children()) kids.push_back(literal(c));
    auto vars = free_vars_ordered(f);
    std::vector<Term> args;
    for (const auto& v : vars) args.push_back(Term::variable(v));
    Predicate p{namer_.fresh("T"), static_cast<int>(vars.size())};
    out_.declare(p);
    Formula t = Formula::atom(Atom(p, std::move(args)));
    Formula not_t = Formula::negation(t);
    if (f.is(K::And)) {
      Clause back{t};
      for (const auto& k : kids) {
        clauses_.push_back({not_t, k});
        back.push_back(negate(k));
      }
      clauses_.push_back(std::move(back));
    } else {
      Clause fwd{not_t};
      for (const auto& k : kids) {
        fwd.push_back(k);
        clauses_.push_back({t, negate(k)});
      }
      clauses_.push_back(std::move(fwd));
    }
    return t;
  }

  WeightedTheory& out_;
  FreshNamer& namer_;
  std::vector<std::string> order_;
  std::vector<Clause> clauses_;
};

}  // namespace

WeightedTheory to_cnf_distribute(const WeightedTheory& t) {
  if (t.unsatisfiable()) return t;
  WeightedTheory out = t.without_sentences();
  for (const auto& s : t.sentences()) {
    Prefixed p = strip_universals(s, "to_cnf_distribute");
    emit_clauses(out, distribute(to_nnf(p.matrix)), p.vars);
  }
  return out;
}

WeightedTheory to_cnf_tseitin(const WeightedTheory& t) {
  FreshNamer namer(t);
  return to_cnf_tseitin(t, namer);
}

WeightedTheory to_cnf_tseitin(const WeightedTheory& t, FreshNamer& namer) {
  if (t.unsatisfiable()) return t;
  WeightedTheory out = t.without_sentences();
  for (const auto& s : t.sentences()) {
    Prefixed p = strip_universals(s, "to_cnf_tseitin");
    Formula m = simplify_constants(to_nnf(p.matrix));
    if (m.is(K::True)) continue;
    if (m.is(K::False)) {
      out.add_sentence(m);
      continue;
    }
    Tseitin ts(out, namer, p.vars);
    ts.top(m);
    ts.flush();
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

struct PropClause {
  Formula original;
  Clause literals;
  std::vector<std::string> order;
  bool modified = false;
};

const Atom& atom_of(const Formula& literal) { return literal.is(K::Not) ? literal.child(0).atom() : literal.atom(); }

bool predicate_wide(const Formula& literal) {
  if (!literal.is_literal()) return false;
  std::set<std::string> seen;
  for (const auto& t : atom_of(literal).args)
    if (!t.is_variable() || !seen.insert(t.name()).second) return false;
  return true;
}

bool ground(const Formula& literal) {
  return std::ranges::all_of(atom_of(literal).args, [](const Term& t) { return t.is_constant(); });
}

}  // namespace

WeightedTheory unit_propagate(const WeightedTheory& t) {
  if (t.unsatisfiable()) return t;
  std::vector<PropClause> clauses;
  for (const auto& s : t.sentences()) {
    ClauseParts parts = split_clause(s);
    clauses.push_back({s, parts.literals, parts.vars});
  }
  WeightedTheory out = t.without_sentences();
  auto unsat = [&] {
    out.set_unsatisfiable();
    return out;
  };

  for (;;) {
    for (const auto& c : clauses)
      if (c.literals.empty()) return unsat();
    for (std::size_t i = 0; i < clauses.size(); ++i) {
      const auto& a = clauses[i].literals;
      if (a.size() != 1 || !a[0].is_literal() || !ground(a[0])) continue;
      for (std::size_t j = i + 1; j < clauses.size(); ++j) {
        const auto& b = clauses[j].literals;
        if (b.size() == 1 && b[0] == negate(a[0])) return unsat();
      }
    }

    auto unit = std::ranges::find_if(clauses, [](const PropClause& c) {
      return c.literals.size() == 1 && predicate_wide(c.literals[0]);
    });
    if (unit == clauses.end()) break;

    Formula lit = unit->literals[0];
    bool value = !lit.is(K::Not);
    Predicate pred = atom_of(lit).pred;

    std::vector<PropClause> next;
    for (auto& c : clauses) {
      bool satisfied = false;
      Clause kept;
      for (const auto& l : c.literals) {
        if (l.is_literal() && atom_of(l).pred == pred) {
          if (!l.is(K::Not) == value) satisfied = true;
        } else {
          kept.push_back(l);
        }
      }
      if (satisfied) continue;
      if (kept.size() != c.literals.size()) {
        c.literals = std::move(kept);
        c.modified = true;
      }
      next.push_back(std::move(c));
    }
    clauses = std::move(next);

    WeightPair w = out.weights().get(pred);
    const Weight& forced = value ? w.w_true : w.w_false;
    if (!forced.is_one()) out.add_factor({forced, pred.arity});
    out.remove_predicate(pred);
  }

  for (const auto& c : clauses) out.add_sentence(c.modified ? make_clause(c.literals, c.order) : c.original);
  return out;
}

}  // namespace wfomc
