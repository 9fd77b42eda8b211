#include <algorithm>
#include <functional>

#include "wfomc/error.hpp"
#include "wfomc/transform.hpp"

namespace wfomc {

using K = Formula::Kind;

FreshNamer::FreshNamer(const WeightedTheory& t) {
  for (const auto& p : t.signature()) reserved_.insert(p.name);
}

int FreshNamer::next_index(std::initializer_list<std::string_view> prefixes) {
  std::string key;
  for (auto p : prefixes) key.append(p).push_back('\0');
  int k = counters_[key];
  auto taken = [&](int i) {
    return std::ranges::any_of(prefixes, [&](std::string_view p) { return reserved_.contains(std::string(p) + std::to_string(i)); });
  };
  while (taken(k)) ++k;
  for (auto p : prefixes) reserved_.insert(std::string(p) + std::to_string(k));
  counters_[key] = k + 1;
  return k;
}

const Formula& formula_at(const WeightedTheory& t, const ElimSite& site) {
  if (site.sentence >= t.sentences().size()) throw ModelError("stale site: no sentence " + std::to_string(site.sentence));
  const Formula* f = &t.sentences()[site.sentence];
  for (std::size_t i : site.path) {
    if (i >= f->children().size()) throw ModelError("stale site: path leaves the formula");
    f = &f->child(i);
  }
  return *f;
}

std::vector<ElimSite> internal_sites(const WeightedTheory& t) {
  std::vector<ElimSite> out;
  for (std::size_t s = 0; s < t.sentences().size(); ++s) {
    std::vector<std::size_t> path;
    const Formula* f = &t.sentences()[s];
    while (f->is(K::ForAll)) {
      path.push_back(0);
      f = &f->body();
    }
    std::function<void(const Formula&)> walk = [&](const Formula& g) {
      for (std::size_t i = 0; i < g.children().size(); ++i) {
        path.push_back(i);
        walk(g.child(i));
        path.pop_back();
      }
      if (g.is_quantifier()) out.push_back({s, path});
    };
    walk(*f);
  }
  return out;
}

std::size_t count_internal_quantifiers(const WeightedTheory& t) { return internal_sites(t).size(); }

// ---------------------------------------------------------------------------

namespace {

void flatten_into(K kind, const Formula& f, std::vector<Formula>& out) {
  if (f.is(kind)) {
    for (const auto& c : f.children()) out.push_back(c);
  } else {
    out.push_back(f);
  }
}

Formula flat(K kind, std::vector<Formula> ops) {
  std::vector<Formula> out;
  for (const auto& f : ops) flatten_into(kind, f, out);
  return kind == K::And ? Formula::conj(std::move(out)) : Formula::disj(std::move(out));
}

Formula nnf(const Formula& f, bool negated) {
  switch (f.kind()) {
    case K::True:
      return negated ? Formula::bottom() : f;
    case K::False:
      return negated ? Formula::top() : f;
    case K::Atom:
      return negated ? Formula::negation(f) : f;
    case K::Not:
      return nnf(f.child(0), !negated);
    case K::And:
    case K::Or: {
      std::vector<Formula> ops;
      for (const auto& c : f.children()) ops.push_back(nnf(c, negated));
      bool conj = f.is(K::And) != negated;
      return flat(conj ? K::And : K::Or, std::move(ops));
    }
    case K::Implies:
      // a -> b  ==  ~a | b
      if (!negated) return flat(K::Or, {nnf(f.child(0), true), nnf(f.child(1), false)});
      return flat(K::And, {nnf(f.child(0), false), nnf(f.child(1), true)});
    case K::Iff: {
      const Formula& a = f.child(0);
      const Formula& b = f.child(1);
      if (!negated)
        return flat(K::And, {flat(K::Or, {nnf(a, true), nnf(b, false)}), flat(K::Or, {nnf(a, false), nnf(b, true)})});
      return flat(K::And, {flat(K::Or, {nnf(a, false), nnf(b, false)}), flat(K::Or, {nnf(a, true), nnf(b, true)})});
    }
    case K::ForAll:
    case K::Exists: {
      bool universal = f.is(K::ForAll) != negated;
      return Formula::quantifier(universal ? K::ForAll : K::Exists, f.variable(), nnf(f.body(), negated));
    }
  }
  return f;
}

struct Prenex {
  std::vector<std::pair<K, std::string>> prefix;
  Formula matrix;
};

K dual(K k) { return k == K::ForAll ? K::Exists : K::ForAll; }

std::string fresh_name(const std::string& base, const std::set<std::string>& used) {
  for (int k = 1;; ++k) {
    std::string n = base + "_" + std::to_string(k);
    if (!used.contains(n)) return n;
  }
}

void collect_names(const Formula& f, std::set<std::string>& out) {
  for (const auto& v : free_vars(f)) out.insert(v);
  for (const auto& v : bound_vars(f)) out.insert(v);
}

// Quantified equivalences become two implications, so that both sides can
// be pulled out with the right polarity.
Formula expand_quantified_iff(const Formula& f) {
  if (is_quantifier_free(f)) return f;
  std::vector<Formula> kids;
  for (const auto& c : f.children()) kids.push_back(expand_quantified_iff(c));
  if (f.is(K::Iff)) return Formula::conj(Formula::implies(kids[0], kids[1]), Formula::implies(kids[1], kids[0]));
  return Formula::rebuild(f, std::move(kids));
}

// Renames binders so that every quantifier binds a distinct variable that is
// also distinct from the free variables. Then no prefix can capture anything.
Formula uniquify(const Formula& f, std::set<std::string>& bound, std::set<std::string>& names) {
  if (f.is_quantifier()) {
    std::string v = f.variable();
    Formula body = f.body();
    if (bound.contains(v)) {
      std::string n = fresh_name(v, names);
      names.insert(n);
      if (free_vars(body).contains(v)) body = substitute(body, {{v, Term::variable(n)}});
      v = n;
    }
    bound.insert(v);
    return Formula::quantifier(f.kind(), v, uniquify(body, bound, names));
  }
  if (f.is(K::Atom) || f.children().empty()) return f;
  std::vector<Formula> kids;
  for (const auto& c : f.children()) kids.push_back(uniquify(c, bound, names));
  return Formula::rebuild(f, std::move(kids));
}

Prenex prenex(const Formula& f) {
  switch (f.kind()) {
    case K::True:
    case K::False:
    case K::Atom:
    case K::Iff:  // quantifier-free after expand_quantified_iff
      return {{}, f};
    case K::Not: {
      Prenex p = prenex(f.child(0));
      for (auto& q : p.prefix) q.first = dual(q.first);
      p.matrix = Formula::negation(p.matrix);
      return p;
    }
    case K::And:
    case K::Or:
    case K::Implies: {
      Prenex out;
      std::vector<Formula> matrices;
      for (std::size_t i = 0; i < f.children().size(); ++i) {
        Prenex p = prenex(f.child(i));
        bool flip = f.is(K::Implies) && i == 0;
        for (auto& q : p.prefix) out.prefix.emplace_back(flip ? dual(q.first) : q.first, q.second);
        matrices.push_back(p.matrix);
      }
      out.matrix = Formula::rebuild(f, std::move(matrices));
      return out;
    }
    case K::ForAll:
    case K::Exists: {
      Prenex p = prenex(f.body());
      p.prefix.insert(p.prefix.begin(), {f.kind(), f.variable()});
      return p;
    }
  }
  return {{}, f};
}

WeightedTheory map_sentences(const WeightedTheory& t, const std::function<Formula(const Formula&)>& fn) {
  if (t.unsatisfiable()) return t;
  WeightedTheory out = t.without_sentences();
  for (const auto& s : t.sentences()) out.add_sentence(fn(s));
  return out;
}

}  // namespace

Formula to_nnf(const Formula& f) { return nnf(f, false); }

Formula to_prenex(const Formula& f) {
  if (is_quantifier_free(f)) return f;
  Formula g = expand_quantified_iff(f);
  std::set<std::string> bound = free_vars(g), names;
  collect_names(g, names);
  Prenex p = prenex(uniquify(g, bound, names));
  Formula out = p.matrix;
  for (auto it = p.prefix.rbegin(); it != p.prefix.rend(); ++it) out = Formula::quantifier(it->first, it->second, out);
  return out;
}

WeightedTheory to_nnf(const WeightedTheory& t) { return map_sentences(t, [](const Formula& f) { return to_nnf(f); }); }

WeightedTheory to_prenex(const WeightedTheory& t) {
  return map_sentences(t, [](const Formula& f) { return to_prenex(f); });
}

// ---------------------------------------------------------------------------

ClauseParts split_clause(const Formula& sentence) {
  ClauseParts parts;
  const Formula* f = &sentence;
  while (f->is(K::ForAll)) {
    parts.vars.push_back(f->variable());
    f = &f->body();
  }
  auto add = [&](const Formula& l) {
    if (l.is(K::False)) return;
    if (!l.is_literal()) throw ModelError("not a clause: " + to_string(sentence));
    parts.literals.push_back(l);
  };
  if (f->is(K::Or)) {
    for (const auto& c : f->children()) add(c);
  } else if (f->is(K::True)) {
    parts.literals.push_back(*f);
  } else {
    add(*f);
  }
  return parts;
}

Formula make_clause(const std::vector<Formula>& literals, const std::vector<std::string>& order) {
  Formula body = Formula::disj(literals);
  auto used = free_vars_ordered(body);
  std::vector<std::string> vars;
  for (const auto& v : order)
    if (std::ranges::find(used, v) != used.end()) vars.push_back(v);
  for (const auto& v : used)
    if (std::ranges::find(vars, v) == vars.end()) vars.push_back(v);
  return Formula::forall(vars, body);
}

}  // namespace wfomc
