#include "wfomc/error.hpp"
#include "wfomc/transform.hpp"

namespace wfomc {

using K = Formula::Kind;

namespace {

Formula replace_at(const Formula& f, std::span<const std::size_t> path, const Formula& replacement) {
  if (path.empty()) return replacement;
  std::vector<Formula> kids(f.children().begin(), f.children().end());
  kids[path.front()] = replace_at(kids[path.front()], path.subspan(1), replacement);
  return Formula::rebuild(f, std::move(kids));
}

std::vector<Term> as_terms(const std::vector<std::string>& vars) {
  std::vector<Term> out;
  for (const auto& v : vars) out.push_back(Term::variable(v));
  return out;
}

// Returns the rewritten theory and the site of the new existential.
std::pair<WeightedTheory, ElimSite> negate_universal(const WeightedTheory& t, const ElimSite& site) {
  const Formula& node = formula_at(t, site);
  if (!node.is(K::ForAll)) throw ModelError("site is not a universal quantifier");
  Formula ex = Formula::exists(node.variable(), negate(node.body()));
  WeightedTheory out = t;
  const Formula& sentence = t.sentences()[site.sentence];
  ElimSite parent{site.sentence, {site.path.begin(), site.path.end() - (site.path.empty() ? 0 : 1)}};
  if (!site.path.empty() && formula_at(t, parent).is(K::Not)) {
    out.replace_sentence(site.sentence, replace_at(sentence, parent.path, ex));
    return {out, parent};
  }
  out.replace_sentence(site.sentence, replace_at(sentence, site.path, Formula::negation(ex)));
  ElimSite inner = site;
  inner.path.push_back(0);
  return {out, inner};
}

// Def-3 step without checking the quantifier kind.
WeightedTheory eliminate(const WeightedTheory& t, const ElimSite& site, FreshNamer& namer,
                         const EliminationOptions& opts) {
  const Formula& node = formula_at(t, site);
  if (!node.is_quantifier()) throw ModelError("stale site: no quantifier at path");
  const std::string& x = node.variable();
  const Formula& phi = node.body();
  std::vector<std::string> ys = free_vars_ordered(node);

  int k = namer.next_index({"Z", "Sk"});
  Predicate z{"Z" + std::to_string(k), static_cast<int>(ys.size())};
  Predicate s{"Sk" + std::to_string(k), static_cast<int>(ys.size())};
  Formula z_atom = Formula::atom(Atom(z, as_terms(ys)));
  Formula s_atom = Formula::atom(Atom(s, as_terms(ys)));
  Formula not_phi = negate(phi);

  WeightedTheory out = t;
  out.declare(z);
  out.set_weight(s, {1, opts.skolem_false_weight});
  out.replace_sentence(site.sentence, replace_at(t.sentences()[site.sentence], site.path, z_atom));
  out.add_sentence(Formula::forall(ys, Formula::forall(x, Formula::disj(z_atom, not_phi))));
  out.add_sentence(Formula::forall(ys, Formula::disj(s_atom, z_atom)));
  out.add_sentence(Formula::forall(ys, Formula::forall(x, Formula::disj(s_atom, not_phi))));
  return out;
}

bool prenex_universal_existential(const Formula& sentence) {
  const Formula* f = &sentence;
  while (f->is(K::ForAll)) f = &f->body();
  while (f->is(K::Exists)) f = &f->body();
  return is_quantifier_free(*f);
}

}  // namespace

WeightedTheory rewrite_universal_site(const WeightedTheory& t, const ElimSite& site, ElimSite* existential) {
  auto [out, ex] = negate_universal(t, site);
  if (existential) *existential = ex;
  return out;
}

WeightedTheory eliminate_one(const WeightedTheory& t, const ElimSite& site, FreshNamer& namer,
                             const EliminationOptions& opts) {
  const Formula& node = formula_at(t, site);
  if (node.is(K::ForAll)) throw ModelError("universal site: rewrite it to ~exists~ first");
  if (!node.is(K::Exists)) throw ModelError("stale site: no existential at path");
  return eliminate(t, site, namer, opts);
}

bool has_shortcut_form(const Formula& sentence) {
  const Formula* f = &sentence;
  while (f->is(K::ForAll)) f = &f->body();
  if (!f->is(K::Exists)) return false;
  while (f->is(K::Exists)) f = &f->body();
  return is_quantifier_free(*f);
}

WeightedTheory eliminate_prenex(const WeightedTheory& t, std::size_t sentence, FreshNamer& namer,
                                const EliminationOptions& opts) {
  if (sentence >= t.sentences().size()) throw ModelError("no sentence " + std::to_string(sentence));
  const Formula& root = t.sentences()[sentence];
  if (!has_shortcut_form(root))
    throw ModelError("sentence is not of the form forall* exists+ phi; use skolemize: " + to_string(root));
  std::vector<std::string> prefix;
  const Formula* f = &root;
  while (f->is(K::ForAll)) {
    prefix.push_back(f->variable());
    f = &f->body();
  }
  // The whole existential block goes in one step: its negation is universal.
  std::vector<std::string> ys = free_vars_ordered(*f);
  std::vector<std::string> xs;
  while (f->is(K::Exists)) {
    xs.push_back(f->variable());
    f = &f->body();
  }

  int k = namer.next_index({"Z", "Sk"});
  Predicate s{"Sk" + std::to_string(k), static_cast<int>(ys.size())};
  Formula s_atom = Formula::atom(Atom(s, as_terms(ys)));

  WeightedTheory out = t;
  out.set_weight(s, {1, opts.skolem_false_weight});
  out.replace_sentence(sentence, Formula::forall(prefix, Formula::forall(xs, Formula::disj(s_atom, negate(*f)))));
  return out;
}

WeightedTheory skolemize(const WeightedTheory& t, const SkolemizeOptions& opts, SkolemizeStats* stats) {
  SkolemizeStats local;
  if (!stats) stats = &local;
  if (t.unsatisfiable()) return t;
  FreshNamer namer(t);
  EliminationOptions eo{opts.skolem_false_weight};
  WeightedTheory cur = t;
  for (;;) {
    auto sites = internal_sites(cur);
    if (sites.empty()) break;
    ElimSite site = sites.front();
    ++stats->eliminations;
    if (opts.prenex_shortcut && has_shortcut_form(cur.sentences()[site.sentence])) {
      cur = eliminate_prenex(cur, site.sentence, namer, eo);
      ++stats->shortcut_steps;
      continue;
    }
    if (formula_at(cur, site).is(K::ForAll) && opts.negate_universal_sites)
      std::tie(cur, site) = negate_universal(cur, site);
    cur = eliminate(cur, site, namer, eo);
  }
  return cur;
}

WeightedTheory skolemize_prenex_shortcut(const WeightedTheory& t, const EliminationOptions& opts) {
  for (const auto& s : t.sentences()) {
    if (!prenex_universal_existential(s))
      throw ModelError("shortcut needs prenex sentences of the form forall* exists* phi; use skolemize: " +
                       to_string(s));
  }
  SkolemizeOptions so;
  so.skolem_false_weight = opts.skolem_false_weight;
  return skolemize(t, so);
}

}  // namespace wfomc
