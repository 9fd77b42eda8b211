#include "wfomc/error.hpp"
#include "wfomc/propcheck.hpp"

namespace wfomc {

using K = Formula::Kind;

namespace {

Formula replace_at(const Formula& f, std::span<const std::size_t> path, const Formula& replacement) {
  if (path.empty()) return replacement;
  std::vector<Formula> kids(f.children().begin(), f.children().end());
  kids[path.front()] = replace_at(kids[path.front()], path.subspan(1), replacement);
  return Formula::rebuild(f, std::move(kids));
}

Formula atom_over(const Predicate& p, const std::vector<std::string>& vars) {
  std::vector<Term> args;
  for (const auto& v : vars) args.push_back(Term::variable(v));
  return Formula::atom(Atom(p, std::move(args)));
}

}  // namespace

Ladder proof_ladder(const WeightedTheory& t, const ElimSite& site) {
  WeightedTheory cur = t;
  ElimSite at = site;
  if (formula_at(cur, at).is(K::ForAll)) cur = rewrite_universal_site(cur, site, &at);
  const Formula node = formula_at(cur, at);
  if (!node.is(K::Exists)) throw ModelError("ladder site is not a quantifier");
  const std::string x = node.variable();
  const Formula phi = node.body();

  Ladder l;
  l.ys = free_vars_ordered(node);
  FreshNamer namer(cur);
  int k = namer.next_index({"Z", "Sk"});
  l.z = {"Z" + std::to_string(k), static_cast<int>(l.ys.size())};
  l.s = {"Sk" + std::to_string(k), static_cast<int>(l.ys.size())};
  Formula z = atom_over(l.z, l.ys);
  Formula s = atom_over(l.s, l.ys);
  Formula not_phi = negate(phi);
  l.sigma = Formula::exists(x, Formula::disj(Formula::negation(z), phi));

  l.stages.push_back(cur);

  WeightedTheory base = cur;
  base.declare(l.z);
  base.replace_sentence(at.sentence, replace_at(cur.sentences()[at.sentence], at.path, z));

  WeightedTheory isolated = base;
  isolated.add_sentence(Formula::forall(l.ys, Formula::iff(z, node)));
  l.stages.push_back(isolated);

  l.gamma = base;
  l.gamma.add_sentence(Formula::forall(l.ys, Formula::forall(x, Formula::disj(z, not_phi))));

  WeightedTheory split = base;
  split.add_sentence(Formula::forall(l.ys, l.sigma));
  split.add_sentence(Formula::forall(l.ys, Formula::forall(x, Formula::disj(z, not_phi))));
  l.stages.push_back(split);

  WeightedTheory feature = l.gamma;
  feature.set_weight(l.s, {1, 0});
  feature.add_sentence(Formula::forall(l.ys, Formula::iff(s, l.sigma)));
  l.stages.push_back(feature);

  WeightedTheory implication = l.gamma;
  implication.set_weight(l.s, {1, -1});
  implication.add_sentence(Formula::forall(l.ys, Formula::disj(s, z)));
  implication.add_sentence(Formula::forall(l.ys, Formula::forall(x, Formula::disj(s, not_phi))));
  l.stages.push_back(implication);
  return l;
}

std::vector<CaseRow> case_table(const Ladder& l, int stage, const Domain& d, const CountOptions& opts) {
  if (stage != 3 && stage != 4) throw std::invalid_argument("case table exists for stages 3 and 4");
  if (!l.ys.empty() && d.size() != 1) throw ModelError("case table needs a single grounding of ys (|D| = 1)");
  Binding b;
  std::vector<Term> args;
  for (const auto& y : l.ys) {
    b.emplace(y, Term::constant(d[0]));
    args.push_back(Term::constant(d[0]));
  }
  Formula sigma = substitute(l.sigma, b);
  Formula s = Formula::atom(Atom(l.s, std::move(args)));
  const WeightedTheory& t = l.stages[stage];
  WeightPair w = t.weights().get(l.s);

  Weight g_pos = wfomc(conjoin(l.gamma, sigma), d, opts);
  Weight g_neg = wfomc(conjoin(l.gamma, Formula::negation(sigma)), d, opts);

  std::vector<CaseRow> rows;
  for (bool sv : {true, false}) {
    for (bool svs : {true, false}) {
      WeightedTheory q = conjoin(conjoin(t, sv ? sigma : Formula::negation(sigma)), svs ? s : Formula::negation(s));
      Weight predicted = 0;
      if (sv && svs) predicted = w.w_true * g_pos;
      if (!sv && svs && stage == 4) predicted = w.w_true * g_neg;
      if (!sv && !svs) predicted = w.w_false * g_neg;
      rows.push_back({sv, svs, wfomc(q, d, opts), predicted});
    }
  }
  return rows;
}

CheckReport check_proof_ladder(const WeightedTheory& t, const ElimSite& site, const std::vector<int>& sizes,
                               const CountOptions& opts) {
  Ladder l = proof_ladder(t, site);
  CheckReport r;
  for (int n : sizes) {
    if (static_cast<int>(t.constants().size()) > n) continue;
    Domain d = Domain::of_size(n, t.constants());
    Weight first = wfomc(l.stages[0], d, opts);
    for (std::size_t i = 1; i < l.stages.size(); ++i) {
      Weight c = wfomc(l.stages[i], d, opts);
      if (c != first) {
        r.status = CheckStatus::Fail;
        r.domain_size = n;
        r.expected = first;
        r.actual = c;
        r.detail = std::string("count changes at stage '") + kLadderStageNames[i] + "'";
        return r;
      }
    }
    if (n != 1) continue;
    for (int stage : {3, 4}) {
      for (const auto& row : case_table(l, stage, d, opts)) {
        if (row.measured != row.predicted) {
          r.status = CheckStatus::Fail;
          r.domain_size = 1;
          r.expected = row.predicted;
          r.actual = row.measured;
          r.detail = std::string("case table mismatch at stage '") + kLadderStageNames[stage] + "'";
          return r;
        }
      }
    }
  }
  return r;
}

}  // namespace wfomc
