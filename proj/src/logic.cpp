#include "wfomc/logic.hpp"

#include <algorithm>
#include <functional>

#include "wfomc/error.hpp"

namespace wfomc {

std::string to_string(const Predicate& p) { return p.name + "/" + std::to_string(p.arity); }

bool is_identifier(std::string_view s) {
  if (s.empty()) return false;
  auto alpha = [](char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); };
  auto digit = [](char c) { return c >= '0' && c <= '9'; };
  if (!alpha(s.front())) return false;
  return std::all_of(s.begin(), s.end(), [&](char c) { return alpha(c) || digit(c) || c == '_'; });
}

Atom::Atom(Predicate p, std::vector<Term> a) : pred(std::move(p)), args(std::move(a)) {
  if (static_cast<int>(args.size()) != pred.arity) {
    throw ModelError("atom " + pred.name + " takes " + std::to_string(pred.arity) + " argument(s), got " +
                     std::to_string(args.size()));
  }
}

struct Formula::Node {
  Kind kind;
  std::optional<wfomc::Atom> atom;
  std::vector<Formula> children;
  std::string var;
};

namespace {

std::shared_ptr<const Formula::Node> leaf(Formula::Kind k) {
  return std::make_shared<const Formula::Node>(Formula::Node{k, std::nullopt, {}, {}});
}

}  // namespace

Formula::Formula() : node_(top().node_) {}

Formula Formula::top() {
  static const auto node = leaf(Kind::True);
  return Formula(node);
}

Formula Formula::bottom() {
  static const auto node = leaf(Kind::False);
  return Formula(node);
}

Formula Formula::atom(wfomc::Atom a) {
  return Formula(std::make_shared<const Node>(Node{Kind::Atom, std::move(a), {}, {}}));
}

Formula Formula::negation(Formula f) {
  return Formula(std::make_shared<const Node>(Node{Kind::Not, std::nullopt, {std::move(f)}, {}}));
}

Formula Formula::conj(std::vector<Formula> fs) {
  if (fs.empty()) return top();
  if (fs.size() == 1) return std::move(fs.front());
  return Formula(std::make_shared<const Node>(Node{Kind::And, std::nullopt, std::move(fs), {}}));
}

Formula Formula::disj(std::vector<Formula> fs) {
  if (fs.empty()) return bottom();
  if (fs.size() == 1) return std::move(fs.front());
  return Formula(std::make_shared<const Node>(Node{Kind::Or, std::nullopt, std::move(fs), {}}));
}

Formula Formula::implies(Formula a, Formula b) {
  return Formula(std::make_shared<const Node>(Node{Kind::Implies, std::nullopt, {std::move(a), std::move(b)}, {}}));
}

Formula Formula::iff(Formula a, Formula b) {
  return Formula(std::make_shared<const Node>(Node{Kind::Iff, std::nullopt, {std::move(a), std::move(b)}, {}}));
}

Formula Formula::quantifier(Kind k, std::string var, Formula body) {
  if (k != Kind::ForAll && k != Kind::Exists) throw std::logic_error("not a quantifier kind");
  return Formula(std::make_shared<const Node>(Node{k, std::nullopt, {std::move(body)}, std::move(var)}));
}

Formula Formula::forall(std::string var, Formula body) { return quantifier(Kind::ForAll, std::move(var), std::move(body)); }

Formula Formula::exists(std::string var, Formula body) { return quantifier(Kind::Exists, std::move(var), std::move(body)); }

Formula Formula::forall(const std::vector<std::string>& vars, Formula body) {
  for (auto it = vars.rbegin(); it != vars.rend(); ++it) body = forall(*it, std::move(body));
  return body;
}

Formula Formula::rebuild(const Formula& f, std::vector<Formula> children) {
  switch (f.kind()) {
    case Kind::True:
    case Kind::False:
    case Kind::Atom:
      return f;
    case Kind::And:
    case Kind::Or:
      // Keep arity-1 nodes out of the tree.
      if (children.size() < 2) return f.is(Kind::And) ? conj(std::move(children)) : disj(std::move(children));
      [[fallthrough]];
    default:
      return Formula(std::make_shared<const Node>(Node{f.kind(), std::nullopt, std::move(children), f.node_->var}));
  }
}

Formula::Kind Formula::kind() const { return node_->kind; }

bool Formula::is_literal() const {
  return is(Kind::Atom) || (is(Kind::Not) && child(0).is(Kind::Atom));
}

const wfomc::Atom& Formula::atom() const {
  if (!node_->atom) throw std::logic_error("formula is not an atom");
  return *node_->atom;
}

std::span<const Formula> Formula::children() const { return node_->children; }

const std::string& Formula::variable() const { return node_->var; }

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  if (a.node_->var != b.node_->var) return false;
  if (a.node_->atom != b.node_->atom) return false;
  return std::ranges::equal(a.children(), b.children());
}

std::string to_string(Formula::Kind k) {
  switch (k) {
    case Formula::Kind::True: return "true";
    case Formula::Kind::False: return "false";
    case Formula::Kind::Atom: return "atom";
    case Formula::Kind::Not: return "not";
    case Formula::Kind::And: return "and";
    case Formula::Kind::Or: return "or";
    case Formula::Kind::Implies: return "implies";
    case Formula::Kind::Iff: return "iff";
    case Formula::Kind::ForAll: return "forall";
    case Formula::Kind::Exists: return "exists";
  }
  return "?";
}

namespace {

void collect_free(const Formula& f, std::vector<std::string>& bound, std::vector<std::string>& out) {
  if (f.is(Formula::Kind::Atom)) {
    for (const auto& t : f.atom().args) {
      if (!t.is_variable()) continue;
      if (std::find(bound.begin(), bound.end(), t.name()) != bound.end()) continue;
      if (std::find(out.begin(), out.end(), t.name()) == out.end()) out.push_back(t.name());
    }
    return;
  }
  if (f.is_quantifier()) {
    bound.push_back(f.variable());
    collect_free(f.body(), bound, out);
    bound.pop_back();
    return;
  }
  for (const auto& c : f.children()) collect_free(c, bound, out);
}

void collect_all_vars(const Formula& f, std::set<std::string>& out) {
  if (f.is(Formula::Kind::Atom)) {
    for (const auto& t : f.atom().args)
      if (t.is_variable()) out.insert(t.name());
    return;
  }
  if (f.is_quantifier()) out.insert(f.variable());
  for (const auto& c : f.children()) collect_all_vars(c, out);
}

std::string fresh_variable(const std::string& base, const std::set<std::string>& used) {
  for (int k = 1;; ++k) {
    std::string name = base + "_" + std::to_string(k);
    if (!used.contains(name)) return name;
  }
}

Formula substitute_impl(const Formula& f, const Binding& binding) {
  if (binding.empty()) return f;
  switch (f.kind()) {
    case Formula::Kind::True:
    case Formula::Kind::False:
      return f;
    case Formula::Kind::Atom: {
      std::vector<Term> args = f.atom().args;
      bool changed = false;
      for (auto& t : args) {
        if (!t.is_variable()) continue;
        if (auto it = binding.find(t.name()); it != binding.end()) {
          t = it->second;
          changed = true;
        }
      }
      return changed ? Formula::atom(Atom(f.atom().pred, std::move(args))) : f;
    }
    case Formula::Kind::ForAll:
    case Formula::Kind::Exists: {
      Binding inner = binding;
      inner.erase(f.variable());
      if (inner.empty()) return f;
      auto body_free = free_vars(f.body());
      bool captures = false;
      for (const auto& [k, v] : inner) {
        if (body_free.contains(k) && v.is_variable() && v.name() == f.variable()) captures = true;
      }
      std::string var = f.variable();
      Formula body = f.body();
      if (captures) {
        std::set<std::string> used;
        collect_all_vars(f, used);
        for (const auto& [k, v] : inner) {
          used.insert(k);
          if (v.is_variable()) used.insert(v.name());
        }
        std::string renamed = fresh_variable(var, used);
        body = substitute_impl(body, Binding{{var, Term::variable(renamed)}});
        var = renamed;
      }
      return Formula::quantifier(f.kind(), var, substitute_impl(body, inner));
    }
    default: {
      std::vector<Formula> kids;
      kids.reserve(f.children().size());
      for (const auto& c : f.children()) kids.push_back(substitute_impl(c, binding));
      return Formula::rebuild(f, std::move(kids));
    }
  }
}

}  // namespace

std::set<std::string> free_vars(const Formula& f) {
  auto ordered = free_vars_ordered(f);
  return {ordered.begin(), ordered.end()};
}

std::vector<std::string> free_vars_ordered(const Formula& f) {
  std::vector<std::string> bound, out;
  collect_free(f, bound, out);
  return out;
}

std::set<std::string> bound_vars(const Formula& f) {
  std::set<std::string> out;
  std::function<void(const Formula&)> walk = [&](const Formula& g) {
    if (g.is_quantifier()) out.insert(g.variable());
    for (const auto& c : g.children()) walk(c);
  };
  walk(f);
  return out;
}

Formula substitute(const Formula& f, const Binding& binding) {
  auto free = free_vars(f);
  auto bound = bound_vars(f);
  for (const auto& [k, v] : binding) {
    if (!free.contains(k) && bound.contains(k))
      throw ModelError("cannot substitute for quantified variable '" + k + "'");
  }
  return substitute_impl(f, binding);
}

std::set<Predicate> predicates(const Formula& f) {
  std::set<Predicate> out;
  std::function<void(const Formula&)> walk = [&](const Formula& g) {
    if (g.is(Formula::Kind::Atom)) out.insert(g.atom().pred);
    for (const auto& c : g.children()) walk(c);
  };
  walk(f);
  return out;
}

std::vector<std::string> constants(const Formula& f) {
  std::vector<std::string> out;
  std::function<void(const Formula&)> walk = [&](const Formula& g) {
    if (g.is(Formula::Kind::Atom)) {
      for (const auto& t : g.atom().args)
        if (t.is_constant() && std::find(out.begin(), out.end(), t.name()) == out.end()) out.push_back(t.name());
    }
    for (const auto& c : g.children()) walk(c);
  };
  walk(f);
  return out;
}

std::size_t size(const Formula& f) {
  std::size_t n = 1;
  for (const auto& c : f.children()) n += size(c);
  return n;
}

bool is_quantifier_free(const Formula& f) {
  if (f.is_quantifier()) return false;
  return std::ranges::all_of(f.children(), [](const Formula& c) { return is_quantifier_free(c); });
}

Formula negate(const Formula& f) {
  if (f.is(Formula::Kind::Not)) return f.child(0);
  if (f.is(Formula::Kind::True)) return Formula::bottom();
  if (f.is(Formula::Kind::False)) return Formula::top();
  return Formula::negation(f);
}

// ---------------------------------------------------------------------------

WeightPair WeightFn::get(const Predicate& p) const {
  if (auto it = explicit_.find(p); it != explicit_.end()) return it->second;
  return {};
}

void WeightedTheory::check_sentence(const Formula& f) const {
  if (auto free = free_vars_ordered(f); !free.empty())
    throw ModelError("sentence has free variable '" + free.front() + "': " + to_string(f));
  std::map<std::string, int> local;
  for (const auto& p : predicates(f)) {
    auto known = arities_.find(p.name);
    if (known != arities_.end() && known->second != p.arity)
      throw ModelError("predicate " + p.name + " used with arity " + std::to_string(p.arity) + " and " +
                       std::to_string(known->second));
    auto [it, inserted] = local.emplace(p.name, p.arity);
    if (!inserted && it->second != p.arity)
      throw ModelError("predicate " + p.name + " used with arity " + std::to_string(p.arity) + " and " +
                       std::to_string(it->second));
  }
}

void WeightedTheory::add_sentence(Formula f) {
  check_sentence(f);
  for (const auto& p : predicates(f)) arities_.emplace(p.name, p.arity);
  sentences_.push_back(std::move(f));
}

void WeightedTheory::replace_sentence(std::size_t i, Formula f) {
  check_sentence(f);
  for (const auto& p : predicates(f)) arities_.emplace(p.name, p.arity);
  sentences_.at(i) = std::move(f);
}

void WeightedTheory::declare(const Predicate& p) {
  if (!is_identifier(p.name)) throw ModelError("invalid predicate name '" + p.name + "'");
  if (p.arity < 0) throw ModelError("negative arity for " + p.name);
  auto [it, inserted] = arities_.emplace(p.name, p.arity);
  if (!inserted && it->second != p.arity)
    throw ModelError("predicate " + p.name + " declared with arity " + std::to_string(p.arity) + " and " +
                     std::to_string(it->second));
}

void WeightedTheory::set_weight(const Predicate& p, WeightPair w) {
  declare(p);
  weights_.set(p, std::move(w));
}

void WeightedTheory::remove_predicate(const Predicate& p) {
  for (const auto& s : sentences_) {
    if (predicates(s).contains(p)) throw std::logic_error("predicate " + to_string(p) + " still occurs");
  }
  arities_.erase(p.name);
  weights_.erase(p);
}

void WeightedTheory::set_unsatisfiable() {
  unsat_ = true;
  sentences_ = {Formula::bottom()};
}

std::vector<Predicate> WeightedTheory::signature() const {
  std::vector<Predicate> out;
  out.reserve(arities_.size());
  for (const auto& [name, arity] : arities_) out.push_back({name, arity});
  return out;
}

std::optional<int> WeightedTheory::arity_of(const std::string& name) const {
  if (auto it = arities_.find(name); it != arities_.end()) return it->second;
  return std::nullopt;
}

bool WeightedTheory::has_predicate(const Predicate& p) const {
  auto a = arity_of(p.name);
  return a && *a == p.arity;
}

std::vector<std::string> WeightedTheory::constants() const {
  std::vector<std::string> out;
  for (const auto& s : sentences_) {
    for (auto& c : wfomc::constants(s))
      if (std::find(out.begin(), out.end(), c) == out.end()) out.push_back(c);
  }
  return out;
}

bool WeightedTheory::exact() const {
  for (const auto& [p, w] : weights_.entries())
    if (!w.w_true.is_exact() || !w.w_false.is_exact()) return false;
  return std::ranges::all_of(factors_, [](const Factor& f) { return f.base.is_exact(); });
}

WeightedTheory WeightedTheory::without_sentences() const {
  WeightedTheory t = *this;
  t.sentences_.clear();
  t.unsat_ = false;
  return t;
}

// ---------------------------------------------------------------------------

Domain::Domain(std::vector<std::string> constants) : constants_(std::move(constants)) {
  if (constants_.empty()) throw DomainError("domain must contain at least one constant");
  for (std::size_t i = 0; i < constants_.size(); ++i) {
    if (!index_.emplace(constants_[i], i).second) throw DomainError("duplicate constant '" + constants_[i] + "'");
  }
}

Domain Domain::of_size(int n, const std::vector<std::string>& named) {
  std::vector<std::string> out;
  for (const auto& c : named)
    if (std::find(out.begin(), out.end(), c) == out.end()) out.push_back(c);
  if (static_cast<int>(out.size()) > n)
    throw DomainError("domain size " + std::to_string(n) + " is smaller than the " + std::to_string(out.size()) +
                      " constant(s) named in the input");
  for (int k = 1; static_cast<int>(out.size()) < n; ++k) {
    std::string c = "C" + std::to_string(k);
    if (std::find(out.begin(), out.end(), c) == out.end()) out.push_back(c);
  }
  return Domain(std::move(out));
}

std::optional<std::size_t> Domain::index_of(const std::string& c) const {
  if (auto it = index_.find(c); it != index_.end()) return it->second;
  return std::nullopt;
}

// ---------------------------------------------------------------------------

namespace {

Formula apart(const Formula& f, std::set<std::string>& seen, std::set<std::string>& used) {
  if (f.is_quantifier()) {
    std::string var = f.variable();
    Formula body = f.body();
    if (seen.contains(var)) {
      std::string renamed = fresh_variable(var, used);
      used.insert(renamed);
      body = substitute_impl(body, Binding{{var, Term::variable(renamed)}});
      var = renamed;
    }
    seen.insert(var);
    return Formula::quantifier(f.kind(), var, apart(body, seen, used));
  }
  if (f.children().empty()) return f;
  std::vector<Formula> kids;
  for (const auto& c : f.children()) kids.push_back(apart(c, seen, used));
  return Formula::rebuild(f, std::move(kids));
}

}  // namespace

WeightedTheory standardize_apart(const WeightedTheory& t) {
  std::set<std::string> used;
  for (const auto& s : t.sentences()) collect_all_vars(s, used);
  std::set<std::string> seen;
  WeightedTheory out = t.without_sentences();
  if (t.unsatisfiable()) return t;
  for (const auto& s : t.sentences()) out.add_sentence(apart(s, seen, used));
  return out;
}

std::string to_string(NormalForm nf) {
  switch (nf) {
    case NormalForm::Arbitrary: return "arbitrary";
    case NormalForm::Prenex: return "prenex";
    case NormalForm::PrenexClausal: return "prenex-clausal";
    case NormalForm::Skolem: return "skolem";
    case NormalForm::FoCnf: return "fo-cnf";
  }
  return "?";
}

bool is_clause(const Formula& f) {
  if (f.is(Formula::Kind::True) || f.is(Formula::Kind::False) || f.is_literal()) return true;
  if (!f.is(Formula::Kind::Or)) return false;
  return std::ranges::all_of(f.children(), [](const Formula& c) { return c.is_literal() || c.is(Formula::Kind::False); });
}

NormalForm classify_sentence(const Formula& f) {
  const Formula* matrix = &f;
  bool universal_only = true;
  while (matrix->is_quantifier()) {
    if (matrix->is(Formula::Kind::Exists)) universal_only = false;
    matrix = &matrix->body();
  }
  if (!is_quantifier_free(*matrix)) return NormalForm::Arbitrary;
  bool clausal = is_clause(*matrix);
  if (universal_only) return clausal ? NormalForm::FoCnf : NormalForm::Skolem;
  return clausal ? NormalForm::PrenexClausal : NormalForm::Prenex;
}

NormalForm classify_normal_form(const WeightedTheory& t) {
  bool all_prenex = true, all_clausal = true, all_skolem = true;
  for (const auto& s : t.sentences()) {
    switch (classify_sentence(s)) {
      case NormalForm::Arbitrary:
        all_prenex = all_clausal = all_skolem = false;
        break;
      case NormalForm::Prenex:
        all_clausal = all_skolem = false;
        break;
      case NormalForm::PrenexClausal:
        all_skolem = false;
        break;
      case NormalForm::Skolem:
        all_clausal = false;
        break;
      case NormalForm::FoCnf:
        break;
    }
  }
  if (!all_prenex) return NormalForm::Arbitrary;
  if (all_skolem && all_clausal) return NormalForm::FoCnf;
  if (all_skolem) return NormalForm::Skolem;
  if (all_clausal) return NormalForm::PrenexClausal;
  return NormalForm::Prenex;
}

}  // namespace wfomc
