#include "wfomc/ground.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "wfomc/error.hpp"

namespace wfomc {

namespace {

constexpr std::size_t kMaxBase = 50'000'000;

std::size_t power(std::size_t n, int k) {
  std::size_t r = 1;
  for (int i = 0; i < k; ++i) {
    if (n != 0 && r > kMaxBase / n) throw ResourceError("Herbrand base too large");
    r *= n;
  }
  return r;
}

}  // namespace

void check_domain(const WeightedTheory& t, const Domain& d) {
  for (const auto& c : t.constants())
    if (!d.contains(c)) throw DomainError("constant '" + c + "' of the theory is missing from the domain");
}

HerbrandBase herbrand_base(const WeightedTheory& t, const Domain& d) {
  check_domain(t, d);
  HerbrandBase hb;
  const std::size_t n = d.size();
  for (const auto& p : t.signature()) {  // already sorted by (name, arity)
    hb.predicates.push_back(p);
    hb.offsets.push_back(hb.atoms.size());
    std::size_t count = power(n, p.arity);
    if (hb.atoms.size() + count > kMaxBase) throw ResourceError("Herbrand base too large");
    std::vector<std::size_t> digits(p.arity, 0);
    for (std::size_t i = 0; i < count; ++i) {
      std::vector<Term> args;
      for (auto k : digits) args.push_back(Term::constant(d[k]));
      hb.atoms.emplace_back(p, std::move(args));
      for (int pos = p.arity - 1; pos >= 0; --pos) {
        if (++digits[pos] < n) break;
        digits[pos] = 0;
      }
    }
  }
  return hb;
}

long HerbrandBase::index_of(const Atom& a, const Domain& d) const {
  auto it = std::ranges::lower_bound(predicates, a.pred);
  if (it == predicates.end() || *it != a.pred) return -1;
  std::size_t idx = 0;
  for (const auto& t : a.args) {
    auto k = d.index_of(t.name());
    if (!t.is_constant() || !k) return -1;
    idx = idx * d.size() + *k;
  }
  return static_cast<long>(offsets[it - predicates.begin()] + idx);
}

// ---------------------------------------------------------------------------

GroundFormula::GroundFormula() {
  nodes_.push_back({Op::True, -1, {}});
  nodes_.push_back({Op::False, -1, {}});
}

int GroundFormula::add(Node n) {
  nodes_.push_back(std::move(n));
  return static_cast<int>(nodes_.size() - 1);
}

int GroundFormula::var(int v) {
  if (static_cast<std::size_t>(v) >= var_nodes_.size()) var_nodes_.resize(v + 1, -1);
  if (var_nodes_[v] < 0) var_nodes_[v] = add({Op::Var, v, {}});
  return var_nodes_[v];
}

int GroundFormula::negation(int a) {
  if (a == 0) return 1;
  if (a == 1) return 0;
  if (nodes_[a].op == Op::Not) return nodes_[a].kids[0];
  return add({Op::Not, -1, {a}});
}

int GroundFormula::nary(Op op, std::vector<int> kids) {
  const int unit = op == Op::And ? 0 : 1;      // neutral element
  const int absorb = op == Op::And ? 1 : 0;    // dominating element
  std::vector<int> out;
  for (int k : kids) {
    if (k == absorb) return absorb;
    if (k == unit) continue;
    if (nodes_[k].op == op) {
      out.insert(out.end(), nodes_[k].kids.begin(), nodes_[k].kids.end());
    } else {
      out.push_back(k);
    }
  }
  if (out.empty()) return unit;
  if (out.size() == 1) return out.front();
  return add({op, -1, std::move(out)});
}

int GroundFormula::implies(int a, int b) {
  if (a == 1 || b == 0) return 0;
  if (a == 0) return b;
  if (b == 1) return negation(a);
  return add({Op::Implies, -1, {a, b}});
}

int GroundFormula::iff(int a, int b) {
  if (a == 0) return b;
  if (b == 0) return a;
  if (a == 1) return negation(b);
  if (b == 1) return negation(a);
  return add({Op::Iff, -1, {a, b}});
}

bool GroundFormula::evaluate(const std::vector<bool>& assignment) const { return evaluate(root_, assignment); }

bool GroundFormula::evaluate(int i, const std::vector<bool>& a) const {
  const Node& n = nodes_[i];
  switch (n.op) {
    case Op::True: return true;
    case Op::False: return false;
    case Op::Var: return a[n.var];
    case Op::Not: return !evaluate(n.kids[0], a);
    case Op::And:
      return std::ranges::all_of(n.kids, [&](int k) { return evaluate(k, a); });
    case Op::Or:
      return std::ranges::any_of(n.kids, [&](int k) { return evaluate(k, a); });
    case Op::Implies: return !evaluate(n.kids[0], a) || evaluate(n.kids[1], a);
    case Op::Iff: return evaluate(n.kids[0], a) == evaluate(n.kids[1], a);
  }
  return false;
}

std::vector<bool> GroundFormula::occurring(std::size_t num_vars) const {
  std::vector<bool> out(num_vars, false);
  std::vector<bool> seen(nodes_.size(), false);
  std::vector<int> stack{root_};
  while (!stack.empty()) {
    int i = stack.back();
    stack.pop_back();
    if (seen[i]) continue;
    seen[i] = true;
    if (nodes_[i].op == Op::Var) out[nodes_[i].var] = true;
    for (int k : nodes_[i].kids) stack.push_back(k);
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

class Grounder {
 public:
  Grounder(const HerbrandBase& hb, const Domain& d, GroundFormula& out) : hb_(hb), d_(d), out_(out) {}

  int ground(const Formula& f) {
    using K = Formula::Kind;
    using Op = GroundFormula::Op;
    switch (f.kind()) {
      case K::True: return out_.constant(true);
      case K::False: return out_.constant(false);
      case K::Atom: return out_.var(atom_index(f.atom()));
      case K::Not: return out_.negation(ground(f.child(0)));
      case K::And:
      case K::Or: {
        std::vector<int> kids;
        for (const auto& c : f.children()) kids.push_back(ground(c));
        return out_.nary(f.is(K::And) ? Op::And : Op::Or, std::move(kids));
      }
      case K::Implies: return out_.implies(ground(f.child(0)), ground(f.child(1)));
      case K::Iff: return out_.iff(ground(f.child(0)), ground(f.child(1)));
      case K::ForAll:
      case K::Exists: {
        std::vector<int> kids;
        auto& slot = binding_[f.variable()];
        for (std::size_t c = 0; c < d_.size(); ++c) {
          slot.push_back(c);
          kids.push_back(ground(f.body()));
          slot.pop_back();
        }
        return out_.nary(f.is(K::ForAll) ? Op::And : Op::Or, std::move(kids));
      }
    }
    return out_.constant(true);
  }

 private:
  int atom_index(const Atom& a) {
    auto it = std::ranges::lower_bound(hb_.predicates, a.pred);
    if (it == hb_.predicates.end() || *it != a.pred) throw ModelError("predicate " + to_string(a.pred) + " not in signature");
    std::size_t idx = 0;
    for (const auto& t : a.args) {
      std::size_t k;
      if (t.is_variable()) {
        auto b = binding_.find(t.name());
        if (b == binding_.end() || b->second.empty()) throw ModelError("free variable '" + t.name() + "' while grounding");
        k = b->second.back();
      } else {
        auto i = d_.index_of(t.name());
        if (!i) throw DomainError("constant '" + t.name() + "' is missing from the domain");
        k = *i;
      }
      idx = idx * d_.size() + k;
    }
    return static_cast<int>(hb_.offsets[it - hb_.predicates.begin()] + idx);
  }

  const HerbrandBase& hb_;
  const Domain& d_;
  GroundFormula& out_;
  std::map<std::string, std::vector<std::size_t>> binding_;
};

}  // namespace

int ground_formula(GroundFormula& out, const Formula& f, const HerbrandBase& hb, const Domain& d) {
  Grounder gr(hb, d, out);
  return gr.ground(f);
}

GroundProblem ground(const WeightedTheory& t, const Domain& d) {
  HerbrandBase hb = herbrand_base(t, d);
  GroundProblem g;
  g.exact = t.exact();
  for (std::size_t p = 0; p < hb.predicates.size(); ++p) {
    std::size_t end = p + 1 < hb.predicates.size() ? hb.offsets[p + 1] : hb.atoms.size();
    WeightPair w = t.weights().get(hb.predicates[p]);
    for (std::size_t i = hb.offsets[p]; i < end; ++i) g.weights.push_back(w);
  }
  for (const auto& f : t.factors()) g.multiplier = g.multiplier * pow(f.base, power(d.size(), f.arity));
  if (t.unsatisfiable()) {
    g.atoms = std::move(hb.atoms);
    g.formula.set_root(g.formula.constant(false));
    return g;
  }
  Grounder gr(hb, d, g.formula);
  std::vector<int> parts;
  for (const auto& s : t.sentences()) parts.push_back(gr.ground(s));
  g.formula.set_root(g.formula.nary(GroundFormula::Op::And, std::move(parts)));
  g.atoms = std::move(hb.atoms);
  return g;
}

// ---------------------------------------------------------------------------

namespace {

class CnfBuilder {
 public:
  CnfBuilder(const GroundProblem& g, GroundCnf& out) : g_(g), out_(out), cache_(g.formula.size(), 0) {}

  void top(int i) {
    using Op = GroundFormula::Op;
    const auto& n = g_.formula.node(i);
    if (n.op == Op::True) return;
    if (n.op == Op::False) {
      out_.clauses.push_back({});
      return;
    }
    if (n.op == Op::And) {
      for (int k : n.kids) top(k);
      return;
    }
    if (n.op == Op::Or) {
      std::vector<int> c;
      for (int k : n.kids) c.push_back(lit(k));
      out_.clauses.push_back(std::move(c));
      return;
    }
    out_.clauses.push_back({lit(i)});
  }

 private:
  int fresh() {
    out_.weights.push_back({});
    return ++out_.num_vars;
  }

  int lit(int i) {
    using Op = GroundFormula::Op;
    if (cache_[i]) return cache_[i];
    const auto& n = g_.formula.node(i);
    int result = 0;
    switch (n.op) {
      case Op::Var: result = n.var + 1; break;
      case Op::Not: result = -lit(n.kids[0]); break;
      case Op::And:
      case Op::Or: {
        std::vector<int> ks;
        for (int k : n.kids) ks.push_back(lit(k));
        int v = fresh();
        int s = n.op == Op::And ? 1 : -1;  // And: v -> k_i ; Or: k_i -> v
        std::vector<int> big{s * v};
        for (int k : ks) {
          out_.clauses.push_back({-s * v, s * k});
          big.push_back(-s * k);
        }
        out_.clauses.push_back(std::move(big));
        result = v;
        break;
      }
      case Op::Implies: {
        int a = lit(n.kids[0]), b = lit(n.kids[1]);
        int v = fresh();
        out_.clauses.push_back({-v, -a, b});
        out_.clauses.push_back({v, a});
        out_.clauses.push_back({v, -b});
        result = v;
        break;
      }
      case Op::Iff: {
        int a = lit(n.kids[0]), b = lit(n.kids[1]);
        int v = fresh();
        out_.clauses.push_back({-v, -a, b});
        out_.clauses.push_back({-v, a, -b});
        out_.clauses.push_back({v, a, b});
        out_.clauses.push_back({v, -a, -b});
        result = v;
        break;
      }
      default:
        throw std::logic_error("constant below the root of a ground formula");
    }
    cache_[i] = result;
    return result;
  }

  const GroundProblem& g_;
  GroundCnf& out_;
  std::vector<int> cache_;
};

}  // namespace

GroundCnf to_ground_cnf(const GroundProblem& g) {
  GroundCnf cnf;
  cnf.num_vars = static_cast<int>(g.atoms.size());
  cnf.weights = g.weights;
  cnf.multiplier = g.multiplier;
  cnf.exact = g.exact;
  CnfBuilder b(g, cnf);
  b.top(g.formula.root());
  return cnf;
}

namespace {

std::string dimacs_weight(const Weight& w) {
  if (!w.is_exact()) return format_double(w.to_double());
  return w.exact().get_num().get_str() + "/" + w.exact().get_den().get_str();
}

}  // namespace

std::string export_dimacs(const GroundProblem& g) {
  GroundCnf cnf = to_ground_cnf(g);
  std::ostringstream os;
  os << "p cnf " << cnf.num_vars << ' ' << cnf.clauses.size() << '\n';
  for (std::size_t i = 0; i < g.atoms.size(); ++i) os << "c atom " << i + 1 << ' ' << to_string(g.atoms[i]) << '\n';
  for (int v = 1; v <= cnf.num_vars; ++v) {
    const auto& w = cnf.weights[v - 1];
    os << "c wght " << v << ' ' << dimacs_weight(w.w_true) << '\n';
    os << "c wght " << -v << ' ' << dimacs_weight(w.w_false) << '\n';
  }
  if (!cnf.multiplier.is_one()) os << "c multiplier " << cnf.multiplier << '\n';
  for (const auto& c : cnf.clauses) {
    for (int l : c) os << l << ' ';
    os << "0\n";
  }
  return os.str();
}

}  // namespace wfomc
