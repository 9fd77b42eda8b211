#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <unordered_map>

#include "wfomc/ground.hpp"

namespace wfomc {

namespace {

using Clause = std::vector<int>;
using Cnf = std::vector<Clause>;

struct KeyHash {
  std::size_t operator()(const std::vector<int>& k) const {
    std::size_t h = k.size();
    for (int x : k) h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }
};

std::vector<int> vars_of(const Cnf& f) {
  std::vector<int> vs;
  for (const auto& c : f)
    for (int l : c) vs.push_back(std::abs(l));
  std::sort(vs.begin(), vs.end());
  vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
  return vs;
}

// Clauses satisfied by `lit` go, the opposite literal is removed.
Cnf condition(const Cnf& f, int lit) {
  Cnf out;
  out.reserve(f.size());
  for (const auto& c : f) {
    if (std::find(c.begin(), c.end(), lit) != c.end()) continue;
    Clause d;
    d.reserve(c.size());
    for (int l : c)
      if (l != -lit) d.push_back(l);
    out.push_back(std::move(d));
  }
  return out;
}

bool has_empty(const Cnf& f) {
  return std::any_of(f.begin(), f.end(), [](const Clause& c) { return c.empty(); });
}

template <class Scalar>
class Dpll {
 public:
  explicit Dpll(const GroundCnf& cnf) {
    wt_.resize(cnf.num_vars + 1);
    wf_.resize(cnf.num_vars + 1);
    sum_.resize(cnf.num_vars + 1);
    for (int v = 1; v <= cnf.num_vars; ++v) {
      wt_[v] = weight_as<Scalar>(cnf.weights[v - 1].w_true);
      wf_[v] = weight_as<Scalar>(cnf.weights[v - 1].w_false);
      sum_[v] = wt_[v] + wf_[v];
    }
  }

  Scalar count(const GroundCnf& cnf) {
    Cnf f;
    for (const auto& c : cnf.clauses) {
      Clause d;
      bool taut = false;
      for (int l : c) {
        if (std::find(d.begin(), d.end(), -l) != d.end()) taut = true;
        if (std::find(d.begin(), d.end(), l) == d.end()) d.push_back(l);
      }
      if (!taut) f.push_back(std::move(d));
    }
    if (has_empty(f)) return Scalar(0);
    std::vector<bool> used(cnf.num_vars + 1, false);
    for (int v : vars_of(f)) used[v] = true;
    Scalar r = solve(f);
    for (int v = 1; v <= cnf.num_vars; ++v)
      if (!used[v]) r *= sum_[v];
    return r * weight_as<Scalar>(cnf.multiplier);
  }

 private:
  Scalar weight(int lit) const { return lit > 0 ? wt_[lit] : wf_[-lit]; }

  // Product of (wt + wf) over variables of `before` missing from `after`,
  // skipping `skip`.
  Scalar vanished(const std::vector<int>& before, const Cnf& after, const std::vector<int>& skip) const {
    std::vector<int> now = vars_of(after);
    Scalar r = 1;
    for (int v : before)
      if (!std::binary_search(now.begin(), now.end(), v) && std::find(skip.begin(), skip.end(), v) == skip.end())
        r *= sum_[v];
    return r;
  }

  // WMC over exactly the variables of f.
  Scalar solve(Cnf f) {
    std::vector<int> before = vars_of(f);
    std::vector<int> assigned;
    Scalar factor = 1;
    for (;;) {
      auto unit = std::find_if(f.begin(), f.end(), [](const Clause& c) { return c.size() == 1; });
      if (unit == f.end()) break;
      int lit = unit->front();
      factor *= weight(lit);
      assigned.push_back(std::abs(lit));
      f = condition(f, lit);
      if (has_empty(f)) return Scalar(0);
    }
    factor *= vanished(before, f, assigned);
    if (f.empty()) return factor;
    for (auto& comp : components(f)) {
      factor *= component(std::move(comp));
      if (factor == Scalar(0)) break;
    }
    return factor;
  }

  Scalar component(Cnf f) {
    for (auto& c : f) std::sort(c.begin(), c.end());
    std::sort(f.begin(), f.end());
    std::vector<int> key;
    for (const auto& c : f) {
      key.insert(key.end(), c.begin(), c.end());
      key.push_back(0);
    }
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;

    std::vector<int> vars = vars_of(f);
    int v = pick(f);
    Scalar r = 0;
    for (int lit : {v, -v}) {
      Cnf g = condition(f, lit);
      if (has_empty(g)) continue;
      Scalar free = vanished(vars, g, {v});  // before g is moved from
      r += weight(lit) * free * solve(std::move(g));
    }
    memo_.emplace(std::move(key), r);
    return r;
  }

  // Most occurrences within the shortest clauses; ties go to the smaller variable.
  static int pick(const Cnf& f) {
    std::size_t shortest = SIZE_MAX;
    for (const auto& c : f) shortest = std::min(shortest, c.size());
    std::map<int, int> score;
    for (const auto& c : f)
      if (c.size() == shortest)
        for (int l : c) ++score[std::abs(l)];
    int best = 0, best_score = -1;
    for (const auto& [v, s] : score)
      if (s > best_score) {
        best = v;
        best_score = s;
      }
    return best;
  }

  static std::vector<Cnf> components(const Cnf& f) {
    std::vector<int> vars = vars_of(f);
    std::vector<int> parent(vars.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto idx = [&](int v) { return static_cast<int>(std::lower_bound(vars.begin(), vars.end(), v) - vars.begin()); };
    std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
    for (const auto& c : f)
      for (std::size_t i = 1; i < c.size(); ++i) parent[find(idx(std::abs(c[i])))] = find(idx(std::abs(c[0])));
    std::map<int, Cnf> groups;
    for (const auto& c : f) groups[find(idx(std::abs(c[0])))].push_back(c);
    std::vector<Cnf> out;
    for (auto& [root, g] : groups) out.push_back(std::move(g));
    return out;
  }

  std::vector<Scalar> wt_, wf_, sum_;
  std::unordered_map<std::vector<int>, Scalar, KeyHash> memo_;
};

}  // namespace

Weight wmc_dpll(const GroundCnf& cnf) {
  if (cnf.exact) return Weight(Dpll<Rational>(cnf).count(cnf));
  return Weight::from_double(Dpll<double>(cnf).count(cnf));
}

Weight wmc_dpll(const GroundProblem& g) { return wmc_dpll(to_ground_cnf(g)); }

}  // namespace wfomc
