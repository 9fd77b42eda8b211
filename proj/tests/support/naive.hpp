#pragma once

// Reference counter for tests: enumerates interpretations directly over the
// formula tree, with no grounding step and no shared code with the engines.

#include <cmath>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "wfomc/logic.hpp"

namespace naive {

using wfomc::Formula;
using wfomc::Weight;
using K = Formula::Kind;

struct World {
  std::map<std::string, int> index;  // "P(A,B)" -> bit
  std::vector<bool> bits;
};

inline std::string key(const std::string& pred, const std::vector<std::string>& args) {
  std::string k = pred + "(";
  for (std::size_t i = 0; i < args.size(); ++i) k += (i ? "," : "") + args[i];
  return k + ")";
}

inline bool eval(const Formula& f, const World& w, std::map<std::string, std::string>& env,
                 const std::vector<std::string>& dom) {
  switch (f.kind()) {
    case K::True: return true;
    case K::False: return false;
    case K::Atom: {
      std::vector<std::string> args;
      for (const auto& t : f.atom().args) args.push_back(t.is_variable() ? env.at(t.name()) : t.name());
      return w.bits[w.index.at(key(f.atom().pred.name, args))];
    }
    case K::Not: return !eval(f.child(0), w, env, dom);
    case K::And:
      for (const auto& c : f.children())
        if (!eval(c, w, env, dom)) return false;
      return true;
    case K::Or:
      for (const auto& c : f.children())
        if (eval(c, w, env, dom)) return true;
      return false;
    case K::Implies: return !eval(f.child(0), w, env, dom) || eval(f.child(1), w, env, dom);
    case K::Iff: return eval(f.child(0), w, env, dom) == eval(f.child(1), w, env, dom);
    case K::ForAll:
    case K::Exists: {
      bool want = f.is(K::Exists);
      auto saved = env.find(f.variable()) != env.end() ? std::optional(env[f.variable()]) : std::nullopt;
      bool result = !want;
      for (const auto& c : dom) {
        env[f.variable()] = c;
        if (eval(f.body(), w, env, dom) == want) {
          result = want;
          break;
        }
      }
      if (saved) env[f.variable()] = *saved;
      else env.erase(f.variable());
      return result;
    }
  }
  return false;
}

inline void tuples(int arity, const std::vector<std::string>& dom, std::vector<std::string>& cur,
                   std::vector<std::vector<std::string>>& out) {
  if (static_cast<int>(cur.size()) == arity) {
    out.push_back(cur);
    return;
  }
  for (const auto& c : dom) {
    cur.push_back(c);
    tuples(arity, dom, cur, out);
    cur.pop_back();
  }
}

/// Sum over all interpretations of the signature of the product of literal
/// weights, times the theory's factors.
inline Weight wfomc(const wfomc::WeightedTheory& t, const std::vector<std::string>& dom, std::size_t cap = 22) {
  if (t.unsatisfiable()) return 0;
  World w;
  std::vector<std::pair<Weight, Weight>> wts;
  for (const auto& p : t.signature()) {
    std::vector<std::vector<std::string>> ts;
    std::vector<std::string> cur;
    tuples(p.arity, dom, cur, ts);
    auto wp = t.weights().get(p);
    for (const auto& args : ts) {
      w.index[key(p.name, args)] = static_cast<int>(wts.size());
      wts.emplace_back(wp.w_true, wp.w_false);
    }
  }
  if (wts.size() > cap) throw std::runtime_error("naive oracle: too many atoms");
  Weight total = 0;
  w.bits.assign(wts.size(), false);
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << wts.size()); ++m) {
    for (std::size_t i = 0; i < wts.size(); ++i) w.bits[i] = (m >> i) & 1;
    std::map<std::string, std::string> env;
    bool ok = true;
    for (const auto& s : t.sentences())
      if (!eval(s, w, env, dom)) {
        ok = false;
        break;
      }
    if (!ok) continue;
    Weight prod = 1;
    for (std::size_t i = 0; i < wts.size(); ++i) prod = prod * (w.bits[i] ? wts[i].first : wts[i].second);
    total = total + prod;
  }
  for (const auto& f : t.factors()) total = total * pow(f.base, static_cast<unsigned long>(std::pow(dom.size(), f.arity)));
  return total;
}

}  // namespace naive
