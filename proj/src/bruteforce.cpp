#include <bit>
#include <thread>
#include <unordered_map>

#include "wfomc/error.hpp"
#include "wfomc/ground.hpp"

namespace wfomc {

namespace {

using Op = GroundFormula::Op;

struct Instr {
  Op op;
  int arg;  // variable for Var, operand count for And/Or
};

// Postfix program evaluating the formula on 64 assignments at once.
class Program {
 public:
  Program(const GroundFormula& f, const std::vector<int>& local) {
    emit(f, f.root(), local);
  }

  std::uint64_t run(const std::vector<std::uint64_t>& values, std::vector<std::uint64_t>& stack) const {
    stack.clear();
    for (const auto& in : code_) {
      switch (in.op) {
        case Op::True: stack.push_back(~0ULL); break;
        case Op::False: stack.push_back(0); break;
        case Op::Var: stack.push_back(values[in.arg]); break;
        case Op::Not: stack.back() = ~stack.back(); break;
        case Op::And: {
          std::uint64_t r = ~0ULL;
          for (int i = 0; i < in.arg; ++i) {
            r &= stack.back();
            stack.pop_back();
          }
          stack.push_back(r);
          break;
        }
        case Op::Or: {
          std::uint64_t r = 0;
          for (int i = 0; i < in.arg; ++i) {
            r |= stack.back();
            stack.pop_back();
          }
          stack.push_back(r);
          break;
        }
        case Op::Implies: {
          std::uint64_t b = stack.back();
          stack.pop_back();
          stack.back() = ~stack.back() | b;
          break;
        }
        case Op::Iff: {
          std::uint64_t b = stack.back();
          stack.pop_back();
          stack.back() = ~(stack.back() ^ b);
          break;
        }
      }
    }
    return stack.back();
  }

 private:
  void emit(const GroundFormula& f, int i, const std::vector<int>& local) {
    const auto& n = f.node(i);
    for (int k : n.kids) emit(f, k, local);
    int arg = n.op == Op::Var ? local[n.var] : static_cast<int>(n.kids.size());
    code_.push_back({n.op, arg});
  }

  std::vector<Instr> code_;
};

using Histogram = std::unordered_map<std::uint64_t, std::uint64_t>;

template <class Scalar>
Scalar count(const GroundProblem& g, const BruteForceOptions& opts) {
  const std::size_t total = g.atoms.size();
  std::vector<bool> occ = g.formula.occurring(total);
  std::vector<int> vars, local(total, -1);
  Scalar free_factor = 1;
  for (std::size_t i = 0; i < total; ++i) {
    if (occ[i]) {
      local[i] = static_cast<int>(vars.size());
      vars.push_back(static_cast<int>(i));
    } else {
      free_factor *= weight_as<Scalar>(g.weights[i].w_true) + weight_as<Scalar>(g.weights[i].w_false);
    }
  }
  const std::size_t n = vars.size();
  if (n > opts.max_atoms)
    throw ResourceError(std::to_string(n) + " atoms exceed the brute-force cap of " + std::to_string(opts.max_atoms) +
                        "; use the dpll engine");

  // Weight classes: assignments only matter through how many atoms of each
  // class are true, so the enumeration just fills a histogram.
  std::vector<WeightPair> classes;
  std::vector<int> class_size;
  std::vector<int> class_of(n);
  for (std::size_t j = 0; j < n; ++j) {
    const auto& w = g.weights[vars[j]];
    auto it = std::find(classes.begin(), classes.end(), w);
    if (it == classes.end()) {
      classes.push_back(w);
      class_size.push_back(0);
      it = classes.end() - 1;
    }
    class_of[j] = static_cast<int>(it - classes.begin());
    ++class_size[class_of[j]];
  }
  std::vector<std::uint64_t> stride(classes.size());
  std::uint64_t codes = 1;
  for (std::size_t c = 0; c < classes.size(); ++c) {
    stride[c] = codes;
    codes *= static_cast<std::uint64_t>(class_size[c] + 1);
  }

  const std::size_t low = std::min<std::size_t>(n, 6);
  const std::size_t high = n - low;
  const std::uint64_t valid = low == 6 ? ~0ULL : ((1ULL << (1ULL << low)) - 1);
  std::vector<std::uint64_t> low_code(1ULL << low, 0);
  for (std::uint64_t b = 0; b < low_code.size(); ++b)
    for (std::size_t j = 0; j < low; ++j)
      if ((b >> j) & 1) low_code[b] += stride[class_of[j]];

  Program prog(g.formula, local);
  const bool dense = codes <= (1ULL << 22);
  const std::uint64_t batches = 1ULL << high;
  const unsigned workers = std::max(1U, std::min<unsigned>(opts.workers, static_cast<unsigned>(std::min<std::uint64_t>(batches, 64))));

  std::vector<std::vector<std::uint64_t>> dense_hist(workers);
  std::vector<Histogram> sparse_hist(workers);

  auto work = [&](unsigned w) {
    std::uint64_t begin = batches * w / workers, end = batches * (w + 1) / workers;
    std::vector<std::uint64_t> values(n), stack;
    auto& dh = dense_hist[w];
    auto& sh = sparse_hist[w];
    if (dense) dh.assign(codes, 0);
    for (std::size_t j = 0; j < low; ++j) {
      std::uint64_t m = 0;
      for (std::uint64_t b = 0; b < 64; ++b)
        if ((b >> j) & 1) m |= 1ULL << b;
      values[j] = m;
    }
    for (std::uint64_t h = begin; h < end; ++h) {
      std::uint64_t base = 0;
      for (std::size_t j = 0; j < high; ++j) {
        bool on = (h >> j) & 1;
        values[low + j] = on ? ~0ULL : 0;
        if (on) base += stride[class_of[low + j]];
      }
      std::uint64_t sat = prog.run(values, stack) & valid;
      while (sat) {
        int b = std::countr_zero(sat);
        sat &= sat - 1;
        std::uint64_t code = base + low_code[b];
        if (dense) ++dh[code];
        else ++sh[code];
      }
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
  }

  Histogram merged;
  for (unsigned w = 0; w < workers; ++w) {
    if (dense) {
      for (std::uint64_t c = 0; c < dense_hist[w].size(); ++c)
        if (dense_hist[w][c]) merged[c] += dense_hist[w][c];
    } else {
      for (const auto& [c, k] : sparse_hist[w]) merged[c] += k;
    }
  }

  // pw[c][t] = wt^t * wf^(m-t)
  std::vector<std::vector<Scalar>> pw(classes.size());
  for (std::size_t c = 0; c < classes.size(); ++c) {
    Scalar wt = weight_as<Scalar>(classes[c].w_true), wf = weight_as<Scalar>(classes[c].w_false);
    int m = class_size[c];
    std::vector<Scalar> tp(m + 1, Scalar(1)), fp(m + 1, Scalar(1));
    for (int i = 1; i <= m; ++i) {
      tp[i] = tp[i - 1] * wt;
      fp[i] = fp[i - 1] * wf;
    }
    for (int t = 0; t <= m; ++t) pw[c].push_back(tp[t] * fp[m - t]);
  }

  // Sum in code order so the floating-point result does not depend on
  // hash-map iteration order.
  std::vector<std::pair<std::uint64_t, std::uint64_t>> entries(merged.begin(), merged.end());
  std::sort(entries.begin(), entries.end());
  Scalar sum = 0;
  for (const auto& [code, k] : entries) {
    Scalar term = Scalar(static_cast<unsigned long>(k));
    std::uint64_t rest = code;
    for (std::size_t c = 0; c < classes.size(); ++c) {
      std::uint64_t radix = class_size[c] + 1;
      term *= pw[c][rest % radix];
      rest /= radix;
    }
    sum += term;
  }
  return sum * free_factor * weight_as<Scalar>(g.multiplier);
}

}  // namespace

Weight wmc_bruteforce(const GroundProblem& g, const BruteForceOptions& opts) {
  if (g.exact) return Weight(count<Rational>(g, opts));
  return Weight::from_double(count<double>(g, opts));
}

}  // namespace wfomc
