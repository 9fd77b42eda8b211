#include "wfomc/error.hpp"
#include "wfomc/ground.hpp"

namespace wfomc {

Weight wfomc(const WeightedTheory& t, const Domain& d, const CountOptions& opts) {
  GroundProblem g = ground(t, d);
  switch (opts.engine) {
    case Engine::Brute:
      return wmc_bruteforce(g, {opts.max_atoms, opts.workers});
    case Engine::Dpll:
      return wmc_dpll(g);
    case Engine::Auto:
      break;
  }
  std::size_t occurring = 0;
  for (bool b : g.formula.occurring(g.atoms.size())) occurring += b;
  if (occurring <= opts.max_atoms) return wmc_bruteforce(g, {opts.max_atoms, opts.workers});
  return wmc_dpll(g);
}

}  // namespace wfomc
