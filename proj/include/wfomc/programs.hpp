#pragma once

#include <optional>
#include <vector>

#include "wfomc/logic.hpp"

namespace wfomc {

/// One MLN line. A missing weight marks a hard formula (`inf`).
struct MlnFormula {
  std::optional<Weight> weight;
  Formula formula;  // free variables allowed

  bool hard() const { return !weight.has_value(); }
  friend bool operator==(const MlnFormula&, const MlnFormula&) = default;
};

struct MlnModel {
  std::vector<MlnFormula> formulas;

  friend bool operator==(const MlnModel&, const MlnModel&) = default;
};

struct Literal {
  Atom atom;
  bool positive = true;

  friend bool operator==(const Literal&, const Literal&) = default;
};

struct ProbFact {
  Rational probability;
  Atom atom;

  friend bool operator==(const ProbFact&, const ProbFact&) = default;
};

/// `head :- body.`; an empty body is a deterministic fact.
struct Rule {
  Atom head;
  std::vector<Literal> body;

  friend bool operator==(const Rule&, const Rule&) = default;
};

struct LogicProgram {
  std::vector<ProbFact> facts;
  std::vector<Rule> rules;

  friend bool operator==(const LogicProgram&, const LogicProgram&) = default;
};

}  // namespace wfomc
