#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "wfomc/logic.hpp"
#include "wfomc/programs.hpp"

namespace wfomc {

struct TheoryFile {
  WeightedTheory theory;
  std::optional<Domain> domain;
};

/// `.fol` text: sentences (one per line or `.`-terminated) and the
/// directives `weight P n wt wf`, `predicate P n`, `factor w n`, `domain A, B`.
TheoryFile parse_theory(std::string_view text);
std::string serialize_theory(const WeightedTheory& t, const std::optional<Domain>& domain = std::nullopt);

/// A single formula; free variables are kept.
Formula parse_formula(std::string_view text);

/// `.mln` text: one `<weight|inf> <formula>` per line.
MlnModel parse_mln(std::string_view text);
std::string serialize_mln(const MlnModel& m);

/// `.plp` text: `p :: Atom.` facts and `Head :- L1, ~L2.` rules.
LogicProgram parse_problog(std::string_view text);
std::string serialize_problog(const LogicProgram& p);

/// `{"count":{"num":"..","den":".."}}` or `{"count_float":v}`.
std::string count_json(const Weight& w, std::string_view key = "count");

}  // namespace wfomc
