#include "wfomc/frontends.hpp"

#include <map>
#include <sstream>

#include <json.hpp>

#include "lexer.hpp"
#include "wfomc/error.hpp"

namespace wfomc {

namespace {

using detail::Tok;
using detail::Token;

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  const Token& peek(std::size_t ahead = 0) const {
    return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
  }
  bool at(Tok k) const { return peek().kind == k; }
  bool at_word(std::string_view w) const { return at(Tok::Ident) && peek().text == w; }
  const Token& next() {
    const Token& t = peek();
    if (pos_ < toks_.size() - 1) ++pos_;
    return t;
  }
  bool accept(Tok k) {
    if (!at(k)) return false;
    next();
    return true;
  }
  const Token& expect(Tok k, std::string_view context = {}) {
    if (!at(k)) {
      std::string msg = std::string("expected ") + describe(k);
      if (!context.empty()) msg += " " + std::string(context);
      fail(msg + ", found " + found());
    }
    return next();
  }
  [[noreturn]] void fail(const std::string& msg) const { fail_at(peek(), msg); }
  [[noreturn]] static void fail_at(const Token& t, const std::string& msg) { throw ParseError(msg, t.line, t.column); }
  std::string found() const {
    const Token& t = peek();
    if (t.kind == Tok::Ident || t.kind == Tok::Number) return "'" + t.text + "'";
    return describe(t.kind);
  }
  void skip_newlines() {
    while (at(Tok::Newline)) next();
  }
  void skip_separators() {
    while (at(Tok::Newline) || at(Tok::Dot)) next();
  }
  void end_statement() {
    if (at(Tok::End)) return;
    if (at(Tok::Newline) || at(Tok::Dot)) {
      next();
      return;
    }
    fail("expected end of statement, found " + found());
  }

  Formula formula() { return iff(); }

  Formula iff() {
    Formula lhs = imp();
    while (accept(Tok::Iff)) {
      skip_newlines();
      lhs = Formula::iff(lhs, imp());
    }
    return lhs;
  }

  Formula imp() {
    Formula lhs = disj();
    if (accept(Tok::Implies)) {
      skip_newlines();
      return Formula::implies(lhs, imp());
    }
    return lhs;
  }

  Formula disj() {
    std::vector<Formula> ops{conj()};
    while (accept(Tok::Or)) {
      skip_newlines();
      ops.push_back(conj());
    }
    return Formula::disj(std::move(ops));
  }

  Formula conj() {
    std::vector<Formula> ops{unary()};
    while (accept(Tok::And)) {
      skip_newlines();
      ops.push_back(unary());
    }
    return Formula::conj(std::move(ops));
  }

  Formula unary() {
    if (accept(Tok::Not)) return Formula::negation(unary());
    if (at_word("forall") || at_word("exists")) {
      bool universal = next().text == "forall";
      const Token& v = expect(Tok::Ident, "after quantifier");
      if (!is_variable_name(v.text)) fail_at(v, "quantified variable must start with a lowercase letter: '" + v.text + "'");
      skip_newlines();
      Formula body = formula();
      return universal ? Formula::forall(v.text, body) : Formula::exists(v.text, body);
    }
    return primary();
  }

  Formula primary() {
    if (accept(Tok::LParen)) {
      Formula f = formula();
      expect(Tok::RParen);
      return f;
    }
    if (at_word("true")) {
      next();
      return Formula::top();
    }
    if (at_word("false")) {
      next();
      return Formula::bottom();
    }
    if (at(Tok::Ident)) return Formula::atom(atom());
    fail("expected a formula, found " + found());
  }

  Atom atom() {
    const Token& name = expect(Tok::Ident, "(predicate name)");
    if (is_keyword(name.text)) fail_at(name, "keyword '" + name.text + "' cannot name a predicate");
    std::vector<Term> args;
    if (accept(Tok::LParen)) {
      do {
        args.push_back(term());
      } while (accept(Tok::Comma));
      expect(Tok::RParen, "after arguments");
    }
    Predicate p{name.text, static_cast<int>(args.size())};
    check_arity(name, p);
    return Atom(p, std::move(args));
  }

  Term term() {
    const Token& t = next();
    if (t.kind == Tok::Quoted) return Term::constant(t.text);
    if (t.kind == Tok::Ident) {
      if (is_variable_name(t.text)) return Term::variable(t.text);
      return Term::constant(t.text);
    }
    fail_at(t, std::string("expected a term, found ") + describe(t.kind));
  }

  void check_arity(const Token& where, const Predicate& p) {
    auto [it, inserted] = arities_.emplace(p.name, p.arity);
    if (!inserted && it->second != p.arity)
      fail_at(where, "predicate " + p.name + " used with arity " + std::to_string(p.arity) + " but earlier with " +
                         std::to_string(it->second));
  }

  Weight weight_literal() {
    if (at_word("exp")) {
      const Token& start = next();
      expect(Tok::LParen);
      const Token& x = expect(Tok::Number, "inside exp()");
      expect(Tok::RParen);
      return parse_weight(start, "exp(" + x.text + ")");
    }
    const Token& t = expect(Tok::Number, "(weight)");
    return parse_weight(t, t.text);
  }

  static Weight parse_weight(const Token& at, const std::string& text) {
    try {
      return Weight::parse(text);
    } catch (const std::exception& e) {
      fail_at(at, "malformed weight '" + text + "'");
    }
  }

  int arity_literal() {
    const Token& t = expect(Tok::Number, "(arity)");
    try {
      std::size_t used = 0;
      int n = std::stoi(t.text, &used);
      if (used == t.text.size() && n >= 0) return n;
    } catch (const std::exception&) {
    }
    fail_at(t, "arity must be a non-negative integer, got '" + t.text + "'");
  }

  std::map<std::string, int> arities_;

 private:
  static bool is_variable_name(const std::string& s) { return !s.empty() && s.front() >= 'a' && s.front() <= 'z'; }
  static bool is_keyword(const std::string& s) {
    return s == "forall" || s == "exists" || s == "true" || s == "false";
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

bool starts_directive(const Parser& p, std::string_view word, Tok follow) {
  return p.at_word(word) && p.peek(1).kind == follow;
}

std::string quote_constant(const std::string& c) {
  if (is_identifier(c) && c.front() >= 'A' && c.front() <= 'Z') return c;
  return "\"" + c + "\"";
}

}  // namespace

TheoryFile parse_theory(std::string_view text) {
  Parser p(detail::tokenize(text));
  WeightedTheory t;
  std::optional<Domain> domain;
  std::map<Predicate, bool> weighted;

  p.skip_separators();
  while (!p.at(Tok::End)) {
    const Token start = p.peek();
    if (starts_directive(p, "weight", Tok::Ident)) {
      p.next();
      const Token name = p.next();
      Predicate pred{name.text, p.arity_literal()};
      p.check_arity(name, pred);
      WeightPair w;
      w.w_true = p.weight_literal();
      w.w_false = p.weight_literal();
      if (weighted[pred]) Parser::fail_at(start, "duplicate weight declaration for " + to_string(pred));
      weighted[pred] = true;
      t.set_weight(pred, w);
    } else if (starts_directive(p, "predicate", Tok::Ident)) {
      p.next();
      const Token name = p.next();
      Predicate pred{name.text, p.arity_literal()};
      p.check_arity(name, pred);
      t.declare(pred);
    } else if (starts_directive(p, "factor", Tok::Number) || starts_directive(p, "factor", Tok::Ident)) {
      p.next();
      Weight base = p.weight_literal();
      t.add_factor({base, p.arity_literal()});
    } else if (starts_directive(p, "domain", Tok::Ident) || starts_directive(p, "domain", Tok::Quoted)) {
      p.next();
      std::vector<std::string> constants;
      do {
        const Token& c = p.next();
        if (c.kind != Tok::Ident && c.kind != Tok::Quoted) Parser::fail_at(c, "expected a constant in domain");
        constants.push_back(c.text);
      } while (p.accept(Tok::Comma));
      if (domain) Parser::fail_at(start, "duplicate domain declaration");
      try {
        domain.emplace(std::move(constants));
      } catch (const DomainError& e) {
        Parser::fail_at(start, e.what());
      }
    } else {
      Formula f = p.formula();
      try {
        t.add_sentence(std::move(f));
      } catch (const ModelError& e) {
        Parser::fail_at(start, e.what());
      }
    }
    p.end_statement();
    p.skip_separators();
  }
  return {std::move(t), std::move(domain)};
}

std::string serialize_theory(const WeightedTheory& t, const std::optional<Domain>& domain) {
  std::ostringstream os;
  std::set<Predicate> used;
  for (const auto& s : t.sentences())
    for (const auto& p : predicates(s)) used.insert(p);
  for (const auto& p : t.signature())
    if (!used.contains(p) && !t.weights().contains(p)) os << "predicate " << p.name << ' ' << p.arity << '\n';
  for (const auto& [p, w] : t.weights().entries())
    os << "weight " << p.name << ' ' << p.arity << ' ' << w.w_true << ' ' << w.w_false << '\n';
  for (const auto& f : t.factors()) os << "factor " << f.base << ' ' << f.arity << '\n';
  if (domain) {
    os << "domain ";
    for (std::size_t i = 0; i < domain->size(); ++i) os << (i ? ", " : "") << quote_constant((*domain)[i]);
    os << '\n';
  }
  for (const auto& s : t.sentences()) os << to_string(s) << '\n';
  return os.str();
}

Formula parse_formula(std::string_view text) {
  Parser p(detail::tokenize(text));
  p.skip_newlines();
  Formula f = p.formula();
  p.skip_separators();
  if (!p.at(Tok::End)) p.fail("unexpected " + p.found() + " after formula");
  return f;
}

MlnModel parse_mln(std::string_view text) {
  Parser p(detail::tokenize(text));
  MlnModel m;
  p.skip_separators();
  while (!p.at(Tok::End)) {
    MlnFormula entry;
    if (p.at_word("inf")) {
      p.next();
    } else if (p.at(Tok::Number)) {
      const Token& w = p.next();
      entry.weight = Parser::parse_weight(w, w.text);
    } else {
      p.fail("expected a weight or 'inf' at start of MLN line, found " + p.found());
    }
    entry.formula = p.formula();
    m.formulas.push_back(std::move(entry));
    p.end_statement();
    p.skip_separators();
  }
  return m;
}

std::string serialize_mln(const MlnModel& m) {
  std::ostringstream os;
  for (const auto& f : m.formulas) os << (f.hard() ? std::string("inf") : f.weight->str()) << ' ' << to_string(f.formula) << '\n';
  return os.str();
}

namespace {

std::vector<Token> without_newlines(std::vector<Token> toks) {
  std::erase_if(toks, [](const Token& t) { return t.kind == Tok::Newline; });
  return toks;
}

}  // namespace

LogicProgram parse_problog(std::string_view text) {
  Parser p(without_newlines(detail::tokenize(text)));
  LogicProgram prog;
  while (!p.at(Tok::End)) {
    if (p.at(Tok::Number)) {
      const Token prob = p.next();
      Weight w = Parser::parse_weight(prob, prob.text);
      if (!w.is_exact()) Parser::fail_at(prob, "probability must be an exact decimal or fraction");
      if (w.exact() < 0 || w.exact() > 1) Parser::fail_at(prob, "probability " + prob.text + " out of range [0,1]");
      p.expect(Tok::ColonColon, "after probability");
      prog.facts.push_back({w.exact(), p.atom()});
    } else {
      Rule r{p.atom(), {}};
      if (p.accept(Tok::ColonDash)) {
        do {
          bool positive = true;
          if (p.accept(Tok::Not) || p.accept(Tok::NegPlus)) {
            positive = false;
          } else if (p.at_word("not") && p.peek(1).kind == Tok::Ident) {
            p.next();
            positive = false;
          }
          r.body.push_back({p.atom(), positive});
        } while (p.accept(Tok::Comma));
      }
      prog.rules.push_back(std::move(r));
    }
    p.expect(Tok::Dot, "at end of clause");
  }
  return prog;
}

std::string serialize_problog(const LogicProgram& prog) {
  std::ostringstream os;
  for (const auto& f : prog.facts) os << Weight(f.probability) << " :: " << to_string(f.atom) << ".\n";
  for (const auto& r : prog.rules) {
    os << to_string(r.head);
    for (std::size_t i = 0; i < r.body.size(); ++i)
      os << (i ? ", " : " :- ") << (r.body[i].positive ? "" : "~") << to_string(r.body[i].atom);
    os << ".\n";
  }
  return os.str();
}

std::string count_json(const Weight& w, std::string_view key) {
  nlohmann::json j;
  if (w.is_exact()) {
    j[std::string(key)] = {{"num", w.exact().get_num().get_str()}, {"den", w.exact().get_den().get_str()}};
  } else {
    j[std::string(key) + "_float"] = w.to_double();
  }
  return j.dump();
}

}  // namespace wfomc
