#include <sstream>

#include "wfomc/logic.hpp"

namespace wfomc {

namespace {

bool bare_constant(const std::string& name) {
  return is_identifier(name) && name.front() >= 'A' && name.front() <= 'Z';
}

void print_term(std::ostream& os, const Term& t) {
  if (t.is_variable() || bare_constant(t.name())) os << t.name();
  else os << '"' << t.name() << '"';
}

void print_atom(std::ostream& os, const Atom& a) {
  os << a.pred.name;
  if (a.args.empty()) return;
  os << '(';
  for (std::size_t i = 0; i < a.args.size(); ++i) {
    if (i) os << ',';
    print_term(os, a.args[i]);
  }
  os << ')';
}

bool is_simple(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::True:
    case Formula::Kind::False:
    case Formula::Kind::Atom:
    case Formula::Kind::Not:  // its operand is parenthesized when needed
      return true;
    default:
      return false;
  }
}

void print(std::ostream& os, const Formula& f);

void print_operand(std::ostream& os, const Formula& f) {
  if (is_simple(f)) {
    print(os, f);
  } else {
    os << '(';
    print(os, f);
    os << ')';
  }
}

const char* infix(Formula::Kind k) {
  switch (k) {
    case Formula::Kind::And: return " & ";
    case Formula::Kind::Or: return " | ";
    case Formula::Kind::Implies: return " -> ";
    default: return " <-> ";
  }
}

void print(std::ostream& os, const Formula& f) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::True: os << "true"; return;
    case K::False: os << "false"; return;
    case K::Atom: print_atom(os, f.atom()); return;
    case K::Not:
      os << '~';
      print_operand(os, f.child(0));
      return;
    case K::ForAll:
    case K::Exists: {
      os << (f.is(K::ForAll) ? "forall " : "exists ") << f.variable() << ' ';
      const Formula& b = f.body();
      if (b.is_quantifier() || is_simple(b)) print(os, b);
      else print_operand(os, b);
      return;
    }
    default: {
      auto kids = f.children();
      for (std::size_t i = 0; i < kids.size(); ++i) {
        if (i) os << infix(f.kind());
        print_operand(os, kids[i]);
      }
    }
  }
}

}  // namespace

std::string to_string(const Formula& f) {
  std::ostringstream os;
  print(os, f);
  return os.str();
}

std::string to_string(const Atom& a) {
  std::ostringstream os;
  print_atom(os, a);
  return os.str();
}

}  // namespace wfomc
