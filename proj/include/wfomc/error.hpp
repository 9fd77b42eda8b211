#pragma once

#include <stdexcept>
#include <string>

namespace wfomc {

/// Input could not be parsed. Always carries a 1-based source location.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, int line, int column)
      : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + msg),
        line_(line),
        column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

/// Domain is empty or misses a constant used by the theory.
class DomainError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Logic program has a positive loop.
class TightnessError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A configured size cap (atoms, worlds) was exceeded.
class ResourceError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Malformed model or theory that parsed fine (arity clash, stale site, ...).
class ModelError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace wfomc
