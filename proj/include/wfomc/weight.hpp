#pragma once

#include <gmpxx.h>

#include <iosfwd>
#include <string>
#include <string_view>
#include <variant>

namespace wfomc {

using Rational = mpq_class;

/// A predicate or literal weight. Either an exact normalized rational or a
/// double; arithmetic between an exact and a float operand yields a float.
/// Counting engines never mix the two: they pick one scalar type up front.
class Weight {
 public:
  Weight() : value_(Rational(0)) {}
  Weight(long v) : value_(Rational(v)) {}  // NOLINT(google-explicit-constructor)
  Weight(int v) : value_(Rational(v)) {}   // NOLINT(google-explicit-constructor)
  Weight(Rational v);                      // NOLINT(google-explicit-constructor)
  static Weight from_double(double v) { return Weight(FloatTag{}, v); }

  /// Accepts `3`, `-1`, `3/10`, `0.3`, `1e-2` (all exact) and `2.5f`,
  /// `exp(1.3)` (float).
  static Weight parse(std::string_view text);

  bool is_exact() const { return std::holds_alternative<Rational>(value_); }
  const Rational& exact() const;
  double to_double() const;

  bool is_zero() const;
  bool is_one() const;

  /// `7`, `-3/10`, or `3.6692966676192444f`.
  std::string str() const;

  friend Weight operator+(const Weight& a, const Weight& b);
  friend Weight operator-(const Weight& a, const Weight& b);
  friend Weight operator*(const Weight& a, const Weight& b);
  friend Weight operator/(const Weight& a, const Weight& b);
  Weight operator-() const;

  /// Exact comparison: a float and a rational are never equal.
  friend bool operator==(const Weight& a, const Weight& b);

 private:
  struct FloatTag {};
  Weight(FloatTag, double v) : value_(v) {}

  std::variant<Rational, double> value_;
};

std::ostream& operator<<(std::ostream& os, const Weight& w);

/// Exact power with a non-negative integer exponent.
Weight pow(const Weight& base, unsigned long exponent);

/// Parses an exact decimal/fraction literal; throws std::invalid_argument.
Rational parse_rational(std::string_view text);

/// Shortest decimal that round-trips to the same double.
std::string format_double(double v);

/// Scalar conversion used by the templated counting engines.
template <class Scalar>
Scalar weight_as(const Weight& w);

template <>
inline Rational weight_as<Rational>(const Weight& w) {
  return w.exact();
}

template <>
inline double weight_as<double>(const Weight& w) {
  return w.to_double();
}

}  // namespace wfomc
