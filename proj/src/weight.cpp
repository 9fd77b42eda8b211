#include "wfomc/weight.hpp"

#include <charconv>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace wfomc {

Weight::Weight(Rational v) : value_(std::move(v)) {
  std::get<Rational>(value_).canonicalize();
}

const Rational& Weight::exact() const {
  if (const auto* q = std::get_if<Rational>(&value_)) return *q;
  throw std::logic_error("exact value requested from a float weight");
}

double Weight::to_double() const {
  if (const auto* q = std::get_if<Rational>(&value_)) return q->get_d();
  return std::get<double>(value_);
}

bool Weight::is_zero() const {
  if (const auto* q = std::get_if<Rational>(&value_)) return sgn(*q) == 0;
  return std::get<double>(value_) == 0.0;
}

bool Weight::is_one() const {
  if (const auto* q = std::get_if<Rational>(&value_)) return *q == 1;
  return std::get<double>(value_) == 1.0;
}

std::string Weight::str() const {
  if (const auto* q = std::get_if<Rational>(&value_)) {
    if (q->get_den() == 1) return q->get_num().get_str();
    return q->get_num().get_str() + "/" + q->get_den().get_str();
  }
  return format_double(std::get<double>(value_)) + "f";
}

namespace {

template <class Op>
Weight combine(const Weight& a, const Weight& b, Op op) {
  if (a.is_exact() && b.is_exact()) return Weight(Rational(op(a.exact(), b.exact())));
  return Weight::from_double(op(a.to_double(), b.to_double()));
}

}  // namespace

Weight operator+(const Weight& a, const Weight& b) {
  return combine(a, b, [](const auto& x, const auto& y) { return x + y; });
}
Weight operator-(const Weight& a, const Weight& b) {
  return combine(a, b, [](const auto& x, const auto& y) { return x - y; });
}
Weight operator*(const Weight& a, const Weight& b) {
  return combine(a, b, [](const auto& x, const auto& y) { return x * y; });
}
Weight operator/(const Weight& a, const Weight& b) {
  if (b.is_zero()) throw std::domain_error("division by zero weight");
  return combine(a, b, [](const auto& x, const auto& y) { return x / y; });
}

Weight Weight::operator-() const {
  if (is_exact()) return Weight(Rational(-exact()));
  return from_double(-to_double());
}

bool operator==(const Weight& a, const Weight& b) {
  if (a.is_exact() != b.is_exact()) return false;
  if (a.is_exact()) return a.exact() == b.exact();
  return a.to_double() == b.to_double();
}

std::ostream& operator<<(std::ostream& os, const Weight& w) { return os << w.str(); }

Weight pow(const Weight& base, unsigned long exponent) {
  if (base.is_exact()) {
    mpz_class num, den;
    mpz_pow_ui(num.get_mpz_t(), base.exact().get_num_mpz_t(), exponent);
    mpz_pow_ui(den.get_mpz_t(), base.exact().get_den_mpz_t(), exponent);
    return Weight(Rational(num, den));
  }
  return Weight::from_double(std::pow(base.to_double(), static_cast<double>(exponent)));
}

Rational parse_rational(std::string_view text) {
  auto fail = [&]() -> Rational {
    throw std::invalid_argument("malformed number '" + std::string(text) + "'");
  };
  if (text.empty()) return fail();

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    Rational num = parse_rational(text.substr(0, slash));
    Rational den = parse_rational(text.substr(slash + 1));
    if (num.get_den() != 1 || den.get_den() != 1) return fail();
    if (sgn(den) == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    Rational r(num.get_num(), den.get_num());
    r.canonicalize();
    return r;
  }

  size_t i = 0;
  bool negative = false;
  if (text[i] == '+' || text[i] == '-') {
    negative = text[i] == '-';
    ++i;
  }
  std::string digits;
  long scale = 0;
  bool seen_digit = false;
  bool seen_point = false;
  for (; i < text.size(); ++i) {
    char c = text[i];
    if (c >= '0' && c <= '9') {
      digits.push_back(c);
      seen_digit = true;
      if (seen_point) ++scale;
    } else if (c == '.' && !seen_point) {
      seen_point = true;
    } else {
      break;
    }
  }
  if (!seen_digit) return fail();
  long exponent = 0;
  if (i < text.size()) {
    if (text[i] != 'e' && text[i] != 'E') return fail();
    ++i;
    auto rest = text.substr(i);
    if (!rest.empty() && rest.front() == '+') rest.remove_prefix(1);
    auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), exponent);
    if (ec != std::errc() || ptr != rest.data() + rest.size() || rest.empty()) return fail();
  }
  mpz_class num(digits, 10);
  long shift = exponent - scale;
  mpz_class ten_pow;
  mpz_ui_pow_ui(ten_pow.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(shift)));
  Rational r = shift >= 0 ? Rational(num * ten_pow) : Rational(num, ten_pow);
  r.canonicalize();
  return negative ? Rational(-r) : r;
}

Weight Weight::parse(std::string_view text) {
  if (text.starts_with("exp(") && text.ends_with(")")) {
    Rational e = parse_rational(text.substr(4, text.size() - 5));
    return from_double(std::exp(e.get_d()));
  }
  if (!text.empty() && (text.back() == 'f' || text.back() == 'F')) {
    auto body = text.substr(0, text.size() - 1);
    double v = 0;
    auto [ptr, ec] = std::from_chars(body.data(), body.data() + body.size(), v);
    if (ec != std::errc() || ptr != body.data() + body.size() || body.empty())
      throw std::invalid_argument("malformed float weight '" + std::string(text) + "'");
    return from_double(v);
  }
  return Weight(parse_rational(text));
}

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;
  return std::string(buf, ptr);
}

}  // namespace wfomc
