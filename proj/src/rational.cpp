#include "tdoa/rational.hpp"

#include <cctype>
#include <cmath>
#include <ostream>

#include "tdoa/errors.hpp"

namespace tdoa {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

[[noreturn]] void bad(std::string_view text) {
  throw ParseError("invalid rational literal: '" + std::string(text) + "'");
}

// Parses an optionally signed integer; returns false on malformed input.
bool parse_int(std::string_view s, long& out) {
  bool neg = false;
  if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
    neg = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s) || s.size() > 6) return false;
  out = std::stol(std::string(s));
  if (neg) out = -out;
  return true;
}

mpz_class pow10(unsigned long k) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, k);
  return r;
}

}  // namespace

Rational::Rational(long numerator, long denominator) {
  if (denominator == 0) throw std::domain_error("Rational: zero denominator");
  v_ = mpq_class(numerator, denominator);
  v_.canonicalize();
}

Rational::Rational(mpq_class value) : v_(std::move(value)) { v_.canonicalize(); }

Rational Rational::from_double(double value) {
  if (!std::isfinite(value)) throw std::domain_error("Rational::from_double: non-finite value");
  return Rational(mpq_class(value));
}

Rational Rational::parse(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  if (s.empty()) bad(text);

  if (const auto slash = s.find('/'); slash != std::string_view::npos) {
    Rational num = parse(s.substr(0, slash));
    Rational den = parse(s.substr(slash + 1));
    if (!num.is_integer() || !den.is_integer() || den.is_zero()) bad(text);
    if (s.substr(slash + 1).find_first_of("+-") != std::string_view::npos) bad(text);
    return num / den;
  }

  bool neg = false;
  if (s.front() == '+' || s.front() == '-') {
    neg = s.front() == '-';
    s.remove_prefix(1);
  }

  long exponent = 0;
  if (const auto e = s.find_first_of("eE"); e != std::string_view::npos) {
    if (!parse_int(s.substr(e + 1), exponent)) bad(text);
    s = s.substr(0, e);
  }

  std::string_view int_part = s;
  std::string_view frac_part;
  if (const auto dot = s.find('.'); dot != std::string_view::npos) {
    int_part = s.substr(0, dot);
    frac_part = s.substr(dot + 1);
  }
  if (int_part.empty() && frac_part.empty()) bad(text);
  if (!int_part.empty() && !all_digits(int_part)) bad(text);
  if (!frac_part.empty() && !all_digits(frac_part)) bad(text);

  const std::string digits = std::string(int_part) + std::string(frac_part);
  mpz_class num(digits.empty() ? std::string("0") : digits, 10);
  if (neg) num = -num;

  long scale = exponent - static_cast<long>(frac_part.size());
  mpq_class q(num);
  if (scale > 0) {
    q *= mpq_class(pow10(static_cast<unsigned long>(scale)));
  } else if (scale < 0) {
    q /= mpq_class(pow10(static_cast<unsigned long>(-scale)));
  }
  return Rational(std::move(q));
}

std::string Rational::str() const {
  if (is_integer()) return v_.get_num().get_str();
  return v_.get_str();
}

std::string Rational::fraction_str() const {
  return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw std::domain_error("Rational: division by zero");
  v_ /= o.v_;
  return *this;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

Rational pow(const Rational& base, unsigned exponent) {
  Rational result(1);
  Rational b = base;
  while (exponent > 0) {
    if (exponent & 1U) result *= b;
    exponent >>= 1U;
    if (exponent > 0) b *= b;
  }
  return result;
}

}  // namespace tdoa
