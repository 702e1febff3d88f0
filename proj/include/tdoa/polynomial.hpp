#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "tdoa/rational.hpp"

namespace tdoa {

/// Exponent pair of the monomial x^i y^j.
struct Monomial {
  int i = 0;
  int j = 0;

  [[nodiscard]] int degree() const { return i + j; }
  friend auto operator<=>(const Monomial&, const Monomial&) = default;
};

enum class Var { X, Y };

/// Sparse bivariate polynomial with exact rational coefficients.
///
/// Zero coefficients are never stored, so two polynomials are equal iff their
/// term maps are equal.
class BivariatePoly {
 public:
  using TermMap = std::map<Monomial, Rational>;

  BivariatePoly() = default;
  BivariatePoly(const Rational& constant);  // NOLINT(google-explicit-constructor)

  static BivariatePoly x();
  static BivariatePoly y();
  static BivariatePoly monomial(int i, int j, const Rational& c = Rational(1));
  /// a*x + b*y + c
  static BivariatePoly linear(const Rational& a, const Rational& b, const Rational& c);

  [[nodiscard]] const TermMap& terms() const { return terms_; }
  [[nodiscard]] bool is_zero() const { return terms_.empty(); }
  [[nodiscard]] std::size_t size() const { return terms_.size(); }
  [[nodiscard]] Rational coefficient(int i, int j) const;
  /// Highest i+j over stored terms; std::nullopt for the zero polynomial.
  [[nodiscard]] std::optional<int> total_degree() const;

  /// Sets one coefficient (removes the term when c == 0).
  void set(int i, int j, const Rational& c);

  BivariatePoly& operator+=(const BivariatePoly& o);
  BivariatePoly& operator-=(const BivariatePoly& o);
  BivariatePoly& operator*=(const Rational& s);

  friend BivariatePoly operator+(BivariatePoly a, const BivariatePoly& b) { return a += b; }
  friend BivariatePoly operator-(BivariatePoly a, const BivariatePoly& b) { return a -= b; }
  friend BivariatePoly operator-(BivariatePoly a) { return a *= Rational(-1); }
  friend BivariatePoly operator*(const BivariatePoly& a, const BivariatePoly& b);
  friend BivariatePoly operator*(BivariatePoly a, const Rational& s) { return a *= s; }
  friend BivariatePoly operator*(const Rational& s, BivariatePoly a) { return a *= s; }
  friend bool operator==(const BivariatePoly&, const BivariatePoly&) = default;

  [[nodiscard]] Rational eval(const Rational& x, const Rational& y) const;
  /// Floating evaluation; term values are combined by pairwise summation.
  [[nodiscard]] double eval(double x, double y) const;

  [[nodiscard]] BivariatePoly diff(Var v) const;
  [[nodiscard]] BivariatePoly homogeneous_component(int d) const;
  [[nodiscard]] BivariatePoly pow(unsigned exponent) const;

  /// Univariate coefficients (ascending powers of t) of p(px + t*vx, py + t*vy).
  [[nodiscard]] std::vector<Rational> restrict_to_line(const Rational& px, const Rational& py,
                                                       const Rational& vx, const Rational& vy) const;

  /// Human-readable form, highest degree first, e.g. "-4*x^4*y + 2*x^4 + 1".
  [[nodiscard]] std::string str() const;

 private:
  TermMap terms_;
};

BivariatePoly poly_add(const BivariatePoly& p, const BivariatePoly& q);
BivariatePoly poly_mul(const BivariatePoly& p, const BivariatePoly& q);
Rational poly_eval(const BivariatePoly& p, const Rational& x, const Rational& y);
double poly_eval(const BivariatePoly& p, double x, double y);
BivariatePoly poly_diff(const BivariatePoly& p, Var v);
BivariatePoly homogeneous_component(const BivariatePoly& p, int d);

/// Pairwise (cascade) summation of a sequence of doubles.
double pairwise_sum(std::span<const double> values);

/// Coefficients rounded once to double for repeated floating evaluation.
class NumericPoly {
 public:
  NumericPoly() = default;
  explicit NumericPoly(const BivariatePoly& p);

  [[nodiscard]] double operator()(double x, double y) const;
  /// Sum of |c x^i y^j| over terms: the magnitude against which rounding in
  /// operator() should be judged.
  [[nodiscard]] double magnitude(double x, double y) const;

 private:
  struct Term {
    int i;
    int j;
    double c;
  };
  std::vector<Term> terms_;
  int max_i_ = 0;
  int max_j_ = 0;
};

/// JSON array of {"i": int, "j": int, "c": "num/den"} records, sorted by (i, j).
nlohmann::json poly_to_json(const BivariatePoly& p);
/// Inverse of poly_to_json; repeated exponents are summed. Throws ParseError.
BivariatePoly poly_from_json(const nlohmann::json& j);

}  // namespace tdoa
