#include "tdoa/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "tdoa/errors.hpp"

namespace tdoa {

namespace {

// base^0 .. base^n
template <class T>
std::vector<T> powers(const T& base, int n) {
  std::vector<T> out;
  out.reserve(static_cast<std::size_t>(n) + 1);
  out.emplace_back(1);
  for (int k = 1; k <= n; ++k) out.push_back(out.back() * base);
  return out;
}

double pairwise_sum_range(const double* first, std::size_t n) {
  if (n <= 8) {
    double s = 0.0;
    for (std::size_t k = 0; k < n; ++k) s += first[k];
    return s;
  }
  const std::size_t half = n / 2;
  return pairwise_sum_range(first, half) + pairwise_sum_range(first + half, n - half);
}

// Binomial coefficient table row, exact.
std::vector<Rational> binomial_row(int n) {
  std::vector<Rational> row(static_cast<std::size_t>(n) + 1, Rational(0));
  row[0] = Rational(1);
  for (int k = 1; k <= n; ++k) {
    row[static_cast<std::size_t>(k)] =
        row[static_cast<std::size_t>(k - 1)] * Rational(n - k + 1) / Rational(k);
  }
  return row;
}

}  // namespace

double pairwise_sum(std::span<const double> values) {
  return pairwise_sum_range(values.data(), values.size());
}

BivariatePoly::BivariatePoly(const Rational& constant) {
  if (!constant.is_zero()) terms_.emplace(Monomial{0, 0}, constant);
}

BivariatePoly BivariatePoly::x() { return monomial(1, 0); }
BivariatePoly BivariatePoly::y() { return monomial(0, 1); }

BivariatePoly BivariatePoly::monomial(int i, int j, const Rational& c) {
  if (i < 0 || j < 0) throw std::invalid_argument("BivariatePoly: negative exponent");
  BivariatePoly p;
  p.set(i, j, c);
  return p;
}

BivariatePoly BivariatePoly::linear(const Rational& a, const Rational& b, const Rational& c) {
  BivariatePoly p;
  p.set(1, 0, a);
  p.set(0, 1, b);
  p.set(0, 0, c);
  return p;
}

Rational BivariatePoly::coefficient(int i, int j) const {
  const auto it = terms_.find(Monomial{i, j});
  return it == terms_.end() ? Rational(0) : it->second;
}

std::optional<int> BivariatePoly::total_degree() const {
  if (terms_.empty()) return std::nullopt;
  int d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
  return d;
}

void BivariatePoly::set(int i, int j, const Rational& c) {
  if (i < 0 || j < 0) throw std::invalid_argument("BivariatePoly: negative exponent");
  if (c.is_zero()) {
    terms_.erase(Monomial{i, j});
  } else {
    terms_[Monomial{i, j}] = c;
  }
}

BivariatePoly& BivariatePoly::operator+=(const BivariatePoly& o) {
  for (const auto& [m, c] : o.terms_) {
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }
  return *this;
}

BivariatePoly& BivariatePoly::operator-=(const BivariatePoly& o) {
  for (const auto& [m, c] : o.terms_) {
    auto [it, inserted] = terms_.try_emplace(m, -c);
    if (!inserted) {
      it->second -= c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }
  return *this;
}

BivariatePoly& BivariatePoly::operator*=(const Rational& s) {
  if (s.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, c] : terms_) c *= s;
  return *this;
}

BivariatePoly operator*(const BivariatePoly& a, const BivariatePoly& b) {
  BivariatePoly out;
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      const Monomial m{ma.i + mb.i, ma.j + mb.j};
      auto [it, inserted] = out.terms_.try_emplace(m, ca * cb);
      if (!inserted) it->second += ca * cb;
    }
  }
  std::erase_if(out.terms_, [](const auto& kv) { return kv.second.is_zero(); });
  return out;
}

Rational BivariatePoly::eval(const Rational& x, const Rational& y) const {
  if (terms_.empty()) return Rational(0);
  int max_i = 0;
  int max_j = 0;
  for (const auto& [m, c] : terms_) {
    max_i = std::max(max_i, m.i);
    max_j = std::max(max_j, m.j);
  }
  const auto xp = powers(x, max_i);
  const auto yp = powers(y, max_j);
  Rational sum(0);
  for (const auto& [m, c] : terms_) {
    sum += c * xp[static_cast<std::size_t>(m.i)] * yp[static_cast<std::size_t>(m.j)];
  }
  return sum;
}

double BivariatePoly::eval(double x, double y) const { return NumericPoly(*this)(x, y); }

BivariatePoly BivariatePoly::diff(Var v) const {
  BivariatePoly out;
  for (const auto& [m, c] : terms_) {
    const int e = v == Var::X ? m.i : m.j;
    if (e == 0) continue;
    const Monomial dm = v == Var::X ? Monomial{m.i - 1, m.j} : Monomial{m.i, m.j - 1};
    out.terms_.emplace(dm, c * Rational(e));
  }
  return out;
}

BivariatePoly BivariatePoly::homogeneous_component(int d) const {
  BivariatePoly out;
  for (const auto& [m, c] : terms_) {
    if (m.degree() == d) out.terms_.emplace(m, c);
  }
  return out;
}

BivariatePoly BivariatePoly::pow(unsigned exponent) const {
  BivariatePoly result(Rational(1));
  BivariatePoly base = *this;
  while (exponent > 0) {
    if (exponent & 1U) result = result * base;
    exponent >>= 1U;
    if (exponent > 0) base = base * base;
  }
  return result;
}

std::vector<Rational> BivariatePoly::restrict_to_line(const Rational& px, const Rational& py,
                                                      const Rational& vx,
                                                      const Rational& vy) const {
  const int deg = total_degree().value_or(0);
  std::vector<Rational> out(static_cast<std::size_t>(deg) + 1, Rational(0));
  if (terms_.empty()) return out;
  // (px + t vx)^i (py + t vy)^j expanded binomially.
  for (const auto& [m, c] : terms_) {
    const auto bi = binomial_row(m.i);
    const auto bj = binomial_row(m.j);
    const auto pxp = powers(px, m.i);
    const auto vxp = powers(vx, m.i);
    const auto pyp = powers(py, m.j);
    const auto vyp = powers(vy, m.j);
    for (int a = 0; a <= m.i; ++a) {
      const Rational xa = bi[static_cast<std::size_t>(a)] *
                          pxp[static_cast<std::size_t>(m.i - a)] * vxp[static_cast<std::size_t>(a)];
      if (xa.is_zero()) continue;
      for (int b = 0; b <= m.j; ++b) {
        const Rational yb = bj[static_cast<std::size_t>(b)] *
                            pyp[static_cast<std::size_t>(m.j - b)] * vyp[static_cast<std::size_t>(b)];
        out[static_cast<std::size_t>(a + b)] += c * xa * yb;
      }
    }
  }
  return out;
}

std::string BivariatePoly::str() const {
  if (terms_.empty()) return "0";
  std::vector<std::pair<Monomial, Rational>> sorted(terms_.begin(), terms_.end());
  std::stable_sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
    if (a.first.degree() != b.first.degree()) return a.first.degree() > b.first.degree();
    return a.first.i > b.first.i;
  });
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : sorted) {
    const bool neg = c.sign() < 0;
    if (first) {
      if (neg) os << '-';
    } else {
      os << (neg ? " - " : " + ");
    }
    first = false;
    const Rational mag = abs(c);
    const bool unit = mag == Rational(1);
    bool need_star = false;
    if (!unit || m.degree() == 0) {
      os << mag.str();
      need_star = true;
    }
    auto factor = [&](char var, int e) {
      if (e == 0) return;
      if (need_star) os << '*';
      os << var;
      if (e > 1) os << '^' << e;
      need_star = true;
    };
    factor('x', m.i);
    factor('y', m.j);
  }
  return os.str();
}

BivariatePoly poly_add(const BivariatePoly& p, const BivariatePoly& q) { return p + q; }
BivariatePoly poly_mul(const BivariatePoly& p, const BivariatePoly& q) { return p * q; }
Rational poly_eval(const BivariatePoly& p, const Rational& x, const Rational& y) {
  return p.eval(x, y);
}
double poly_eval(const BivariatePoly& p, double x, double y) { return p.eval(x, y); }
BivariatePoly poly_diff(const BivariatePoly& p, Var v) { return p.diff(v); }
BivariatePoly homogeneous_component(const BivariatePoly& p, int d) {
  return p.homogeneous_component(d);
}

NumericPoly::NumericPoly(const BivariatePoly& p) {
  terms_.reserve(p.size());
  for (const auto& [m, c] : p.terms()) {
    terms_.push_back(Term{m.i, m.j, c.to_double()});
    max_i_ = std::max(max_i_, m.i);
    max_j_ = std::max(max_j_, m.j);
  }
}

double NumericPoly::operator()(double x, double y) const {
  if (terms_.empty()) return 0.0;
  const auto xp = powers(x, max_i_);
  const auto yp = powers(y, max_j_);
  std::vector<double> values;
  values.reserve(terms_.size());
  for (const Term& t : terms_) {
    values.push_back(t.c * xp[static_cast<std::size_t>(t.i)] * yp[static_cast<std::size_t>(t.j)]);
  }
  return pairwise_sum(values);
}

double NumericPoly::magnitude(double x, double y) const {
  const auto xp = powers(std::abs(x), max_i_);
  const auto yp = powers(std::abs(y), max_j_);
  double s = 0.0;
  for (const Term& t : terms_) {
    s += std::abs(t.c) * xp[static_cast<std::size_t>(t.i)] * yp[static_cast<std::size_t>(t.j)];
  }
  return s;
}

nlohmann::json poly_to_json(const BivariatePoly& p) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& [m, c] : p.terms()) {
    arr.push_back({{"i", m.i}, {"j", m.j}, {"c", c.fraction_str()}});
  }
  return arr;
}

BivariatePoly poly_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw ParseError("polynomial JSON must be an array of {i, j, c} records");
  BivariatePoly p;
  for (const auto& rec : j) {
    if (!rec.is_object() || !rec.contains("i") || !rec.contains("j") || !rec.contains("c") ||
        !rec["i"].is_number_integer() || !rec["j"].is_number_integer() || !rec["c"].is_string()) {
      throw ParseError("malformed polynomial term record: " + rec.dump());
    }
    const int i = rec["i"].get<int>();
    const int jj = rec["j"].get<int>();
    if (i < 0 || jj < 0) throw ParseError("negative exponent in polynomial record: " + rec.dump());
    p += BivariatePoly::monomial(i, jj, Rational::parse(rec["c"].get<std::string>()));
  }
  return p;
}

}  // namespace tdoa
