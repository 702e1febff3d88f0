#pragma once

#include <array>
#include <cmath>

#include "tdoa/rational.hpp"

namespace tdoa {

/// Point or displacement in the plane.
template <class T>
struct BasicVec2 {
  T x{};
  T y{};

  friend BasicVec2 operator+(const BasicVec2& a, const BasicVec2& b) { return {a.x + b.x, a.y + b.y}; }
  friend BasicVec2 operator-(const BasicVec2& a, const BasicVec2& b) { return {a.x - b.x, a.y - b.y}; }
  friend BasicVec2 operator-(const BasicVec2& a) { return {-a.x, -a.y}; }
  friend BasicVec2 operator*(const T& s, const BasicVec2& a) { return {s * a.x, s * a.y}; }
  friend BasicVec2 operator*(const BasicVec2& a, const T& s) { return {s * a.x, s * a.y}; }
  friend bool operator==(const BasicVec2&, const BasicVec2&) = default;
};

using Vec2 = BasicVec2<double>;
using QVec2 = BasicVec2<Rational>;

template <class T>
T dot(const BasicVec2<T>& u, const BasicVec2<T>& v) {
  return u.x * v.x + u.y * v.y;
}

template <class T>
T norm_sq(const BasicVec2<T>& u) {
  return dot(u, u);
}

inline double norm(const Vec2& u) { return std::hypot(u.x, u.y); }

/// *(u ^ v) = u1 v2 - u2 v1, the signed area of the parallelogram on u, v.
template <class T>
T wedge_star(const BasicVec2<T>& u, const BasicVec2<T>& v) {
  return u.x * v.y - u.y * v.x;
}

inline Vec2 to_double(const QVec2& p) { return {p.x.to_double(), p.y.to_double()}; }
inline QVec2 to_rational(const Vec2& p) { return {Rational::from_double(p.x), Rational::from_double(p.y)}; }

/// Line a*x + b*y + c = 0.
template <class T>
struct BasicLine {
  T a{};
  T b{};
  T c{};

  [[nodiscard]] T value(const BasicVec2<T>& p) const { return a * p.x + b * p.y + c; }
  friend bool operator==(const BasicLine&, const BasicLine&) = default;
};

using AffineLine = BasicLine<double>;
using RationalLine = BasicLine<Rational>;

inline AffineLine to_double(const RationalLine& l) {
  return {l.a.to_double(), l.b.to_double(), l.c.to_double()};
}

/// Three non-collinear receivers with every derived constant precomputed.
///
/// Displacements follow d_ji = m_j - m_i. Exact values are kept alongside
/// their double images; the double ranges d10, d20, d21 are square roots and
/// only exist in floating point.
class ReceiverConfig {
 public:
  /// Throws CollinearReceivers when W = *(d10 ^ d20) is exactly zero.
  static ReceiverConfig make(const QVec2& m0, const QVec2& m1, const QVec2& m2);

  [[nodiscard]] const QVec2& receiver(int i) const { return m_[idx(i)]; }
  [[nodiscard]] const Vec2& receiver_f(int i) const { return mf_[idx(i)]; }

  /// d_ji = m_j - m_i.
  [[nodiscard]] QVec2 d(int j, int i) const { return m_[idx(j)] - m_[idx(i)]; }
  [[nodiscard]] Vec2 d_f(int j, int i) const { return mf_[idx(j)] - mf_[idx(i)]; }

  /// |d_ji|^2, symmetric in (j, i).
  [[nodiscard]] const Rational& dist_sq(int j, int i) const;
  /// |d_ji| in floating point.
  [[nodiscard]] double dist(int j, int i) const;

  /// c01 = d12 . d20, c12 = d20 . d01, c20 = d01 . d12.
  [[nodiscard]] const Rational& c01() const { return c01_; }
  [[nodiscard]] const Rational& c12() const { return c12_; }
  [[nodiscard]] const Rational& c20() const { return c20_; }

  /// W = *(d10 ^ d20), twice the signed triangle area.
  [[nodiscard]] const Rational& W() const { return W_; }
  [[nodiscard]] double W_f() const { return Wf_; }

  [[nodiscard]] Vec2 centroid() const;
  /// Largest receiver-to-centroid distance; a natural length unit of the layout.
  [[nodiscard]] double radius() const;

 private:
  ReceiverConfig() = default;
  static std::size_t idx(int i);

  std::array<QVec2, 3> m_{};
  std::array<Vec2, 3> mf_{};
  Rational d10_sq_, d20_sq_, d21_sq_;
  double d10_ = 0, d20_ = 0, d21_ = 0;
  Rational c01_, c12_, c20_;
  Rational W_;
  double Wf_ = 0;
};

}  // namespace tdoa
