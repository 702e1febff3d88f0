#pragma once

#include <array>
#include <complex>
#include <optional>
#include <string_view>
#include <vector>

#include "tdoa/geometry.hpp"
#include "tdoa/polynomial.hpp"
#include "tdoa/tolerances.hpp"

namespace tdoa {

/// Range-weighted scalars of the bifurcation construction at one source
/// position, with (i, j, k) cyclic: D_i = d_i(x) |d_jk|, Q = sum D_i^2 - W^2,
/// P_ij = D_i . D_j (vectors D_i = d_i(x) d_jk).
///
/// The range-normalized p_i = D_i . d_0(x) / d_i(x) and p_ij = P_ij / (d_i d_j)
/// are undefined at the receivers; their accessors throw AtReceiver there.
class DerivedScalars {
 public:
  std::array<double, 3> D{};
  double Q = 0;
  double P01 = 0, P12 = 0, P20 = 0;
  double W = 0;

  [[nodiscard]] double p(int i) const;
  [[nodiscard]] double p01() const;
  [[nodiscard]] double p12() const;
  [[nodiscard]] double p20() const;

 private:
  friend DerivedScalars derived_scalars(const ReceiverConfig& cfg, const Vec2& x);
  void check() const;

  std::array<double, 3> p_{};
  double p01_ = 0, p12_ = 0, p20_ = 0;
  int at_receiver_ = -1;
};

DerivedScalars derived_scalars(const ReceiverConfig& cfg, const Vec2& x);

/// The bifurcation quintic F with its partials and degree-5 form.
///
/// F is exact; numeric evaluators work on F / W^8 so that F(m_i) = 1.
struct QuinticCurve {
  ReceiverConfig config;
  BivariatePoly F;
  BivariatePoly Fx;
  BivariatePoly Fy;
  BivariatePoly leading_form;
  Rational W8;

  NumericPoly f;  // F / W^8
  NumericPoly fx;
  NumericPoly fy;

  /// F / W^8, exact.
  [[nodiscard]] BivariatePoly normalized() const;
};

/// F assembled exactly from the range-product form with s_i = |x - m_i|^2
/// substituted for every even power of the ranges.
QuinticCurve build_quintic(const ReceiverConfig& cfg);

/// Left-minus-right residuals of the derivation chain, in order:
/// |D0+D1+D2|^2 = W^2, the expanded form, Q + 2P12 = -2(P01 + P20), its square
/// and the squared-again algebraic form (which is F itself). scale[k] is the
/// sum of the absolute values of the terms of equation k.
struct ResidualChain {
  std::array<double, 5> residual{};
  std::array<double, 5> scale{};
};
ResidualChain residual_chain(const ReceiverConfig& cfg, const Vec2& x);

enum class PointRegion { UniqueRegion, AmbiguousRegion, OnCurve };
std::string_view to_string(PointRegion r);

PointRegion classify_point(const QuinticCurve& curve, const Vec2& x, const Tolerances& tol = {});
PointRegion classify_point(const ReceiverConfig& cfg, const Vec2& x, const Tolerances& tol = {});

/// L_i : 4 *(d_jk ^ d_i(x)) - 3W = 0 for (i, j, k) cyclic.
std::array<RationalLine, 3> asymptotes(const ReceiverConfig& cfg);
BivariatePoly line_poly(const RationalLine& l);
/// Exact common point of the three lines, if any.
std::optional<QVec2> common_point(const std::array<RationalLine, 3>& lines);

/// Contact of one asymptote with the curve: F restricted to p + t*dir.
struct AsymptoteContact {
  std::vector<Rational> restricted;  // ascending powers of t
  bool double_root_at_infinity = false;
  int real_intersections = 0;  // finite real points of L_i on the curve
};
AsymptoteContact asymptote_contact(const QuinticCurve& curve, int i);

struct GaussianRational {
  Rational re;
  Rational im;
};

/// Point [X : Y : 0] on the line at infinity, scaled so that the coordinate of
/// largest magnitude equals 1.
struct IdealPoint {
  GaussianRational X;
  GaussianRational Y;
  bool is_real = true;

  [[nodiscard]] std::complex<double> x_numeric() const;
  [[nodiscard]] std::complex<double> y_numeric() const;
};

/// Three real points along d12, d20, d01, then [1 : i : 0] and [1 : -i : 0].
std::array<IdealPoint, 5> ideal_points(const ReceiverConfig& cfg);
/// Exact value of a homogeneous form at an ideal point.
GaussianRational eval_form(const BivariatePoly& form, const IdealPoint& p);

/// -64 W d01^2 d12^2 d20^2 (x^2 + y^2) *(d12^x) *(d20^x) *(d01^x).
BivariatePoly expected_leading_form(const ReceiverConfig& cfg);
bool verify_leading_form(const QuinticCurve& curve);
bool verify_leading_form(const ReceiverConfig& cfg);

/// *(d12 ^ d0(x)) + *(d20 ^ d1(x)) + *(d01 ^ d2(x)) - 2W.
Rational lemma_identity_residual(const ReceiverConfig& cfg, const QVec2& x);
double lemma_identity_residual(const ReceiverConfig& cfg, const Vec2& x);

struct CurveDistance {
  double distance = 0;       // refined when a foot was found, else Sampson
  double sampson = 0;        // |F| / |grad F|
  std::optional<Vec2> foot;  // only when refinement was requested and converged
};

/// Sampson estimate, optionally refined by Newton projection along grad F.
/// Throws GradientVanishes.
CurveDistance distance_to_curve(const QuinticCurve& curve, const Vec2& x, bool refine);

struct CurveArc {
  std::vector<double> theta;
  std::vector<Vec2> points;
};

/// Walks E by angle, maps each sample back through the inverse TDOA map and
/// groups the finite preimages into theta-contiguous arcs. Requires n >= 3.
std::vector<CurveArc> sample_curve(const QuinticCurve& curve, int n, const Tolerances& tol = {});

}  // namespace tdoa
