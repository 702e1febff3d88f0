#include "tdoa/bifurcation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "tdoa/errors.hpp"
#include "tdoa/localizer.hpp"
#include "tdoa/tdoa_model.hpp"

namespace tdoa {

namespace {

// (i, j, k) cyclic: D_i is built on d_jk.
constexpr std::array<std::array<int, 2>, 3> kOpposite{{{1, 2}, {2, 0}, {0, 1}}};

BivariatePoly squared_range(const QVec2& m) {
  const BivariatePoly dx = BivariatePoly::x() - BivariatePoly(m.x);
  const BivariatePoly dy = BivariatePoly::y() - BivariatePoly(m.y);
  return dx * dx + dy * dy;
}

// *(u ^ x) as a linear form in (x, y).
BivariatePoly wedge_form(const QVec2& u) {
  return BivariatePoly::linear(-u.y, u.x, Rational(0));
}

GaussianRational gmul(const GaussianRational& a, const GaussianRational& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

IdealPoint real_ideal_point(const QVec2& dir) {
  const Rational s = abs(dir.x) >= abs(dir.y) ? dir.x : dir.y;
  return {{dir.x / s, Rational(0)}, {dir.y / s, Rational(0)}, true};
}

// Number of distinct real roots of a polynomial of degree <= 3.
int real_root_count(std::vector<Rational> c) {
  while (!c.empty() && c.back().is_zero()) c.pop_back();
  const std::size_t n = c.size();
  if (n <= 1) return 0;
  if (n == 2) return 1;
  if (n == 3) {
    const Rational disc = c[1] * c[1] - Rational(4) * c[2] * c[0];
    return disc.sign() > 0 ? 2 : (disc.is_zero() ? 1 : 0);
  }
  if (n == 4) {
    const Rational& d = c[0];
    const Rational& cc = c[1];
    const Rational& b = c[2];
    const Rational& a = c[3];
    const Rational disc = Rational(18) * a * b * cc * d - Rational(4) * b * b * b * d +
                          b * b * cc * cc - Rational(4) * a * cc * cc * cc -
                          Rational(27) * a * a * d * d;
    if (disc.sign() > 0) return 3;
    if (disc.sign() < 0) return 1;
    return b * b == Rational(3) * a * cc ? 1 : 2;
  }
  return -1;
}

}  // namespace

void DerivedScalars::check() const {
  if (at_receiver_ >= 0) throw AtReceiver(at_receiver_);
}

double DerivedScalars::p(int i) const {
  check();
  if (i < 0 || i > 2) throw std::out_of_range("p(i): index must be 0, 1 or 2");
  return p_[static_cast<std::size_t>(i)];
}
double DerivedScalars::p01() const { check(); return p01_; }
double DerivedScalars::p12() const { check(); return p12_; }
double DerivedScalars::p20() const { check(); return p20_; }

DerivedScalars derived_scalars(const ReceiverConfig& cfg, const Vec2& x) {
  DerivedScalars s;
  std::array<double, 3> range{};
  std::array<Vec2, 3> Dv{};
  for (int i = 0; i < 3; ++i) {
    const auto ii = static_cast<std::size_t>(i);
    range[ii] = norm(x - cfg.receiver_f(i));
    const Vec2 djk = cfg.d_f(kOpposite[ii][0], kOpposite[ii][1]);
    Dv[ii] = range[ii] * djk;
    s.D[ii] = range[ii] * cfg.dist(kOpposite[ii][0], kOpposite[ii][1]);
  }
  s.W = cfg.W_f();
  s.Q = s.D[0] * s.D[0] + s.D[1] * s.D[1] + s.D[2] * s.D[2] - s.W * s.W;
  s.P01 = dot(Dv[0], Dv[1]);
  s.P12 = dot(Dv[1], Dv[2]);
  s.P20 = dot(Dv[2], Dv[0]);

  for (int i = 0; i < 3; ++i) {
    if (range[static_cast<std::size_t>(i)] == 0.0) {
      s.at_receiver_ = i;
      return s;
    }
  }
  const Vec2 d0x = x - cfg.receiver_f(0);
  for (std::size_t i = 0; i < 3; ++i) s.p_[i] = dot(Dv[i], d0x) / range[i];
  s.p01_ = s.P01 / (range[0] * range[1]);
  s.p12_ = s.P12 / (range[1] * range[2]);
  s.p20_ = s.P20 / (range[2] * range[0]);
  return s;
}

BivariatePoly QuinticCurve::normalized() const { return F * (Rational(1) / W8); }

QuinticCurve build_quintic(const ReceiverConfig& cfg) {
  const std::array<BivariatePoly, 3> s{squared_range(cfg.receiver(0)), squared_range(cfg.receiver(1)),
                                       squared_range(cfg.receiver(2))};
  const Rational& W = cfg.W();
  const Rational& c01 = cfg.c01();
  const Rational& c12 = cfg.c12();
  const Rational& c20 = cfg.c20();

  // Q = s0 |d12|^2 + s1 |d20|^2 + s2 |d01|^2 - W^2
  const BivariatePoly Q = s[0] * cfg.dist_sq(1, 2) + s[1] * cfg.dist_sq(2, 0) +
                          s[2] * cfg.dist_sq(0, 1) - BivariatePoly(W * W);

  // P_ij^2 = s_i s_j c_ij^2; P01 P12 P20 = s0 s1 s2 c01 c12 c20.
  const BivariatePoly s01 = s[0] * s[1];
  const BivariatePoly s12 = s[1] * s[2];
  const BivariatePoly s20 = s[2] * s[0];
  const BivariatePoly P01sq = s01 * (c01 * c01);
  const BivariatePoly P12sq = s12 * (c12 * c12);
  const BivariatePoly P20sq = s20 * (c20 * c20);
  const BivariatePoly Pprod = s01 * s[2] * (c01 * c12 * c20);

  const BivariatePoly Q2 = Q * Q;
  BivariatePoly F = Q2 * Q2;
  F -= Q2 * (P01sq + P12sq + P20sq) * Rational(8);
  F += Q * Pprod * Rational(64);
  F += (P01sq * P01sq + P12sq * P12sq + P20sq * P20sq) * Rational(16);
  F -= (P01sq * P12sq + P12sq * P20sq + P20sq * P01sq) * Rational(32);

  QuinticCurve curve{cfg, F, F.diff(Var::X), F.diff(Var::Y), F.homogeneous_component(5),
                     pow(W, 8), {}, {}, {}};
  const Rational inv = Rational(1) / curve.W8;
  curve.f = NumericPoly(F * inv);
  curve.fx = NumericPoly(curve.Fx * inv);
  curve.fy = NumericPoly(curve.Fy * inv);
  return curve;
}

ResidualChain residual_chain(const ReceiverConfig& cfg, const Vec2& x) {
  const DerivedScalars s = derived_scalars(cfg, x);
  std::array<Vec2, 3> Dv{};
  for (std::size_t i = 0; i < 3; ++i) {
    Dv[i] = norm(x - cfg.receiver_f(static_cast<int>(i))) * cfg.d_f(kOpposite[i][0], kOpposite[i][1]);
  }
  const double W2 = s.W * s.W;
  const double Dsq = s.D[0] * s.D[0] + s.D[1] * s.D[1] + s.D[2] * s.D[2];
  const double Psum = s.P01 + s.P12 + s.P20;
  const double Pabs = std::abs(s.P01) + std::abs(s.P12) + std::abs(s.P20);
  const double Q = s.Q;
  const double P01s = s.P01 * s.P01;
  const double P12s = s.P12 * s.P12;
  const double P20s = s.P20 * s.P20;

  ResidualChain r;
  r.residual[0] = norm_sq(Dv[0] + Dv[1] + Dv[2]) - W2;
  r.scale[0] = Dsq + 2.0 * Pabs + W2;

  r.residual[1] = Dsq + 2.0 * Psum - W2;
  r.scale[1] = r.scale[0];

  r.residual[2] = Q + 2.0 * s.P12 + 2.0 * (s.P01 + s.P20);
  r.scale[2] = std::abs(Q) + 2.0 * Pabs;

  const double lhs17 = Q * Q - 4.0 * (P01s - P12s + P20s);
  r.residual[3] = lhs17 - (-4.0 * Q * s.P12 + 8.0 * s.P01 * s.P20);
  r.scale[3] = Q * Q + 4.0 * (P01s + P12s + P20s) + 4.0 * std::abs(Q * s.P12) +
               8.0 * std::abs(s.P01 * s.P20);

  r.residual[4] = lhs17 * lhs17 - (16.0 * Q * Q * P12s - 64.0 * Q * s.P01 * s.P12 * s.P20 +
                                   64.0 * P01s * P20s);
  r.scale[4] = Q * Q * Q * Q + 8.0 * Q * Q * (P01s + P12s + P20s) +
               64.0 * std::abs(Q * s.P01 * s.P12 * s.P20) +
               16.0 * (P01s * P01s + P12s * P12s + P20s * P20s) +
               32.0 * (P01s * P12s + P12s * P20s + P20s * P01s);
  return r;
}

std::string_view to_string(PointRegion r) {
  switch (r) {
    case PointRegion::UniqueRegion: return "UniqueRegion";
    case PointRegion::AmbiguousRegion: return "AmbiguousRegion";
    case PointRegion::OnCurve: return "OnCurve";
  }
  return "?";
}

PointRegion classify_point(const QuinticCurve& curve, const Vec2& x, const Tolerances& tol) {
  const double f = curve.f(x.x, x.y);
  const double band = tol.on_curve * (1.0 + std::pow(norm(x), 5));
  if (std::abs(f) < band) return PointRegion::OnCurve;
  return f < 0.0 ? PointRegion::UniqueRegion : PointRegion::AmbiguousRegion;
}

PointRegion classify_point(const ReceiverConfig& cfg, const Vec2& x, const Tolerances& tol) {
  return classify_point(build_quintic(cfg), x, tol);
}

std::array<RationalLine, 3> asymptotes(const ReceiverConfig& cfg) {
  std::array<RationalLine, 3> out;
  const Rational three_w = Rational(3) * cfg.W();
  for (std::size_t i = 0; i < 3; ++i) {
    const QVec2 u = cfg.d(kOpposite[i][0], kOpposite[i][1]);
    const QVec2& m = cfg.receiver(static_cast<int>(i));
    // 4 (u.x (y - m.y) - u.y (x - m.x)) - 3W
    out[i] = {Rational(-4) * u.y, Rational(4) * u.x,
              Rational(4) * (u.y * m.x - u.x * m.y) - three_w};
  }
  return out;
}

BivariatePoly line_poly(const RationalLine& l) { return BivariatePoly::linear(l.a, l.b, l.c); }

std::optional<QVec2> common_point(const std::array<RationalLine, 3>& lines) {
  // Any two non-parallel lines fix the candidate; the third must pass through it.
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = i + 1; j < 3; ++j) {
      const RationalLine& f = lines[i];
      const RationalLine& g = lines[j];
      const Rational det = f.a * g.b - f.b * g.a;
      if (det.is_zero()) continue;
      const QVec2 p{(f.b * g.c - g.b * f.c) / det, (g.a * f.c - f.a * g.c) / det};
      const std::size_t k = 3 - i - j;
      if (lines[k].value(p).is_zero()) return p;
      return std::nullopt;
    }
  }
  return std::nullopt;
}

AsymptoteContact asymptote_contact(const QuinticCurve& curve, int i) {
  if (i < 0 || i > 2) throw std::out_of_range("asymptote index must be 0, 1 or 2");
  const auto ii = static_cast<std::size_t>(i);
  const RationalLine l = asymptotes(curve.config)[ii];
  const QVec2 dir = curve.config.d(kOpposite[ii][0], kOpposite[ii][1]);
  const QVec2 p = l.a.is_zero() ? QVec2{Rational(0), -l.c / l.b} : QVec2{-l.c / l.a, Rational(0)};

  AsymptoteContact c;
  c.restricted = curve.F.restrict_to_line(p.x, p.y, dir.x, dir.y);
  c.restricted.resize(std::max<std::size_t>(c.restricted.size(), 6), Rational(0));
  c.double_root_at_infinity = c.restricted[5].is_zero() && c.restricted[4].is_zero();
  c.real_intersections = c.double_root_at_infinity ? real_root_count(c.restricted) : -1;
  return c;
}

std::complex<double> IdealPoint::x_numeric() const { return {X.re.to_double(), X.im.to_double()}; }
std::complex<double> IdealPoint::y_numeric() const { return {Y.re.to_double(), Y.im.to_double()}; }

std::array<IdealPoint, 5> ideal_points(const ReceiverConfig& cfg) {
  return {{
      real_ideal_point(cfg.d(1, 2)),
      real_ideal_point(cfg.d(2, 0)),
      real_ideal_point(cfg.d(0, 1)),
      IdealPoint{{Rational(1), Rational(0)}, {Rational(0), Rational(1)}, false},
      IdealPoint{{Rational(1), Rational(0)}, {Rational(0), Rational(-1)}, false},
  }};
}

GaussianRational eval_form(const BivariatePoly& form, const IdealPoint& p) {
  GaussianRational sum{Rational(0), Rational(0)};
  for (const auto& [m, c] : form.terms()) {
    GaussianRational term{c, Rational(0)};
    for (int k = 0; k < m.i; ++k) term = gmul(term, p.X);
    for (int k = 0; k < m.j; ++k) term = gmul(term, p.Y);
    sum.re += term.re;
    sum.im += term.im;
  }
  return sum;
}

BivariatePoly expected_leading_form(const ReceiverConfig& cfg) {
  const Rational k = Rational(-64) * cfg.W() * cfg.dist_sq(0, 1) * cfg.dist_sq(1, 2) * cfg.dist_sq(2, 0);
  const BivariatePoly r2 = BivariatePoly::monomial(2, 0) + BivariatePoly::monomial(0, 2);
  return r2 * wedge_form(cfg.d(1, 2)) * wedge_form(cfg.d(2, 0)) * wedge_form(cfg.d(0, 1)) * k;
}

bool verify_leading_form(const QuinticCurve& curve) {
  return curve.F.homogeneous_component(5) == expected_leading_form(curve.config);
}

bool verify_leading_form(const ReceiverConfig& cfg) { return verify_leading_form(build_quintic(cfg)); }

Rational lemma_identity_residual(const ReceiverConfig& cfg, const QVec2& x) {
  Rational sum(0);
  for (std::size_t i = 0; i < 3; ++i) {
    sum += wedge_star(cfg.d(kOpposite[i][0], kOpposite[i][1]), x - cfg.receiver(static_cast<int>(i)));
  }
  return sum - Rational(2) * cfg.W();
}

double lemma_identity_residual(const ReceiverConfig& cfg, const Vec2& x) {
  double sum = 0.0;
  for (std::size_t i = 0; i < 3; ++i) {
    sum += wedge_star(cfg.d_f(kOpposite[i][0], kOpposite[i][1]), x - cfg.receiver_f(static_cast<int>(i)));
  }
  return sum - 2.0 * cfg.W_f();
}

CurveDistance distance_to_curve(const QuinticCurve& curve, const Vec2& x, bool refine) {
  const double f = curve.f(x.x, x.y);
  const Vec2 g{curve.fx(x.x, x.y), curve.fy(x.x, x.y)};
  const double gn = norm(g);
  const double gscale = curve.fx.magnitude(x.x, x.y) + curve.fy.magnitude(x.x, x.y);
  if (!(gn >= 1e-12 * gscale) || gn == 0.0) throw GradientVanishes();

  CurveDistance out;
  out.sampson = std::abs(f) / gn;
  out.distance = out.sampson;
  if (!refine) return out;

  Vec2 y = x;
  for (int it = 0; it < 100; ++it) {
    const double fy = curve.f(y.x, y.y);
    if (std::abs(fy) < 1e-10 * curve.f.magnitude(y.x, y.y)) {
      out.foot = y;
      out.distance = norm(x - y);
      return out;
    }
    const Vec2 gy{curve.fx(y.x, y.y), curve.fy(y.x, y.y)};
    const double gg = norm_sq(gy);
    if (gg == 0.0 || !std::isfinite(gg)) break;
    y = y - (fy / gg) * gy;
  }
  return out;
}

std::vector<CurveArc> sample_curve(const QuinticCurve& curve, int n, const Tolerances& tol) {
  if (n < 3) throw std::invalid_argument("sample_curve: n must be at least 3");
  const ReceiverConfig& cfg = curve.config;
  const Vec2 d10 = cfg.d_f(1, 0);
  const Vec2 d20 = cfg.d_f(2, 0);
  const double w = std::abs(cfg.W_f());

  // Samples on E are inverted in linear form.
  Tolerances t = tol;
  t.degenerate = std::max(tol.degenerate, tol.boundary_band);

  const auto un = static_cast<std::size_t>(n);
  std::vector<std::optional<Vec2>> pts(un);
  std::vector<double> theta(un);
  for (std::size_t k = 0; k < un; ++k) {
    const double th = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
    theta[k] = th;
    const Vec2 dir = std::sin(th) * d10 - std::cos(th) * d20;
    const double r = w / norm(dir);
    const TdoaPair tau{r * std::cos(th), r * std::sin(th)};
    const LocalizationResult loc = localize(cfg, tau, t);
    if (loc.sources.empty()) continue;
    const Vec2 x = loc.sources.front();
    const double fx = curve.fx(x.x, x.y);
    const double fy = curve.fy(x.x, x.y);
    const double gn = std::hypot(fx, fy);
    if (gn == 0.0 || std::abs(curve.f(x.x, x.y)) / gn >= 1e-6) continue;
    pts[k] = x;
  }

  // Maximal runs of consecutive samples, joined across theta = 2*pi.
  std::vector<std::vector<std::size_t>> runs;
  std::vector<std::size_t> cur;
  for (std::size_t k = 0; k < un; ++k) {
    if (pts[k]) {
      cur.push_back(k);
    } else if (!cur.empty()) {
      runs.push_back(std::move(cur));
      cur.clear();
    }
  }
  if (!cur.empty()) runs.push_back(std::move(cur));
  bool wrapped = false;
  if (runs.size() > 1 && runs.front().front() == 0 && runs.back().back() == un - 1) {
    auto& last = runs.back();
    last.insert(last.end(), runs.front().begin(), runs.front().end());
    runs.erase(runs.begin());
    wrapped = true;
  }

  // Distinct arcs of the curve meet only at infinity, where tau(theta) passes a
  // tangency point; split wherever a step crosses one of those directions.
  std::vector<double> cuts;
  for (const TdoaPair& tp : tangency_points(cfg)) {
    double a = std::atan2(tp.tau2, tp.tau1);
    if (a < 0.0) a += 2.0 * std::numbers::pi;
    cuts.push_back(a);
    cuts.push_back(a + 2.0 * std::numbers::pi);
  }
  auto crosses = [&](double lo, double hi) {
    return std::any_of(cuts.begin(), cuts.end(), [&](double c) { return c > lo && c <= hi; });
  };

  std::vector<CurveArc> arcs;
  for (std::size_t r = 0; r < runs.size(); ++r) {
    const auto& run = runs[r];
    const bool is_wrapped = wrapped && r + 1 == runs.size();
    CurveArc arc;
    double offset = 0.0;
    for (std::size_t k = 0; k < run.size(); ++k) {
      if (k > 0 && is_wrapped && run[k] < run[k - 1]) offset = 2.0 * std::numbers::pi;
      const double th = theta[run[k]] + offset;
      if (k > 0 && crosses(arc.theta.back(), th)) {
        arcs.push_back(std::move(arc));
        arc = {};
      }
      arc.theta.push_back(th);
      arc.points.push_back(*pts[run[k]]);
    }
    arcs.push_back(std::move(arc));
  }
  return arcs;
}

}  // namespace tdoa
