#include "tdoa/oracles.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <random>

#include "tdoa/localizer.hpp"

namespace tdoa {

namespace {

// Newton runs in extended precision: far roots and nearly coincident root
// pairs are ill-conditioned enough that double scatter exceeds the cluster
// radius.
using Real = long double;
using LVec2 = BasicVec2<Real>;

Real lnorm(const LVec2& u) { return std::hypot(u.x, u.y); }

struct Residual {
  LVec2 r;
  std::array<LVec2, 3> unit;  // (x - m_i) / d_i
  bool at_receiver = false;
};

Residual residual_at(const std::array<LVec2, 3>& m, const TdoaPair& tau, const LVec2& x) {
  Residual out;
  std::array<Real, 3> d{};
  for (std::size_t i = 0; i < 3; ++i) {
    const LVec2 v = x - m[i];
    d[i] = lnorm(v);
    if (d[i] == 0.0L) {
      out.at_receiver = true;
      return out;
    }
    out.unit[i] = (1.0L / d[i]) * v;
  }
  out.r = {d[1] - d[0] - static_cast<Real>(tau.tau1), d[2] - d[0] - static_cast<Real>(tau.tau2)};
  return out;
}

// Returns the root reached from `x`, or nothing when Newton stalls.
std::optional<Vec2> newton(const std::array<LVec2, 3>& m, const TdoaPair& tau, const Vec2& start) {
  constexpr Real kConverged = 1e-10L;
  LVec2 x{start.x, start.y};
  Residual cur = residual_at(m, tau, x);
  if (cur.at_receiver) return std::nullopt;
  bool converged = false;
  int polish = 0;
  for (int it = 0; it < 200; ++it) {
    const Real rn = lnorm(cur.r);
    if (rn < kConverged) {
      converged = true;
      if (++polish > 20) break;
    }
    const LVec2 j1 = cur.unit[1] - cur.unit[0];
    const LVec2 j2 = cur.unit[2] - cur.unit[0];
    const Real det = j1.x * j2.y - j1.y * j2.x;
    if (det == 0.0L || !std::isfinite(det)) break;
    const LVec2 step{-(cur.r.x * j2.y - j1.y * cur.r.y) / det, -(j1.x * cur.r.y - j2.x * cur.r.x) / det};

    Real lambda = 1.0L;
    bool improved = false;
    for (int h = 0; h < 40; ++h) {
      const LVec2 cand = x + lambda * step;
      const Residual next = residual_at(m, tau, cand);
      if (!next.at_receiver && lnorm(next.r) < rn) {
        x = cand;
        cur = next;
        improved = true;
        break;
      }
      lambda *= 0.5L;
    }
    if (!improved) break;
  }
  if (!converged && !(lnorm(cur.r) < kConverged)) return std::nullopt;
  // Far enough out the ranges round to equal values and the residual
  // vanishes without a root.
  if (lnorm(x - m[0]) * std::numeric_limits<Real>::epsilon() > 1e-2L * kConverged) return std::nullopt;
  return Vec2{static_cast<double>(x.x), static_cast<double>(x.y)};
}

}  // namespace

std::vector<Vec2> newton_cluster_localize(const ReceiverConfig& cfg, const TdoaPair& tau, int starts,
                                          std::uint64_t seed) {
  constexpr double kClusterRadius = 1e-6;
  const Vec2 c = cfg.centroid();
  const double half = 5.0 * std::max(cfg.dist(1, 0), cfg.dist(2, 0));
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ux(c.x - half, c.x + half);
  std::uniform_real_distribution<double> uy(c.y - half, c.y + half);

  // Odd starts go far out so roots well beyond the receivers are reachable.
  // Every fourth start follows the far-field direction u, which solves
  // u . d10 = -tau1, u . d20 = -tau2.
  const double r0 = cfg.radius();
  std::uniform_real_distribution<double> ulog(0.0, std::log(1e4));
  std::uniform_real_distribution<double> uang(0.0, 2.0 * std::numbers::pi);
  const Vec2 d10 = cfg.d_f(1, 0);
  const Vec2 d20 = cfg.d_f(2, 0);
  const double det = d10.x * d20.y - d10.y * d20.x;
  Vec2 far{(-tau.tau1 * d20.y + tau.tau2 * d10.y) / det, (-tau.tau2 * d10.x + tau.tau1 * d20.x) / det};
  const double far_len = norm(far);
  const bool has_far = far_len > 0.0;
  if (has_far) far = (1.0 / far_len) * far;

  std::array<LVec2, 3> m;
  for (int i = 0; i < 3; ++i) m[i] = {cfg.receiver_f(i).x, cfg.receiver_f(i).y};

  std::vector<Vec2> reps;
  for (int s = 0; s < starts; ++s) {
    Vec2 start{ux(rng), uy(rng)};
    if (s % 4 == 3 && has_far) {
      start = c + (r0 * std::exp(ulog(rng))) * far;
    } else if (s % 2 == 1) {
      const double r = r0 * std::exp(ulog(rng));
      const double t = uang(rng);
      start = {c.x + r * std::cos(t), c.y + r * std::sin(t)};
    }
    const auto root = newton(m, tau, start);
    if (!root) continue;
    const bool known = std::any_of(reps.begin(), reps.end(),
                                   [&](const Vec2& r) { return norm(r - *root) <= kClusterRadius; });
    if (!known) reps.push_back(*root);
  }
  return reps;
}

double quintic_from_ranges(const ReceiverConfig& cfg, const Vec2& x) {
  const DerivedScalars s = derived_scalars(cfg, x);
  const double Q = s.Q;
  const double Q2 = Q * Q;
  const double a = s.P01 * s.P01;
  const double b = s.P12 * s.P12;
  const double c = s.P20 * s.P20;
  return Q2 * Q2 - 8.0 * Q2 * (a + b + c) + 64.0 * Q * s.P01 * s.P12 * s.P20 +
         16.0 * (a * a + b * b + c * c) - 32.0 * (a * b + b * c + c * a);
}

SignMapReport sign_map_compare(const QuinticCurve& curve, const Box& box, int n) {
  constexpr double kBand = 1e-6;
  const ReceiverConfig& cfg = curve.config;
  const double w_sq = cfg.W_f() * cfg.W_f();
  SignMapReport rep;
  rep.grid_extent = box;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double fx = n > 1 ? static_cast<double>(i) / (n - 1) : 0.5;
      const double fy = n > 1 ? static_cast<double>(j) / (n - 1) : 0.5;
      const Vec2 x{box.xmin + fx * (box.xmax - box.xmin), box.ymin + fy * (box.ymax - box.ymin)};
      ++rep.samples;
      const double f = curve.f(x.x, x.y);
      const double a = ellipse_value(cfg, tau2_forward(cfg, x));
      if (std::abs(f) < kBand * (1.0 + std::pow(norm(x), 5)) || std::abs(a) < kBand * w_sq) {
        ++rep.excluded;
        continue;
      }
      if ((f < 0.0) != (a < 0.0)) {
        ++rep.mismatches;
        rep.mismatch_points.push_back(x);
      }
    }
  }
  return rep;
}

double numeric_vs_exact_F(const QuinticCurve& curve, int n, std::uint64_t seed) {
  const ReceiverConfig& cfg = curve.config;
  const Vec2 c = cfg.centroid();
  const double half = 5.0;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ux(c.x - half, c.x + half);
  std::uniform_real_distribution<double> uy(c.y - half, c.y + half);
  const double w8 = curve.W8.to_double();

  double worst = 0.0;
  for (int k = 0; k < n; ++k) {
    const Vec2 x{ux(rng), uy(rng)};
    const double exact = curve.F.eval(Rational::from_double(x.x), Rational::from_double(x.y)).to_double();
    const double numeric = quintic_from_ranges(cfg, x);
    worst = std::max(worst, std::abs(numeric - exact) / std::max(std::abs(exact), w8));
  }
  return worst;
}

namespace {

Vec2 random_source(std::mt19937_64& rng, const ReceiverConfig& cfg) {
  const Vec2 c = cfg.centroid();
  const double half = 5.0 * cfg.radius();
  std::uniform_real_distribution<double> u(-half, half);
  const double dx = u(rng);
  return {c.x + dx, c.y + u(rng)};
}

}  // namespace

RoundTripReport round_trip_sweep(const ReceiverConfig& cfg, int n, std::uint64_t seed, const Tolerances& tol) {
  constexpr double kMatch = 1e-7;
  constexpr double kBand = 1e-6;
  const double w_sq = cfg.W_f() * cfg.W_f();
  std::mt19937_64 rng(seed);
  RoundTripReport rep;
  for (int k = 0; k < n; ++k) {
    const Vec2 x = random_source(rng, cfg);
    const TdoaPair tau = tau2_forward(cfg, x);
    const LocalizationResult loc = localize(cfg, tau, tol);
    ++rep.trials;
    double best = std::numeric_limits<double>::infinity();
    for (const Vec2& s : loc.sources) best = std::min(best, norm(s - x));
    if (!(best < kMatch)) {
      ++rep.missed;
    }
    if (std::isfinite(best)) rep.worst_error = std::max(rep.worst_error, best);

    const double a = ellipse_value(cfg, tau);
    if (std::abs(a) > kBand * w_sq) {
      ++rep.cardinality_checked;
      const std::size_t expected = a < 0.0 ? 1 : 2;
      if (loc.sources.size() != expected) ++rep.cardinality_mismatches;
    }
  }
  return rep;
}

OracleAgreementReport oracle_agreement(const ReceiverConfig& cfg, int n, int starts, std::uint64_t seed) {
  constexpr double kMatch = 1e-6;
  std::mt19937_64 rng(seed);
  OracleAgreementReport rep;
  for (int k = 0; k < n; ++k) {
    const TdoaPair tau = tau2_forward(cfg, random_source(rng, cfg));
    const LocalizationResult loc = localize(cfg, tau);
    const std::vector<Vec2> newton = newton_cluster_localize(cfg, tau, starts, rng());
    ++rep.trials;
    if (newton.size() != loc.sources.size()) {
      ++rep.cardinality_mismatches;
      continue;
    }
    bool all_close = true;
    for (const Vec2& s : loc.sources) {
      double best = std::numeric_limits<double>::infinity();
      for (const Vec2& r : newton) best = std::min(best, norm(r - s));
      rep.worst_distance = std::max(rep.worst_distance, best);
      all_close = all_close && best <= kMatch;
    }
    if (!all_close) ++rep.position_mismatches;
  }
  return rep;
}

}  // namespace tdoa
