// One line per acceptance criterion; exit status is the number of failures.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "support.hpp"
#include "tdoa/bifurcation.hpp"
#include "tdoa/localizer.hpp"
#include "tdoa/oracles.hpp"

using namespace tdoa;
using testing::config1;
using testing::config2;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

int failures = 0;

void criterion(int id, const char* name, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  const Outcome o = body();
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::printf("%s  %2d  %-34s %s [%.2fs]\n", o.pass ? "PASS" : "FAIL", id, name, o.detail.c_str(), secs);
  std::fflush(stdout);
  if (!o.pass) ++failures;
}

double elapsed_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* f, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

// Two reference layouts followed by 100 random rational ones.
std::vector<ReceiverConfig> config_set() {
  std::vector<ReceiverConfig> out{config1(), config2()};
  std::mt19937_64 rng(2024);
  while (out.size() < 102) out.push_back(testing::random_config(rng));
  return out;
}

bool proportional(const RationalLine& l, const Rational& a, const Rational& b, const Rational& c) {
  return l.a * b == l.b * a && l.a * c == l.c * a && l.b * c == l.c * b;
}

}  // namespace

int main() {
  const std::vector<ReceiverConfig> configs = config_set();
  std::vector<QuinticCurve> curves;

  criterion(1, "reference quintics reproduced", [] {
    const auto t0 = std::chrono::steady_clock::now();
    const bool a = build_quintic(config1()).normalized() == testing::reference_quintic1();
    const bool b = build_quintic(config2()).normalized() == testing::reference_quintic2();
    const double secs = elapsed_since(t0);
    return Outcome{a && b && secs < 1.0, fmt("(config1 %s, config2 %s, runtime < 1 s)", a ? "exact" : "differs",
                                             b ? "exact" : "differs")};
  });

  criterion(2, "degree-5 certificate", [&] {
    const auto t0 = std::chrono::steady_clock::now();
    int bad = 0;
    for (const ReceiverConfig& cfg : configs) {
      curves.push_back(build_quintic(cfg));
      const BivariatePoly& F = curves.back().F;
      const bool ok = F.homogeneous_component(8).is_zero() && F.homogeneous_component(7).is_zero() &&
                      F.homogeneous_component(6).is_zero() && !F.homogeneous_component(5).is_zero();
      if (!ok) ++bad;
    }
    const double secs = elapsed_since(t0);
    return Outcome{bad == 0 && secs < 30.0, fmt("(%zu configs, %d failing, runtime < 30 s)", configs.size(), bad)};
  });

  criterion(3, "leading-form identity", [&] {
    int bad = 0;
    for (const QuinticCurve& c : curves) {
      if (c.F.homogeneous_component(5) != expected_leading_form(c.config)) ++bad;
    }
    return Outcome{bad == 0, fmt("(%zu configs, %d failing)", curves.size(), bad)};
  });

  criterion(4, "F(m_i) = W^8", [&] {
    int bad = 0;
    for (const QuinticCurve& c : curves) {
      const Rational w8 = pow(c.config.W(), 8);
      for (int i = 0; i < 3; ++i) {
        const QVec2& m = c.config.receiver(i);
        if (c.F.eval(m.x, m.y) != w8) ++bad;
      }
    }
    return Outcome{bad == 0, fmt("(%zu receivers, %d failing)", 3 * curves.size(), bad)};
  });

  criterion(5, "asymptote suite", [&] {
    bool sums = true;
    for (int k = 0; k < 2; ++k) {
      const auto l = asymptotes(curves[k].config);
      sums = sums && line_poly(l[0]) + line_poly(l[1]) + line_poly(l[2]) == BivariatePoly(-curves[k].config.W());
    }
    const auto l1 = asymptotes(config1());
    const bool lines = proportional(l1[0], Rational(1), Rational(0), Rational(-3, 2)) &&
                       proportional(l1[1], Rational(-2), Rational(2), Rational(1)) &&
                       proportional(l1[2], Rational(0), Rational(1), Rational(-1, 2));
    bool contact = true;
    for (int i = 0; i < 3; ++i) contact = contact && asymptote_contact(curves[0], i).double_root_at_infinity;
    int triple = 0;
    for (std::size_t k = 2; k < 52; ++k) {
      if (common_point(asymptotes(configs[k])).has_value()) ++triple;
    }
    return Outcome{sums && lines && contact && triple == 0,
                   fmt("(sum = -W: %s, config1 lines: %s, double root at infinity: %s, triple points in 50: %d)",
                       sums ? "yes" : "no", lines ? "match" : "differ", contact ? "yes" : "no", triple)};
  });

  criterion(6, "wedge identity", [] {
    std::mt19937_64 rng(6);
    int nonzero = 0;
    for (int k = 0; k < 10000; ++k) {
      const ReceiverConfig cfg = testing::random_config(rng);
      const QVec2 x{testing::random_rational(rng), testing::random_rational(rng)};
      if (!lemma_identity_residual(cfg, x).is_zero()) ++nonzero;
    }
    return Outcome{nonzero == 0, fmt("(10000 pairs, %d nonzero)", nonzero)};
  });

  criterion(7, "round-trip localization", [] {
    const auto t0 = std::chrono::steady_clock::now();
    int missed = 0, card = 0, checked = 0;
    double worst = 0;
    for (const auto& cfg : {config1(), config2()}) {
      const RoundTripReport r = round_trip_sweep(cfg, 10000, 7);
      missed += r.missed;
      card += r.cardinality_mismatches;
      checked += r.cardinality_checked;
      worst = std::max(worst, r.worst_error);
    }
    const double secs = elapsed_since(t0);
    return Outcome{missed == 0 && card == 0 && secs < 10.0,
                   fmt("(2 x 10000 sources, missed %d, cardinality mismatches %d of %d, worst %.1e, runtime < 10 s)",
                       missed, card, checked, worst)};
  });

  criterion(8, "newton oracle equivalence", [] {
    int card = 0, pos = 0;
    double worst = 0;
    for (const auto& cfg : {config1(), config2()}) {
      const OracleAgreementReport r = oracle_agreement(cfg, 1000, 128, 8);
      card += r.cardinality_mismatches;
      pos += r.position_mismatches;
      worst = std::max(worst, r.worst_distance);
    }
    return Outcome{card == 0 && pos == 0,
                   fmt("(2 x 1000 measurements, cardinality %d, positions %d, worst %.1e)", card, pos, worst)};
  });

  criterion(9, "sign map", [&] {
    int mism = 0, excl = 0;
    for (int k = 0; k < 2; ++k) {
      const SignMapReport r = sign_map_compare(curves[k], {-6, 6, -6, 6}, 200);
      mism += r.mismatches;
      excl += r.excluded;
    }
    return Outcome{mism == 0, fmt("(2 x 40000 samples, mismatches %d, in bands %d)", mism, excl)};
  });

  criterion(10, "curve sampling", [&] {
    const QuinticCurve& c = curves[0];
    const auto arcs = sample_curve(c, 720);
    double sampson = 0, sum_d = 0;
    std::size_t n = 0;
    for (const CurveArc& arc : arcs) {
      for (const Vec2& p : arc.points) {
        ++n;
        sampson = std::max(sampson, distance_to_curve(c, p, false).sampson);
        sum_d = std::max(sum_d, std::abs(residual_chain(c.config, p).residual[0]));
      }
    }
    return Outcome{arcs.size() == 3 && sampson < 1e-6 && sum_d < 1e-6,
                   fmt("(%zu arcs, %zu points, max Sampson %.1e, max ||D0+D1+D2|^2 - W^2| %.1e)",
                       arcs.size(), n, sampson, sum_d)};
  });

  criterion(11, "gradient check", [&] {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-6, 6);
    double worst = 0;
    for (int k = 0; k < 1000; ++k) {
      const QuinticCurve& c = curves[k % 2];
      const Vec2 p{u(rng), u(rng)};
      const double h = 1e-6;
      const double fd_x = (c.f(p.x + h, p.y) - c.f(p.x - h, p.y)) / (2 * h);
      const double fd_y = (c.f(p.x, p.y + h) - c.f(p.x, p.y - h)) / (2 * h);
      const double gx = c.fx(p.x, p.y), gy = c.fy(p.x, p.y);
      const double g = std::hypot(gx, gy);
      worst = std::max(worst, std::hypot(fd_x - gx, fd_y - gy) / g);
    }
    return Outcome{worst < 1e-5, fmt("(1000 points, max relative deviation %.1e)", worst)};
  });

  std::printf("%d of 11 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
