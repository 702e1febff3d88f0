#include <doctest.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <random>

#include "support.hpp"
#include "tdoa/bifurcation.hpp"
#include "tdoa/localizer.hpp"
#include "tdoa/tdoa_model.hpp"

using namespace tdoa;
using testing::random_config;
using testing::random_rational;

namespace {

BivariatePoly random_poly(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> deg(0, 3);
  std::uniform_int_distribution<int> count(0, 5);
  BivariatePoly p;
  const int n = count(rng);
  for (int k = 0; k < n; ++k) p += BivariatePoly::monomial(deg(rng), deg(rng), random_rational(rng, 5, 4));
  return p;
}

}  // namespace

TEST_CASE("polynomial ring axioms") {
  std::mt19937_64 rng(101);
  for (int k = 0; k < 200; ++k) {
    const BivariatePoly a = random_poly(rng), b = random_poly(rng), c = random_poly(rng);
    CHECK(a + b == b + a);
    CHECK(a * b == b * a);
    CHECK((a + b) + c == a + (b + c));
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a - a == BivariatePoly{});
    CHECK(a * BivariatePoly(Rational(1)) == a);
  }
}

TEST_CASE("evaluation is a ring homomorphism and diff obeys Leibniz") {
  std::mt19937_64 rng(102);
  for (int k = 0; k < 200; ++k) {
    const BivariatePoly a = random_poly(rng), b = random_poly(rng);
    const Rational x = random_rational(rng), y = random_rational(rng);
    CHECK((a * b).eval(x, y) == a.eval(x, y) * b.eval(x, y));
    CHECK((a + b).eval(x, y) == a.eval(x, y) + b.eval(x, y));
    CHECK((a * b).diff(Var::X) == a.diff(Var::X) * b + a * b.diff(Var::X));
    BivariatePoly sum;
    for (int d = 0; d <= 6; ++d) sum += a.homogeneous_component(d);
    CHECK(sum == a);
  }
}

TEST_CASE("quintic invariants on random configs") {
  std::mt19937_64 rng(103);
  for (int k = 0; k < 20; ++k) {
    const ReceiverConfig cfg = random_config(rng);
    const QuinticCurve c = build_quintic(cfg);
    CHECK(c.F.total_degree() == 5);
    CHECK(verify_leading_form(c));
    for (int i = 0; i < 3; ++i) CHECK(c.F.eval(cfg.receiver(i).x, cfg.receiver(i).y) == c.W8);

    const auto lines = asymptotes(cfg);
    CHECK(line_poly(lines[0]) + line_poly(lines[1]) + line_poly(lines[2]) == BivariatePoly(-cfg.W()));
    CHECK_FALSE(common_point(lines).has_value());
    for (int i = 0; i < 3; ++i) {
      const AsymptoteContact a = asymptote_contact(c, i);
      CHECK(a.double_root_at_infinity);
      // complex roots pair up, so the count has the parity of the restricted degree
      int degree = 3;
      while (degree > 0 && a.restricted[static_cast<std::size_t>(degree)].is_zero()) --degree;
      CHECK(a.real_intersections % 2 == degree % 2);
      CHECK(a.real_intersections <= degree);
    }

    const QVec2 x{random_rational(rng), random_rational(rng)};
    CHECK(lemma_identity_residual(cfg, x).is_zero());
  }
}

TEST_CASE("F does not depend on receiver labels") {
  std::mt19937_64 rng(104);
  for (int k = 0; k < 10; ++k) {
    const ReceiverConfig cfg = random_config(rng);
    const BivariatePoly F = build_quintic(cfg).F;
    std::array<int, 3> order{0, 1, 2};
    while (std::next_permutation(order.begin(), order.end())) {
      const ReceiverConfig p =
          ReceiverConfig::make(cfg.receiver(order[0]), cfg.receiver(order[1]), cfg.receiver(order[2]));
      CHECK(build_quintic(p).F == F);
    }
  }
}

TEST_CASE("F moves with the receivers") {
  std::mt19937_64 rng(105);
  for (int k = 0; k < 10; ++k) {
    const ReceiverConfig cfg = random_config(rng);
    const QVec2 t{random_rational(rng), random_rational(rng)};
    const ReceiverConfig moved = ReceiverConfig::make(cfg.receiver(0) + t, cfg.receiver(1) + t, cfg.receiver(2) + t);
    const BivariatePoly F = build_quintic(cfg).F;
    const BivariatePoly G = build_quintic(moved).F;
    for (int s = 0; s < 5; ++s) {
      const QVec2 x{random_rational(rng), random_rational(rng)};
      CHECK(G.eval(x.x + t.x, x.y + t.y) == F.eval(x.x, x.y));
    }
  }
}

TEST_CASE("ellipse and polytope symmetry") {
  std::mt19937_64 rng(106);
  std::uniform_real_distribution<double> u(-3, 3);
  for (int k = 0; k < 20; ++k) {
    const ReceiverConfig cfg = random_config(rng);
    const auto t = tangency_points(cfg);
    for (int i = 0; i < kFacetCount; i += 2) {
      CHECK(t[i].tau1 == doctest::Approx(-t[i + 1].tau1));
      CHECK(t[i].tau2 == doctest::Approx(-t[i + 1].tau2));
    }
    const TdoaPair tau{u(rng), u(rng)};
    CHECK(ellipse_value(cfg, tau) == doctest::Approx(ellipse_value(cfg, {-tau.tau1, -tau.tau2})));
    CHECK(polytope_membership(cfg, tau).kind == polytope_membership(cfg, {-tau.tau1, -tau.tau2}).kind);
  }
}

TEST_CASE("forward map lands in the polytope") {
  std::mt19937_64 rng(107);
  std::uniform_real_distribution<double> u(-50, 50);
  for (int k = 0; k < 20; ++k) {
    const ReceiverConfig cfg = random_config(rng);
    for (int s = 0; s < 50; ++s) {
      const TdoaPair tau = tau2_forward(cfg, {u(rng), u(rng)});
      for (const double slack : facet_slacks(cfg, tau)) CHECK(slack > -1e-9);
    }
  }
}

TEST_CASE("round trip on random configs") {
  std::mt19937_64 rng(108);
  for (int k = 0; k < 20; ++k) {
    const ReceiverConfig cfg = random_config(rng);
    const Vec2 c = cfg.centroid();
    std::uniform_real_distribution<double> u(-3 * cfg.radius(), 3 * cfg.radius());
    for (int s = 0; s < 50; ++s) {
      const Vec2 x{c.x + u(rng), c.y + u(rng)};
      const TdoaPair tau = tau2_forward(cfg, x);
      const auto loc = localize(cfg, tau);
      double best = INFINITY;
      for (const Vec2& p : loc.sources) best = std::min(best, norm(p - x));
      CHECK(best < 1e-7 * (1 + norm(x - c)));
    }
  }
}
