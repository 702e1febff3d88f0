#include <doctest.h>

#include <cmath>

#include "support.hpp"
#include "tdoa/localizer.hpp"
#include "tdoa/oracles.hpp"

using namespace tdoa;
using tdoa::testing::config1;
using tdoa::testing::config2;

TEST_CASE("newton finds the circumcenter") {
  const auto roots = newton_cluster_localize(config1(), {0, 0}, 64);
  REQUIRE(roots.size() == 1);
  CHECK(roots[0].x == doctest::Approx(1.0));
  CHECK(roots[0].y == doctest::Approx(1.0));
}

TEST_CASE("newton finds nothing outside the image") {
  CHECK(newton_cluster_localize(config1(), {3, 0}, 64).empty());
}

TEST_CASE("newton finds both sources") {
  const ReceiverConfig cfg = config1();
  const TdoaPair tau = tau2_forward(cfg, {-0.3, -0.2});
  const auto roots = newton_cluster_localize(cfg, tau, 128);
  const auto loc = localize(cfg, tau);
  REQUIRE(roots.size() == 2);
  REQUIRE(loc.sources.size() == 2);
  for (const Vec2& s : loc.sources) {
    CHECK(std::min(norm(roots[0] - s), norm(roots[1] - s)) < 1e-6);
  }
}

TEST_CASE("sign map") {
  for (const auto& cfg : {config1(), config2()}) {
    const SignMapReport r = sign_map_compare(build_quintic(cfg), {-6, 6, -6, 6}, 60);
    CHECK(r.samples == 3600);
    CHECK(r.mismatches == 0);
    CHECK(r.mismatch_points.empty());
  }
}

TEST_CASE("range form against exact F") {
  const QuinticCurve c = build_quintic(config1());
  CHECK(numeric_vs_exact_F(c, 1000) < 1e-7);
  CHECK(quintic_from_ranges(c.config, {0, 0}) == doctest::Approx(65536.0));
  CHECK(quintic_from_ranges(c.config, {2, 2}) == doctest::Approx(65536.0));
}

TEST_CASE("range form conditioning at large coordinates") {
  const ReceiverConfig far = ReceiverConfig::make({1000, 1000}, {1500, 1100}, {1200, 1900});
  CHECK(numeric_vs_exact_F(build_quintic(far), 200) < 1e-5);
}

TEST_CASE("round trip and agreement sweeps") {
  const RoundTripReport rt = round_trip_sweep(config2(), 2000, 11);
  CHECK(rt.trials == 2000);
  CHECK(rt.missed == 0);
  CHECK(rt.cardinality_mismatches == 0);
  CHECK(rt.worst_error < 1e-7);
  const OracleAgreementReport oa = oracle_agreement(config1(), 100, 128, 5);
  CHECK(oa.cardinality_mismatches == 0);
  CHECK(oa.position_mismatches == 0);
}
