#pragma once

#include <cstdint>
#include <vector>

#include "tdoa/bifurcation.hpp"
#include "tdoa/geometry.hpp"
#include "tdoa/tdoa_model.hpp"

namespace tdoa {

// Brute-force cross-checks for the closed-form modules. They share no code
// path with localize() or the exact quintic beyond the forward map.

struct Box {
  double xmin = 0, xmax = 0, ymin = 0, ymax = 0;
};

/// Damped Newton on (d1 - d0 - tau1, d2 - d0 - tau2) from `starts` random
/// points centred on the receivers' centroid. Even starts are uniform in a
/// square of side 10 max(d10, d20), odd starts have a log-uniform radius in
/// [radius(), 1e4 radius()], every fourth of them along the far-field
/// direction of tau. Converged roots are clustered with radius 1e-6.
std::vector<Vec2> newton_cluster_localize(const ReceiverConfig& cfg, const TdoaPair& tau, int starts,
                                          std::uint64_t seed = 1);

struct SignMapReport {
  Box grid_extent;
  int samples = 0;
  int mismatches = 0;
  int excluded = 0;  // inside either classifier's tolerance band
  std::vector<Vec2> mismatch_points;
};

/// Compares sign(F(x)) with sign(a(tau2_forward(x))) on an n x n grid. Points
/// with |F|/W^8 < 1e-6 (1 + |x|^5) or |a|/W^2 < 1e-6 are counted as excluded.
SignMapReport sign_map_compare(const QuinticCurve& curve, const Box& box, int n);

/// Largest |F_numeric - F_exact| / max(|F_exact|, W^8) over n random points,
/// where F_numeric evaluates the range-product form with floating ranges and
/// F_exact is the exact polynomial at the (exactly converted) same point.
/// Points are drawn in a 10 x 10 square around the centroid.
double numeric_vs_exact_F(const QuinticCurve& curve, int n, std::uint64_t seed = 1);

/// Range-product form of F evaluated directly from floating ranges.
double quintic_from_ranges(const ReceiverConfig& cfg, const Vec2& x);

/// Random sources in a square of side 10 * radius() around the centroid are
/// mapped forward and inverted again.
struct RoundTripReport {
  int trials = 0;
  int missed = 0;  // x not among the localize() results within 1e-7
  double worst_error = 0;
  int cardinality_checked = 0;  // samples with |a| > 1e-6 W^2
  int cardinality_mismatches = 0;
};
RoundTripReport round_trip_sweep(const ReceiverConfig& cfg, int n, std::uint64_t seed = 1,
                                 const Tolerances& tol = {});

/// localize() against newton_cluster_localize() on in-image measurements
/// produced from random sources (same sampling square as round_trip_sweep).
struct OracleAgreementReport {
  int trials = 0;
  int cardinality_mismatches = 0;
  int position_mismatches = 0;  // some root farther than 1e-6 from its match
  double worst_distance = 0;
};
OracleAgreementReport oracle_agreement(const ReceiverConfig& cfg, int n, int starts, std::uint64_t seed = 1);

}  // namespace tdoa
