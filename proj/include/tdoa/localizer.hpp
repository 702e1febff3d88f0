#pragma once

#include <utility>
#include <vector>

#include "tdoa/geometry.hpp"
#include "tdoa/tdoa_model.hpp"
#include "tdoa/tolerances.hpp"

namespace tdoa {

struct LocalizationResult {
  std::vector<Vec2> sources;     // sorted by d0 ascending
  std::vector<double> d0_roots;  // range to m0 of each source
  bool degenerate_linear = false;
  bool tangential = false;  // two roots merged into one
};

/// Every source x with tau2_forward(x) = tau.
///
/// Differencing d_i^2 - d_0^2 with d_i = d_0 + tau_i leaves two equations
/// linear in (x, d0), so x = m0 + p + q*d0. Substituting into |x - m0| = d0
/// gives (|q|^2 - 1) d0^2 + 2 (q.p) d0 + |p|^2 = 0, whose leading coefficient
/// equals a(tau)/W^2. Roots with negative ranges or nonzero branch residuals
/// are discarded.
LocalizationResult localize(const ReceiverConfig& cfg, const TdoaPair& tau, const Tolerances& tol = {});

/// r_i = d_i(x) - d_0(x) - tau_i; zero iff x lies on the hyperbola branch A_i(tau).
std::pair<double, double> branch_residual(const ReceiverConfig& cfg, const TdoaPair& tau, const Vec2& x);

}  // namespace tdoa
