#include "tdoa/localizer.hpp"

#include <algorithm>
#include <cmath>

namespace tdoa {

namespace {

struct Candidate {
  double d0;
  Vec2 x;
};

}  // namespace

std::pair<double, double> branch_residual(const ReceiverConfig& cfg, const TdoaPair& tau, const Vec2& x) {
  const double d0 = norm(x - cfg.receiver_f(0));
  const double d1 = norm(x - cfg.receiver_f(1));
  const double d2 = norm(x - cfg.receiver_f(2));
  return {d1 - d0 - tau.tau1, d2 - d0 - tau.tau2};
}

LocalizationResult localize(const ReceiverConfig& cfg, const TdoaPair& tau, const Tolerances& tol) {
  const Vec2 m0 = cfg.receiver_f(0);
  const Vec2 d10 = cfg.d_f(1, 0);
  const Vec2 d20 = cfg.d_f(2, 0);
  const double w = cfg.W_f();

  // Rows d10, d20: solve u.d10 = r1, u.d20 = r2 by Cramer's rule.
  auto solve = [&](double r1, double r2) -> Vec2 {
    return {(r1 * d20.y - d10.y * r2) / w, (d10.x * r2 - d20.x * r1) / w};
  };
  const double t1 = tau.tau1;
  const double t2 = tau.tau2;
  const Vec2 p = solve(0.5 * (cfg.dist_sq(1, 0).to_double() - t1 * t1),
                       0.5 * (cfg.dist_sq(2, 0).to_double() - t2 * t2));
  const Vec2 q = solve(-t1, -t2);

  // |q|^2 - 1 == a(tau) / W^2; the ellipse form is the better-conditioned route.
  const double lead = ellipse_value(cfg, tau) / (w * w);
  const double half_lin = dot(q, p);
  const double cst = norm_sq(p);

  LocalizationResult result;
  std::vector<double> roots;

  if (std::abs(lead) < tol.degenerate) {
    result.degenerate_linear = true;
    if (cst == 0.0) {
      roots.push_back(0.0);
    } else if (std::abs(2.0 * half_lin) > tol.degenerate * std::sqrt(cst)) {
      // Otherwise the root recedes to infinity: tau sits at a tangency point.
      roots.push_back(-cst / (2.0 * half_lin));
    }
  } else {
    const double disc = half_lin * half_lin - lead * cst;
    const double scale = std::max(half_lin * half_lin, std::abs(lead * cst));
    if (std::abs(disc) <= tol.double_root * scale) {
      result.tangential = true;
      roots.push_back(-half_lin / lead);
    } else if (disc > 0.0) {
      const double sq = std::sqrt(disc);
      const double big = -(half_lin + std::copysign(sq, half_lin));
      roots.push_back(big / lead);
      if (big != 0.0) roots.push_back(cst / big);
    }
  }

  std::vector<Candidate> accepted;
  for (double d0 : roots) {
    if (!std::isfinite(d0)) continue;
    const double slack = tol.residual * (1.0 + std::abs(d0));
    if (d0 < -slack || d0 + t1 < -slack || d0 + t2 < -slack) continue;
    d0 = std::max(d0, 0.0);
    const Vec2 x = m0 + p + d0 * q;
    const auto [r1, r2] = branch_residual(cfg, tau, x);
    if (std::abs(r1) >= slack || std::abs(r2) >= slack) continue;
    accepted.push_back({d0, x});
  }
  std::sort(accepted.begin(), accepted.end(),
            [](const Candidate& a, const Candidate& b) { return a.d0 < b.d0; });
  for (const Candidate& c : accepted) {
    result.sources.push_back(c.x);
    result.d0_roots.push_back(c.d0);
  }
  return result;
}

}  // namespace tdoa
