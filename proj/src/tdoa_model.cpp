#include "tdoa/tdoa_model.hpp"

#include <algorithm>
#include <cmath>

#include "tdoa/localizer.hpp"

namespace tdoa {

namespace {

// Symmetric bilinear form behind a(tau): M(u, w) = (u2 d10 - u1 d20).(w2 d10 - w1 d20).
struct EllipseForm {
  double m11;  // |d20|^2
  double m12;  // -(d10 . d20)
  double m22;  // |d10|^2
  double w_sq;

  explicit EllipseForm(const ReceiverConfig& cfg)
      : m11(cfg.dist_sq(2, 0).to_double()),
        m12(-dot(cfg.d(1, 0), cfg.d(2, 0)).to_double()),
        m22(cfg.dist_sq(1, 0).to_double()),
        w_sq((cfg.W() * cfg.W()).to_double()) {}

  [[nodiscard]] double bilinear(const Vec2& u, const Vec2& w) const {
    return m11 * u.x * w.x + m12 * (u.x * w.y + u.y * w.x) + m22 * u.y * w.y;
  }
};

Vec2 as_vec(const TdoaPair& t) { return {t.tau1, t.tau2}; }
TdoaPair as_tau(const Vec2& v) { return {v.x, v.y}; }

}  // namespace

std::string_view to_string(TauRegion r) {
  switch (r) {
    case TauRegion::OutsideImage: return "OutsideImage";
    case TauRegion::InteriorUnique: return "InteriorUnique";
    case TauRegion::InteriorAmbiguous: return "InteriorAmbiguous";
    case TauRegion::OnEllipse: return "OnEllipse";
    case TauRegion::OnPolytopeBoundary: return "OnPolytopeBoundary";
    case TauRegion::ExcludedTangency: return "ExcludedTangency";
  }
  return "?";
}

TdoaPair tau2_forward(const ReceiverConfig& cfg, const Vec2& x) {
  const double d0 = norm(x - cfg.receiver_f(0));
  const double d1 = norm(x - cfg.receiver_f(1));
  const double d2 = norm(x - cfg.receiver_f(2));
  return {d1 - d0, d2 - d0};
}

double ellipse_value(const ReceiverConfig& cfg, const TdoaPair& tau) {
  const EllipseForm form(cfg);
  const Vec2 t = as_vec(tau);
  return form.bilinear(t, t) - form.w_sq;
}

Vec2 ellipse_gradient(const ReceiverConfig& cfg, const TdoaPair& tau) {
  const EllipseForm form(cfg);
  return {2.0 * (form.m11 * tau.tau1 + form.m12 * tau.tau2),
          2.0 * (form.m12 * tau.tau1 + form.m22 * tau.tau2)};
}

std::array<AffineLine, kFacetCount> polytope_facets(const ReceiverConfig& cfg) {
  const double d10 = cfg.dist(1, 0);
  const double d20 = cfg.dist(2, 0);
  const double d21 = cfg.dist(2, 1);
  return {{
      {1.0, 0.0, -d10},
      {-1.0, 0.0, -d10},
      {0.0, 1.0, -d20},
      {0.0, -1.0, -d20},
      {-1.0, 1.0, -d21},
      {1.0, -1.0, -d21},
  }};
}

std::array<double, kFacetCount> facet_slacks(const ReceiverConfig& cfg, const TdoaPair& tau) {
  const auto facets = polytope_facets(cfg);
  std::array<double, kFacetCount> out{};
  for (std::size_t k = 0; k < facets.size(); ++k) {
    const AffineLine& f = facets[k];
    out[k] = -f.value(as_vec(tau)) / std::hypot(f.a, f.b);
  }
  return out;
}

PolytopeMembership polytope_membership(const ReceiverConfig& cfg, const TdoaPair& tau,
                                       const Tolerances& tol) {
  const auto slacks = facet_slacks(cfg, tau);
  PolytopeMembership m;
  double best = tol.boundary_band;
  for (std::size_t k = 0; k < slacks.size(); ++k) {
    if (slacks[k] < -tol.boundary_band) return {PolytopeMembership::Kind::Outside, -1};
    // ties go to the lower facet index
    const bool first = m.kind != PolytopeMembership::Kind::Boundary;
    if (first ? std::abs(slacks[k]) <= best : std::abs(slacks[k]) < best) {
      best = std::abs(slacks[k]);
      m = {PolytopeMembership::Kind::Boundary, static_cast<int>(k)};
    }
  }
  return m;
}

std::vector<TdoaPair> polytope_vertices(const ReceiverConfig& cfg) {
  const auto facets = polytope_facets(cfg);
  const double scale = std::max({cfg.dist(1, 0), cfg.dist(2, 0), cfg.dist(2, 1)});
  const double feas = 1e-12 * scale;
  std::vector<TdoaPair> out;
  for (std::size_t i = 0; i < facets.size(); ++i) {
    for (std::size_t j = i + 1; j < facets.size(); ++j) {
      const AffineLine& f = facets[i];
      const AffineLine& g = facets[j];
      const double det = f.a * g.b - f.b * g.a;
      if (det == 0.0) continue;
      const TdoaPair v{(f.b * g.c - g.b * f.c) / det, (g.a * f.c - f.a * g.c) / det};
      const auto slacks = facet_slacks(cfg, v);
      if (*std::min_element(slacks.begin(), slacks.end()) < -feas) continue;
      const bool dup = std::any_of(out.begin(), out.end(), [&](const TdoaPair& w) {
        return std::hypot(w.tau1 - v.tau1, w.tau2 - v.tau2) <= feas;
      });
      if (!dup) out.push_back(v);
    }
  }
  return out;
}

Polytope polytope(const ReceiverConfig& cfg) { return {polytope_facets(cfg), polytope_vertices(cfg)}; }

std::array<TdoaPair, kFacetCount> tangency_points(const ReceiverConfig& cfg) {
  const EllipseForm form(cfg);
  const auto facets = polytope_facets(cfg);
  std::array<TdoaPair, kFacetCount> out{};
  for (std::size_t k = 0; k < facets.size(); ++k) {
    const AffineLine& f = facets[k];
    const double nn = f.a * f.a + f.b * f.b;
    const Vec2 foot{-f.c * f.a / nn, -f.c * f.b / nn};
    const Vec2 dir{-f.b, f.a};
    // a(foot + t dir) = M(dir,dir) t^2 + 2 M(foot,dir) t + const; E touches the
    // facet, so the minimizer is the double root.
    const double t = -form.bilinear(foot, dir) / form.bilinear(dir, dir);
    out[k] = as_tau(foot + t * dir);
  }
  return out;
}

TauClassification classify_tau(const ReceiverConfig& cfg, const TdoaPair& tau, const Tolerances& tol) {
  TauClassification c;
  c.a_value = ellipse_value(cfg, tau);
  c.facet_slacks = facet_slacks(cfg, tau);

  const double w_sq = cfg.W_f() * cfg.W_f();
  const double min_slack = *std::min_element(c.facet_slacks.begin(), c.facet_slacks.end());
  const bool on_ellipse = std::abs(c.a_value) / w_sq < tol.boundary_band;
  const bool on_facet = std::abs(min_slack) <= tol.boundary_band;

  if (min_slack < -tol.boundary_band) {
    c.region = TauRegion::OutsideImage;
    c.expected_count = 0;
  } else if (on_ellipse && on_facet) {
    c.region = TauRegion::ExcludedTangency;
    c.expected_count = 0;
  } else if (on_facet) {
    // On dP2 the two branches touch; accept the merged root within the band.
    Tolerances t = tol;
    t.double_root = std::max(tol.double_root, tol.boundary_band);
    c.region = TauRegion::OnPolytopeBoundary;
    c.expected_count = localize(cfg, tau, t).sources.empty() ? 0 : 1;
  } else if (on_ellipse) {
    // On E only the finite intersection counts; solve in the linear form.
    Tolerances t = tol;
    t.degenerate = std::max(tol.degenerate, tol.boundary_band);
    c.region = TauRegion::OnEllipse;
    c.expected_count = localize(cfg, tau, t).sources.empty() ? 0 : 1;
  } else if (c.a_value < 0.0) {
    c.region = TauRegion::InteriorUnique;
    c.expected_count = 1;
  } else {
    c.region = TauRegion::InteriorAmbiguous;
    c.expected_count = 2;
  }
  return c;
}

}  // namespace tdoa
