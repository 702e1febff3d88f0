#pragma once

#include <array>
#include <string_view>
#include <vector>

#include "tdoa/geometry.hpp"
#include "tdoa/tolerances.hpp"

namespace tdoa {

/// Range-difference measurement (tau1, tau2) = (d1 - d0, d2 - d0), unit speed.
struct TdoaPair {
  double tau1 = 0;
  double tau2 = 0;
  friend bool operator==(const TdoaPair&, const TdoaPair&) = default;
};

enum class TauRegion {
  OutsideImage,
  InteriorUnique,     // inside E
  InteriorAmbiguous,  // inside P2, outside E
  OnEllipse,
  OnPolytopeBoundary,
  ExcludedTangency,
};

std::string_view to_string(TauRegion r);

/// Facet order of the hexagon P2:
///   0: tau1 =  d10   1: tau1 = -d10
///   2: tau2 =  d20   3: tau2 = -d20
///   4: tau2 - tau1 =  d21   5: tau2 - tau1 = -d21
/// Facet lines are oriented so that line.value(tau) <= 0 inside P2.
inline constexpr int kFacetCount = 6;

struct Polytope {
  std::array<AffineLine, kFacetCount> facets;
  std::vector<TdoaPair> vertices;
};

struct PolytopeMembership {
  enum class Kind { Interior, Boundary, Outside };
  Kind kind = Kind::Interior;
  int facet = -1;  // set for Boundary
};

struct TauClassification {
  TauRegion region = TauRegion::OutsideImage;
  int expected_count = 0;
  double a_value = 0;
  std::array<double, kFacetCount> facet_slacks{};
};

/// (d1(x) - d0(x), d2(x) - d0(x)).
TdoaPair tau2_forward(const ReceiverConfig& cfg, const Vec2& x);

/// a(tau) = |tau2 d10 - tau1 d20|^2 - W^2: negative inside E, positive outside.
double ellipse_value(const ReceiverConfig& cfg, const TdoaPair& tau);
/// Gradient of a with respect to (tau1, tau2).
Vec2 ellipse_gradient(const ReceiverConfig& cfg, const TdoaPair& tau);

/// Outward-oriented facet lines of P2 in the order documented above.
std::array<AffineLine, kFacetCount> polytope_facets(const ReceiverConfig& cfg);
/// Signed distance of tau to each facet line, positive inside P2.
std::array<double, kFacetCount> facet_slacks(const ReceiverConfig& cfg, const TdoaPair& tau);

PolytopeMembership polytope_membership(const ReceiverConfig& cfg, const TdoaPair& tau,
                                       const Tolerances& tol = {});
std::vector<TdoaPair> polytope_vertices(const ReceiverConfig& cfg);
Polytope polytope(const ReceiverConfig& cfg);

/// T_i^+- : the point where E touches each facet, indexed like the facets.
std::array<TdoaPair, kFacetCount> tangency_points(const ReceiverConfig& cfg);

/// Region of tau and the size of its preimage under the TDOA map. Points in
/// the boundary bands are settled by an inverse-solve consistency check.
TauClassification classify_tau(const ReceiverConfig& cfg, const TdoaPair& tau,
                               const Tolerances& tol = {});

}  // namespace tdoa
