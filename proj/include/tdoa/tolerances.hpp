#pragma once

namespace tdoa {

/// Numeric thresholds shared by the floating-point parts of the library.
/// Config files may override individual fields.
struct Tolerances {
  /// Normalized |a|/W^2 or facet slack below which a measurement is "on" E or dP2.
  double boundary_band = 1e-9;
  /// Branch residual bound, scaled by (1 + d0), for accepting an inverse root.
  double residual = 1e-7;
  /// |a|/W^2 (the quadratic's leading coefficient) below which the inverse
  /// solve drops to its linear form.
  double degenerate = 1e-12;
  /// Relative discriminant below which the two inverse roots are merged.
  double double_root = 1e-12;
  /// |F|/W^8 band, scaled by (1 + |x|^5), for classifying a point as on the curve.
  double on_curve = 1e-9;
};

}  // namespace tdoa
