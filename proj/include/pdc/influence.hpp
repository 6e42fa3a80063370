#pragma once

#include "pdc/types.hpp"

namespace pdc {

/// Cubic B-spline kernel evaluated at the normalized distance
/// xi_hat = |X_J - X_I| / delta.  C^2, supported on [0, 1],
/// monotone non-increasing there.
double cubic_bspline(double xi_hat);

/// 1/|xi|^2 weighting. Rejects the zero vector (self-bonds are excluded
/// by the family definition).
double inverse_square(const Vec2& xi);

enum class InfluenceKind { cubic_bspline, inverse_square };

const char* to_string(InfluenceKind k);

/// Influence function bound to a horizon; evaluated on bond vectors in the
/// same metric space the families were built in.
struct InfluenceFunction {
  InfluenceKind kind = InfluenceKind::cubic_bspline;
  double delta = 0.0;

  double operator()(const Vec2& xi) const;
};

}  // namespace pdc
