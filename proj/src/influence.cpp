#include "pdc/influence.hpp"

#include "pdc/errors.hpp"

namespace pdc {

double cubic_bspline(double xi_hat) {
  if (xi_hat < 0.0) throw InvalidArgument("cubic_bspline: negative normalized distance");
  if (xi_hat <= 0.5) return 2.0 / 3.0 - 4.0 * xi_hat * xi_hat + 4.0 * xi_hat * xi_hat * xi_hat;
  if (xi_hat <= 1.0) {
    // factored form of 4/3 - 4 x + 4 x^2 - 4/3 x^3; exact zero at the support edge
    const double t = 1.0 - xi_hat;
    return 4.0 / 3.0 * t * t * t;
  }
  return 0.0;
}

double inverse_square(const Vec2& xi) {
  const double r2 = xi.squaredNorm();
  if (r2 <= 0.0) throw InvalidArgument("inverse_square: zero bond vector");
  return 1.0 / r2;
}

const char* to_string(InfluenceKind k) {
  return k == InfluenceKind::cubic_bspline ? "cubic_bspline" : "inverse_square";
}

double InfluenceFunction::operator()(const Vec2& xi) const {
  if (kind == InfluenceKind::cubic_bspline) {
    if (delta <= 0.0) throw InvalidArgument("influence: horizon not set");
    return cubic_bspline(xi.norm() / delta);
  }
  return inverse_square(xi);
}

}  // namespace pdc
