#include "pdc/verification.hpp"

#include "pdc/errors.hpp"

#include <cmath>
#include <numbers>

namespace pdc {

Vec2 manufactured_solution(const Vec2& X, const ManufacturedConsts& c) {
  const double k = std::numbers::pi / 2.0;
  const double E = std::exp(X.x()) * std::exp(X.y());
  return {c.A * std::sin(k * X.x()) * std::cos(k * X.y()) + c.B * E,
          c.C * std::cos(k * X.x()) * std::sin(k * X.y()) + c.D * E};
}

Vec2 manufactured_body_force(const Vec2& X, const ManufacturedConsts& c, const Material& m) {
  const double k = std::numbers::pi / 2.0;
  const double k2 = k * k;
  const double sx = std::sin(k * X.x()), cx = std::cos(k * X.x());
  const double sy = std::sin(k * X.y()), cy = std::cos(k * X.y());
  const double E = std::exp(X.x()) * std::exp(X.y());
  const double AC = c.A + c.C, BD = c.B + c.D;
  return {k2 * (AC * m.lambda + (3.0 * c.A + c.C) * m.mu) * sx * cy -
              (BD * m.lambda + (3.0 * c.B + c.D) * m.mu) * E,
          k2 * (AC * m.lambda + (c.A + 3.0 * c.C) * m.mu) * cx * sy -
              (BD * m.lambda + (c.B + 3.0 * c.D) * m.mu) * E};
}

Vec2 airy_hole_displacement(double r, double theta, double T, double a, const Material& m,
                            AiryForm form) {
  if (!(a > 0.0)) throw InvalidArgument("hole radius must be positive");
  if (r < a) throw InvalidArgument("airy_hole_displacement: point inside the hole (r < a)");
  const double f = form == AiryForm::plane_stress ? (1.0 - m.nu) / (1.0 + m.nu)
                                                  : (1.0 - 2.0 * m.nu);
  const double ur = T * a / (2.0 * m.mu) * (f * r / a + a / r);
  return {ur * std::cos(theta), ur * std::sin(theta)};
}

double rms_error(const VectorField& numeric, const std::function<Vec2(const Vec2&)>& exact,
                 const PointCloud& cloud, std::span<const int> subset) {
  if (subset.empty()) throw InvalidArgument("rms_error: empty node subset");
  double sum = 0.0;
  for (int i : subset) sum += (numeric[i] - exact(cloud.nodes[i].X)).squaredNorm();
  return std::sqrt(sum / (2.0 * static_cast<double>(subset.size())));
}

std::vector<double> convergence_rate(std::span<const double> errors,
                                     std::span<const double> spacings) {
  if (errors.size() != spacings.size() || errors.size() < 2)
    throw InvalidArgument("convergence_rate: need equal-length lists with >= 2 entries");
  for (std::size_t k = 0; k + 1 < spacings.size(); ++k)
    if (!(spacings[k + 1] < spacings[k]))
      throw InvalidArgument("convergence_rate: spacings must be strictly decreasing");
  std::vector<double> rates;
  rates.reserve(errors.size() - 1);
  for (std::size_t k = 0; k + 1 < errors.size(); ++k) {
    if (errors[k] <= 0.0 || errors[k + 1] <= 0.0) {
      rates.push_back(std::numeric_limits<double>::quiet_NaN());  // undefined rate
    } else {
      rates.push_back(std::log(errors[k] / errors[k + 1]) / std::log(spacings[k] / spacings[k + 1]));
    }
  }
  return rates;
}

}  // namespace pdc
