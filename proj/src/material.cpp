#include "pdc/material.hpp"

#include "pdc/errors.hpp"

namespace pdc {

std::pair<double, double> lame_from_engineering(double E, double nu) {
  if (E <= 0.0) throw InvalidArgument("Young's modulus must be positive");
  if (nu <= -1.0 || nu >= 0.5)
    throw InvalidArgument("plane strain requires -1 < nu < 0.5");
  const double lambda = E * nu / ((1.0 + nu) * (1.0 - 2.0 * nu));
  const double mu = E / (2.0 * (1.0 + nu));
  return {lambda, mu};
}

Material make_material(double E, double nu) {
  auto [lambda, mu] = lame_from_engineering(E, nu);
  return Material{E, nu, lambda, mu};
}

Mat2 small_strain(const Mat2& F) { return 0.5 * (F + F.transpose()) - Mat2::Identity(); }

Mat2 first_pk_stress(const Mat2& eps, const Material& m) {
  return m.lambda * eps.trace() * Mat2::Identity() + 2.0 * m.mu * eps;
}

}  // namespace pdc
