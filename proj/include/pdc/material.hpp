#pragma once

#include "pdc/types.hpp"

#include <utility>

namespace pdc {

struct Material {
  double E = 0.0;
  double nu = 0.0;
  double lambda = 0.0;
  double mu = 0.0;
};

/// Plane-strain Lame parameters from engineering constants.
std::pair<double, double> lame_from_engineering(double E, double nu);

Material make_material(double E, double nu);

/// epsilon = (F + F^T)/2 - I
Mat2 small_strain(const Mat2& F);

/// P = lambda tr(eps) I + 2 mu eps
Mat2 first_pk_stress(const Mat2& eps, const Material& m);

}  // namespace pdc
