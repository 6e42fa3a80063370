#pragma once

#include <Eigen/Dense>

#include <string_view>
#include <vector>

namespace pdc {

using Vec2 = Eigen::Vector2d;
using Mat2 = Eigen::Matrix2d;

/// One entry per node, indexed by node id.
using VectorField = std::vector<Vec2>;
using TensorField = std::vector<Mat2>;

enum class Formulation { rk, gmls, ba_rk, ba_gmls };

constexpr bool is_bond_associated(Formulation f) {
  return f == Formulation::ba_rk || f == Formulation::ba_gmls;
}

constexpr bool uses_rk_weights(Formulation f) {
  return f == Formulation::rk || f == Formulation::ba_rk;
}

const char* to_string(Formulation f);
Formulation formulation_from_string(std::string_view s);

}  // namespace pdc
