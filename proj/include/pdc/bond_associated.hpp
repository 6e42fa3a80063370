#pragma once

#include "pdc/types.hpp"

#include <span>

namespace pdc {

/// Bond-level deformation gradient
///   F_JI = F_J + [x_J - x_I - (F_I + F_J)/2 (X_J - X_I)] (X_J - X_I)^T / |X_J - X_I|^2
/// The correction term vanishes for homogeneous deformation.
Mat2 bond_deformation_gradient(const Mat2& F_I, const Mat2& F_J, const Vec2& x_I, const Vec2& x_J,
                               const Vec2& X_I, const Vec2& X_J);

/// sum_J (P_JI - P_I) gamma_IJ with per-bond stresses aligned with the force
/// family (zero entries for free-surface neighbors).
Vec2 ba_divergence(const Mat2& P_I, std::span<const Mat2> bond_stresses,
                   std::span<const Vec2> gamma);

}  // namespace pdc
