#include "pdc/bond_associated.hpp"

#include "pdc/errors.hpp"

namespace pdc {

Mat2 bond_deformation_gradient(const Mat2& F_I, const Mat2& F_J, const Vec2& x_I, const Vec2& x_J,
                               const Vec2& X_I, const Vec2& X_J) {
  const Vec2 xi = X_J - X_I;
  const double len2 = xi.squaredNorm();
  if (!(len2 > 0.0)) throw InvalidArgument("bond_deformation_gradient: coincident reference points");
  const Vec2 nonuniform = x_J - x_I - 0.5 * (F_I + F_J) * xi;
  return F_J + nonuniform * xi.transpose() / len2;
}

Vec2 ba_divergence(const Mat2& P_I, std::span<const Mat2> bond_stresses,
                   std::span<const Vec2> gamma) {
  Vec2 div = Vec2::Zero();
  for (std::size_t k = 0; k < bond_stresses.size(); ++k)
    div.noalias() += (bond_stresses[k] - P_I) * gamma[k];
  return div;
}

}  // namespace pdc
