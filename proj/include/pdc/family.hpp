#pragma once

#include "pdc/point_cloud.hpp"

#include <vector>

namespace pdc {

enum class FamilySpace { physical, parametric };

/// Closed-ball neighborhoods: 0 < |c_J - c_I| <= delta with c the metric
/// coordinate (X or P). Kinematic families exclude free-surface nodes (a
/// free-surface node's own kinematic family is left empty); force families
/// hold the full neighborhoods. A single metric keeps bonds symmetric.
struct FamilyGraph {
  double delta = 0.0;
  FamilySpace space = FamilySpace::physical;
  std::vector<std::vector<int>> kinematic;
  std::vector<std::vector<int>> force;

  /// Bond vector in the metric space the families were built in.
  Vec2 metric_bond(const PointCloud& cloud, int i, int j) const;
};

FamilyGraph build_families(const PointCloud& cloud, double delta, FamilySpace space);

}  // namespace pdc
