#pragma once

#include "pdc/family.hpp"
#include "pdc/material.hpp"
#include "pdc/operator_weights.hpp"
#include "pdc/point_cloud.hpp"
#include "pdc/types.hpp"

#include <Eigen/Sparse>

#include <functional>
#include <vector>

namespace pdc {

using SpatialFn = std::function<Vec2(const Vec2&)>;

struct EquilibriumSystem {
  Formulation formulation = Formulation::rk;
  int order = 1;
  std::vector<int> bulk_ids;     // unknown block order (ascending node id)
  std::vector<int> block_index;  // node id -> unknown block, -1 otherwise
  Eigen::SparseMatrix<double> A; // 2B x 2B operator over bulk DOFs
  Eigen::VectorXd rhs;           // -b - (dirichlet columns) * u_dirichlet
  VectorField prescribed;        // full-size; dirichlet values, zero elsewhere
};

struct SolveDiagnostics {
  int n_dofs = 0;
  double rhs_norm = 0.0;
  double residual_rel = 0.0;
};

struct Solution {
  VectorField u;        // full-size, prescribed values at dirichlet nodes
  TensorField F;        // identity where no kinematic weights exist
  TensorField strain;
  TensorField stress;
  SolveDiagnostics diag;
};

/// Linear static equilibrium over bulk DOFs: rows are
/// sum_J (P*_J - P_I) gamma_IJ + b_I = 0 with P* the nodal stress (rk/gmls)
/// or the bond-associated stress (ba_*); dirichlet columns are folded into
/// the right-hand side, free-surface neighbors contribute zero stress.
EquilibriumSystem assemble(const PointCloud& cloud, const FamilyGraph& fam,
                           const OperatorWeights& weights, const Material& mat, Formulation f,
                           const SpatialFn& body_force, const SpatialFn& dirichlet_data);

/// Sparse direct solve with residual check (<= 1e-10 relative), then field
/// recovery from the solved displacements.
Solution solve(const EquilibriumSystem& sys, const PointCloud& cloud, const FamilyGraph& fam,
               const OperatorWeights& weights, const Material& mat);

/// Matrix-free residual oracle: internal force rows evaluated directly from
/// a full displacement vector by composing the gradient, constitutive and
/// divergence operators (plus the bond-level path for ba formulations).
/// Returns one Vec2 per bulk node, ordered like EquilibriumSystem::bulk_ids.
std::vector<Vec2> apply_internal_force(const PointCloud& cloud, const FamilyGraph& fam,
                                       const OperatorWeights& weights, const Material& mat,
                                       Formulation f, const VectorField& u);

/// Nodal F / strain / stress recovered from displacements wherever kinematic
/// weights exist.
void recover_fields(const PointCloud& cloud, const FamilyGraph& fam,
                    const OperatorWeights& weights, const Material& mat, const VectorField& u,
                    TensorField& F, TensorField& strain, TensorField& stress);

}  // namespace pdc
