#pragma once

#include "pdc/family.hpp"
#include "pdc/influence.hpp"
#include "pdc/point_cloud.hpp"
#include "pdc/types.hpp"

#include <Eigen/Dense>

#include <span>
#include <vector>

namespace pdc {

enum class OperatorKind { rk, gmls };

struct WeightOptions {
  OperatorKind kind = OperatorKind::rk;
  int order = 2;
  /// Influence used inside the RK moment matrix; the paper's pairing binds
  /// the cubic B-spline to RK and folds 1/|xi|^2 into the GMLS operator.
  InfluenceKind influence = InfluenceKind::cubic_bspline;
  double condition_limit = 1e12;   // moment-matrix admissibility threshold
  double pivot_threshold = 1e-12;  // KKT rank detection, relative to max pivot
  double constraint_tol = 1e-10;   // relative KKT constraint residual
};

/// Per-node weight set over one family list.
/// `raw` holds the formulation-native per-bond weights: Phi_IJ vectors for
/// RK, (omega_x, omega_y) diagonal pairs for GMLS. `g` holds the assembled
/// gradient/divergence vectors actually applied by the operators:
///   RK:   g_IJ = Phi_IJ V_J
///   GMLS: g_IJ = omega_IJ (X_J - X_I) / |X_J - X_I|^2
/// so that grad u = sum_J (u_J - u_I) g_IJ^T and
/// div P = sum_J (P*_J - P_I) g_IJ for both operators.
struct NodeWeightSet {
  bool built = false;
  std::vector<Vec2> raw;
  std::vector<Vec2> g;
  double condition = 0.0;     // RK: moment-matrix spectral condition
  double kkt_residual = 0.0;  // GMLS: max relative constraint residual
};

struct OperatorWeights {
  OperatorKind kind = OperatorKind::rk;
  int order = 1;
  /// Indexed by node id, aligned with FamilyGraph::kinematic / ::force.
  /// Kinematic sets exist for bulk nodes and for dirichlet nodes that appear
  /// in some bulk force family; force sets exist for bulk nodes only.
  std::vector<NodeWeightSet> kinematic;
  std::vector<NodeWeightSet> force;
};

/// Moment matrix M_I = sum_J alpha_IJ Q(xi/L) Q(xi/L)^T V_J over the given
/// family, with L the node's largest bond length (pure conditioning scale).
/// Returns M and its spectral condition estimate.
struct MomentMatrix {
  Eigen::MatrixXd M;
  double condition = 0.0;
  double scale = 1.0;
};
MomentMatrix assemble_moment_matrix(const PointCloud& cloud, const FamilyGraph& fam, int node,
                                    std::span<const int> family, const InfluenceFunction& alpha,
                                    int order);

/// RK bond weights Phi_IJ = alpha_IJ Selector^T M^-1 Q(xi_IJ) for one node.
std::vector<Vec2> rk_bond_weights(const PointCloud& cloud, const FamilyGraph& fam, int node,
                                  std::span<const int> family, const InfluenceFunction& alpha,
                                  int order, const WeightOptions& opts, double* condition_out);

/// GMLS diagonal quadrature weights for one node: minimal Frobenius norm
/// subject to exact gradients of all monomials of degree <= order, solved
/// per component through the bordered KKT system.
std::vector<Vec2> gmls_bond_weights(const PointCloud& cloud, int node, std::span<const int> family,
                                    int order, const WeightOptions& opts, double* kkt_residual_out);

/// Build kinematic weights (bulk + active dirichlet nodes) and force weights
/// (bulk nodes). Throws UnisolvencyError / DegenerateNeighborhood naming the
/// offending node.
OperatorWeights build_operator_weights(const PointCloud& cloud, const FamilyGraph& fam,
                                       const WeightOptions& opts);

/// grad_h u at node I.
Mat2 nonlocal_gradient(const VectorField& u, int I, std::span<const int> family,
                       std::span<const Vec2> g);

/// sum_J (P_J - P_I) gamma_IJ; callers supply P with zeros at free-surface
/// nodes.
Vec2 nonlocal_divergence(const TensorField& P, int I, std::span<const int> family,
                         std::span<const Vec2> gamma);

}  // namespace pdc
