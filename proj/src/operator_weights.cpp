#include "pdc/operator_weights.hpp"

#include "pdc/errors.hpp"
#include "pdc/monomials.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

namespace pdc {

namespace {

// largest physical bond length over the family; conditioning scale for the
// monomial evaluations (mathematically an identity transformation)
double bond_scale(const PointCloud& cloud, int node, std::span<const int> family) {
  double mx = 0.0;
  for (int j : family) mx = std::max(mx, (cloud.nodes[j].X - cloud.nodes[node].X).norm());
  return mx > 0.0 ? mx : 1.0;
}

}  // namespace

MomentMatrix assemble_moment_matrix(const PointCloud& cloud, const FamilyGraph& fam, int node,
                                    std::span<const int> family, const InfluenceFunction& alpha,
                                    int order) {
  if (family.empty()) throw DegenerateNeighborhood(node, "empty family");
  const int m = basis_size(order, 2);
  const double L = bond_scale(cloud, node, family);
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(m, m);
  for (int j : family) {
    const Vec2 xi = cloud.nodes[j].X - cloud.nodes[node].X;
    const double a = alpha(fam.metric_bond(cloud, node, j));
    const Eigen::VectorXd q = monomial_basis_eval(Eigen::Vector2d(xi / L), order);
    M.noalias() += (a * cloud.nodes[j].V) * q * q.transpose();
  }
  // symmetric by construction; report the spectral condition
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(M);
  const double lmin = eig.eigenvalues().minCoeff();
  const double lmax = eig.eigenvalues().maxCoeff();
  MomentMatrix out;
  out.M = std::move(M);
  out.scale = L;
  out.condition = (lmin > 0.0 && std::isfinite(lmax)) ? lmax / lmin
                                                      : std::numeric_limits<double>::infinity();
  return out;
}

std::vector<Vec2> rk_bond_weights(const PointCloud& cloud, const FamilyGraph& fam, int node,
                                  std::span<const int> family, const InfluenceFunction& alpha,
                                  int order, const WeightOptions& opts, double* condition_out) {
  const int m = basis_size(order, 2);
  if (static_cast<int>(family.size()) < m)
    throw UnisolvencyError(node, static_cast<int>(family.size()), m);

  const MomentMatrix mm = assemble_moment_matrix(cloud, fam, node, family, alpha, order);
  if (condition_out) *condition_out = mm.condition;
  if (!(mm.condition < opts.condition_limit))
    throw DegenerateNeighborhood(node, "moment matrix condition " + std::to_string(mm.condition) +
                                           " exceeds limit");

  const Eigen::LDLT<Eigen::MatrixXd> ldlt(mm.M);
  const Eigen::MatrixXd sel = gradient_selector(order, 2);

  std::vector<Vec2> phi(family.size());
  for (std::size_t k = 0; k < family.size(); ++k) {
    const int j = family[k];
    const Vec2 xi = cloud.nodes[j].X - cloud.nodes[node].X;
    const double a = alpha(fam.metric_bond(cloud, node, j));
    const Eigen::VectorXd q = monomial_basis_eval(Eigen::Vector2d(xi / mm.scale), order);
    // evaluated on xi/L, so the selector picks up a 1/L from the chain rule
    phi[k] = (a / mm.scale) * (sel.transpose() * ldlt.solve(q));
  }
  return phi;
}

std::vector<Vec2> gmls_bond_weights(const PointCloud& cloud, int node, std::span<const int> family,
                                    int order, const WeightOptions& opts,
                                    double* kkt_residual_out) {
  const int m = basis_size(order, 2);
  const int N = static_cast<int>(family.size());
  if (N < m) throw UnisolvencyError(node, N, m);

  const double L = bond_scale(cloud, node, family);

  std::vector<Vec2> omega(family.size(), Vec2::Zero());
  double worst = 0.0;
  for (int b = 0; b < 2; ++b) {
    // constraint rows: per monomial p, sum_J p(xi_J) xi_J[b] w_J / |xi_J|^2
    // must equal the b-component of grad p at the local origin (scaled
    // coordinates leave the solution unchanged)
    Eigen::MatrixXd C(m, N);
    for (int k = 0; k < N; ++k) {
      const Vec2 xi = (cloud.nodes[family[k]].X - cloud.nodes[node].X) / L;
      C.col(k) = monomial_basis_eval(Eigen::Vector2d(xi), order) * (xi[b] / xi.squaredNorm());
    }
    Eigen::VectorXd e = Eigen::VectorXd::Zero(m);
    e[b] = 1.0;  // degree-1 monomials occupy the first two rows

    // bordered KKT system [[I, C^T],[C, 0]]: minimal-norm weights subject to
    // the reproduction constraints
    Eigen::MatrixXd kkt = Eigen::MatrixXd::Zero(N + m, N + m);
    kkt.topLeftCorner(N, N).setIdentity();
    kkt.topRightCorner(N, m) = C.transpose();
    kkt.bottomLeftCorner(m, N) = C;
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(N + m);
    rhs.tail(m) = e;

    Eigen::FullPivLU<Eigen::MatrixXd> lu(kkt);
    lu.setThreshold(opts.pivot_threshold);
    const Eigen::VectorXd sol = lu.solve(rhs);
    const Eigen::VectorXd w = sol.head(N);
    // redundant rows (e.g. symmetric stencils) leave the KKT matrix singular
    // but consistent; the residual is the decisive admissibility test
    const double residual = (C * w - e).norm();  // ||e|| = 1
    worst = std::max(worst, residual);
    if (!(residual <= opts.constraint_tol)) {
      if (lu.rank() < N + m)
        throw DegenerateNeighborhood(
            node, "rank-deficient reproduction constraints (rank " + std::to_string(lu.rank()) +
                      " of " + std::to_string(N + m) + ", residual " + std::to_string(residual) +
                      ")");
      throw DegenerateNeighborhood(node, "KKT constraint residual " + std::to_string(residual) +
                                             " exceeds tolerance");
    }
    for (int k = 0; k < N; ++k) omega[k][b] = w[k];
  }
  if (kkt_residual_out) *kkt_residual_out = worst;
  return omega;
}

namespace {

NodeWeightSet build_node_set(const PointCloud& cloud, const FamilyGraph& fam, int node,
                             std::span<const int> family, const WeightOptions& opts) {
  NodeWeightSet set;
  set.raw.reserve(family.size());
  set.g.resize(family.size());
  if (opts.kind == OperatorKind::rk) {
    const InfluenceFunction alpha{opts.influence, fam.delta};
    set.raw = rk_bond_weights(cloud, fam, node, family, alpha, opts.order, opts, &set.condition);
    for (std::size_t k = 0; k < family.size(); ++k)
      set.g[k] = set.raw[k] * cloud.nodes[family[k]].V;
  } else {
    set.raw = gmls_bond_weights(cloud, node, family, opts.order, opts, &set.kkt_residual);
    for (std::size_t k = 0; k < family.size(); ++k) {
      const Vec2 xi = cloud.nodes[family[k]].X - cloud.nodes[node].X;
      set.g[k] = set.raw[k].asDiagonal() * xi / xi.squaredNorm();
    }
  }
  set.built = true;
  return set;
}

}  // namespace

OperatorWeights build_operator_weights(const PointCloud& cloud, const FamilyGraph& fam,
                                       const WeightOptions& opts) {
  const int n = cloud.size();
  OperatorWeights w;
  w.kind = opts.kind;
  w.order = opts.order;
  w.kinematic.resize(n);
  w.force.resize(n);

  // kinematic weights are needed wherever a nodal stress can be asked for:
  // bulk nodes and dirichlet nodes reachable from a bulk force family
  std::vector<char> needs_kinematic(n, 0);
  for (int i = 0; i < n; ++i) {
    if (cloud.nodes[i].role != Role::bulk) continue;
    needs_kinematic[i] = 1;
    for (int j : fam.force[i])
      if (cloud.nodes[j].role == Role::dirichlet) needs_kinematic[j] = 1;
  }

  for (int i = 0; i < n; ++i) {
    if (needs_kinematic[i]) w.kinematic[i] = build_node_set(cloud, fam, i, fam.kinematic[i], opts);
    if (cloud.nodes[i].role == Role::bulk) {
      if (fam.force[i].size() == fam.kinematic[i].size())
        w.force[i] = w.kinematic[i];  // no free-surface neighbors
      else
        w.force[i] = build_node_set(cloud, fam, i, fam.force[i], opts);
    }
  }
  return w;
}

Mat2 nonlocal_gradient(const VectorField& u, int I, std::span<const int> family,
                       std::span<const Vec2> g) {
  Mat2 grad = Mat2::Zero();
  for (std::size_t k = 0; k < family.size(); ++k)
    grad.noalias() += (u[family[k]] - u[I]) * g[k].transpose();
  return grad;
}

Vec2 nonlocal_divergence(const TensorField& P, int I, std::span<const int> family,
                         std::span<const Vec2> gamma) {
  Vec2 div = Vec2::Zero();
  for (std::size_t k = 0; k < family.size(); ++k)
    div.noalias() += (P[family[k]] - P[I]) * gamma[k];
  return div;
}

}  // namespace pdc
