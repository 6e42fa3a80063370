#include "pdc/solver.hpp"

#include "pdc/bond_associated.hpp"
#include "pdc/errors.hpp"

#include <Eigen/SparseLU>

#include <map>
#include <vector>

namespace pdc {

namespace {

// column block of (stress stencil entry w) contracted with the divergence
// weight gamma: maps u_M to (P gamma) through P = lambda tr(sym grad u) I
// + 2 mu sym(grad u)
inline Mat2 stress_block(const Vec2& w, const Vec2& gamma, const Material& m) {
  return m.lambda * gamma * w.transpose() + m.mu * w.dot(gamma) * Mat2::Identity() +
         m.mu * w * gamma.transpose();
}

// kinematic gradient stencil of node K: (neighbor, g) pairs plus the self
// entry carrying minus the row sum
using Stencil = std::vector<std::pair<int, Vec2>>;

Stencil kinematic_stencil(const FamilyGraph& fam, const OperatorWeights& w, int K) {
  const auto& family = fam.kinematic[K];
  const auto& g = w.kinematic[K].g;
  Stencil st;
  st.reserve(family.size() + 1);
  Vec2 self = Vec2::Zero();
  for (std::size_t k = 0; k < family.size(); ++k) {
    st.emplace_back(family[k], g[k]);
    self -= g[k];
  }
  st.emplace_back(K, self);
  return st;
}

void require_built(const NodeWeightSet& set, int node, const char* which) {
  if (!set.built)
    throw AssemblyError("node " + std::to_string(node) + ": missing " + which + " weights");
}

}  // namespace

EquilibriumSystem assemble(const PointCloud& cloud, const FamilyGraph& fam,
                           const OperatorWeights& weights, const Material& mat, Formulation f,
                           const SpatialFn& body_force, const SpatialFn& dirichlet_data) {
  if (uses_rk_weights(f) != (weights.kind == OperatorKind::rk))
    throw AssemblyError("operator weights do not match the formulation");
  const int n = cloud.size();
  const bool bond_level = is_bond_associated(f);

  EquilibriumSystem sys;
  sys.formulation = f;
  sys.order = weights.order;
  sys.block_index.assign(n, -1);
  for (int i = 0; i < n; ++i)
    if (cloud.nodes[i].role == Role::bulk) {
      sys.block_index[i] = static_cast<int>(sys.bulk_ids.size());
      sys.bulk_ids.push_back(i);
    }
  const int B = static_cast<int>(sys.bulk_ids.size());
  if (B == 0) throw AssemblyError("no bulk nodes to solve for");

  sys.prescribed.assign(n, Vec2::Zero());
  for (int i = 0; i < n; ++i)
    if (cloud.nodes[i].role == Role::dirichlet)
      sys.prescribed[i] = dirichlet_data ? dirichlet_data(cloud.nodes[i].X) : Vec2::Zero();

  // cache kinematic stencils for every node whose stress can appear
  std::vector<Stencil> stencil(n);
  std::vector<char> have(n, 0);
  const auto stencil_of = [&](int K) -> const Stencil& {
    if (!have[K]) {
      require_built(weights.kinematic[K], K, "kinematic");
      stencil[K] = kinematic_stencil(fam, weights, K);
      have[K] = 1;
    }
    return stencil[K];
  };

  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(static_cast<std::size_t>(B) * 160);
  sys.rhs = Eigen::VectorXd::Zero(2 * B);

  for (int row = 0; row < B; ++row) {
    const int I = sys.bulk_ids[row];
    require_built(weights.force[I], I, "force");
    const auto& force_family = fam.force[I];
    const auto& gamma = weights.force[I].g;

    std::map<int, Mat2> blocks;
    const auto add = [&blocks](int M, const Mat2& b) {
      auto [it, fresh] = blocks.try_emplace(M, b);
      if (!fresh) it->second += b;
    };

    for (std::size_t k = 0; k < force_family.size(); ++k) {
      const int J = force_family[k];
      const Vec2& gm = gamma[k];
      // -P_I part of (P* - P_I) gamma
      for (const auto& [M, gv] : stencil_of(I)) add(M, -stress_block(gv, gm, mat));
      if (cloud.nodes[J].role == Role::free_surface) continue;  // broken bond, P* = 0

      if (!bond_level) {
        for (const auto& [M, gv] : stencil_of(J)) add(M, stress_block(gv, gm, mat));
      } else {
        // bond-level gradient stencil:
        // grad_JI = grad_J + [(u_J - u_I) - (grad_I + grad_J)/2 xi] xi^T/|xi|^2
        const Vec2 xi = cloud.nodes[J].X - cloud.nodes[I].X;
        const Vec2 xin = xi / xi.squaredNorm();
        std::map<int, Vec2> h;
        const auto addh = [&h](int M, const Vec2& v) {
          auto [it, fresh] = h.try_emplace(M, v);
          if (!fresh) it->second += v;
        };
        for (const auto& [M, gv] : stencil_of(J)) addh(M, gv - 0.5 * gv.dot(xi) * xin);
        for (const auto& [M, gv] : stencil_of(I)) addh(M, -0.5 * gv.dot(xi) * xin);
        addh(J, xin);
        addh(I, -xin);
        for (const auto& [M, hv] : h) add(M, stress_block(hv, gm, mat));
      }
    }

    Vec2 rhs_row = body_force ? Vec2(-body_force(cloud.nodes[I].X)) : Vec2(Vec2::Zero());
    for (const auto& [M, b] : blocks) {
      const int col = sys.block_index[M];
      if (col >= 0) {
        for (int r = 0; r < 2; ++r)
          for (int c = 0; c < 2; ++c)
            if (b(r, c) != 0.0) triplets.emplace_back(2 * row + r, 2 * col + c, b(r, c));
      } else {
        rhs_row -= b * sys.prescribed[M];
      }
    }
    sys.rhs.segment<2>(2 * row) = rhs_row;
  }

  sys.A.resize(2 * B, 2 * B);
  sys.A.setFromTriplets(triplets.begin(), triplets.end());
  sys.A.makeCompressed();
  return sys;
}

Solution solve(const EquilibriumSystem& sys, const PointCloud& cloud, const FamilyGraph& fam,
               const OperatorWeights& weights, const Material& mat) {
  Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
  lu.compute(sys.A);
  if (lu.info() != Eigen::Success)
    throw SolverError("sparse factorization failed: " + lu.lastErrorMessage());
  const Eigen::VectorXd x = lu.solve(sys.rhs);
  if (lu.info() != Eigen::Success) throw SolverError("sparse solve failed");

  Solution sol;
  sol.diag.n_dofs = static_cast<int>(sys.rhs.size());
  sol.diag.rhs_norm = sys.rhs.norm();
  const double denom = sol.diag.rhs_norm > 0.0 ? sol.diag.rhs_norm : 1.0;
  sol.diag.residual_rel = (sys.A * x - sys.rhs).norm() / denom;
  if (!(sol.diag.residual_rel <= 1e-10))
    throw SolverError("solver residual " + std::to_string(sol.diag.residual_rel) +
                      " exceeds 1e-10 of the right-hand side (system likely ill-conditioned)");

  sol.u.assign(cloud.size(), Vec2::Zero());
  for (std::size_t k = 0; k < sys.bulk_ids.size(); ++k)
    sol.u[sys.bulk_ids[k]] = x.segment<2>(2 * static_cast<Eigen::Index>(k));
  for (int i = 0; i < cloud.size(); ++i)
    if (cloud.nodes[i].role == Role::dirichlet) sol.u[i] = sys.prescribed[i];

  recover_fields(cloud, fam, weights, mat, sol.u, sol.F, sol.strain, sol.stress);
  return sol;
}

void recover_fields(const PointCloud& cloud, const FamilyGraph& fam,
                    const OperatorWeights& weights, const Material& mat, const VectorField& u,
                    TensorField& F, TensorField& strain, TensorField& stress) {
  const int n = cloud.size();
  F.assign(n, Mat2::Identity());
  strain.assign(n, Mat2::Zero());
  stress.assign(n, Mat2::Zero());
  for (int i = 0; i < n; ++i) {
    if (!weights.kinematic[i].built) continue;
    F[i] = Mat2::Identity() + nonlocal_gradient(u, i, fam.kinematic[i], weights.kinematic[i].g);
    strain[i] = small_strain(F[i]);
    stress[i] = first_pk_stress(strain[i], mat);
  }
}

std::vector<Vec2> apply_internal_force(const PointCloud& cloud, const FamilyGraph& fam,
                                       const OperatorWeights& weights, const Material& mat,
                                       Formulation f, const VectorField& u) {
  const int n = cloud.size();
  TensorField F, strain, stress;
  recover_fields(cloud, fam, weights, mat, u, F, strain, stress);

  std::vector<Vec2> rows;
  rows.reserve(n);
  const bool bond_level = is_bond_associated(f);
  std::vector<Mat2> bond_stress;
  for (int I = 0; I < n; ++I) {
    if (cloud.nodes[I].role != Role::bulk) continue;
    const auto& family = fam.force[I];
    const auto& gamma = weights.force[I].g;
    if (!bond_level) {
      rows.push_back(nonlocal_divergence(stress, I, family, gamma));
    } else {
      bond_stress.assign(family.size(), Mat2::Zero());
      for (std::size_t k = 0; k < family.size(); ++k) {
        const int J = family[k];
        if (cloud.nodes[J].role == Role::free_surface) continue;  // broken: zero stress
        const Mat2 F_JI =
            bond_deformation_gradient(F[I], F[J], cloud.nodes[I].X + u[I], cloud.nodes[J].X + u[J],
                                      cloud.nodes[I].X, cloud.nodes[J].X);
        bond_stress[k] = first_pk_stress(small_strain(F_JI), mat);
      }
      rows.push_back(ba_divergence(stress[I], bond_stress, gamma));
    }
  }
  return rows;
}

}  // namespace pdc
