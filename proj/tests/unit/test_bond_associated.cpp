#include "pdc/bond_associated.hpp"

#include "pdc/errors.hpp"
#include "pdc/material.hpp"
#include "pdc/operator_weights.hpp"
#include "pdc/solver.hpp"

#include <doctest.h>

#include "test_clouds.hpp"

#include <random>

using namespace pdc;
using pdc::testing::perturbed_square;

TEST_CASE("homogeneous deformation gives the nodal gradient on every bond") {
  const Mat2 F = (Mat2() << 1.02, 0.05, -0.03, 0.97).finished();
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (int t = 0; t < 20; ++t) {
    const Vec2 XI(dist(rng), dist(rng));
    const Vec2 XJ = XI + Vec2(dist(rng), dist(rng));
    if ((XJ - XI).norm() < 1e-3) continue;
    const Mat2 FJI = bond_deformation_gradient(F, F, F * XI, F * XJ, XI, XJ);
    CHECK((FJI - F).norm() <= 1e-13 * F.norm());
  }
  CHECK_THROWS_AS(
      bond_deformation_gradient(F, F, Vec2(0, 0), Vec2(0, 0), Vec2(0.5, 0.5), Vec2(0.5, 0.5)),
      InvalidArgument);
}

TEST_CASE("dropping the non-uniform part recovers the base divergence bit for bit") {
  const PointCloud c = perturbed_square(0.2, 0.03, 21, 3.5);
  const FamilyGraph fam = build_families(c, 3.5 * c.h_avg, FamilySpace::physical);
  WeightOptions opts;
  opts.kind = OperatorKind::rk;
  opts.order = 2;
  const OperatorWeights w = build_operator_weights(c, fam, opts);
  const Material mat = make_material(100000.0, 0.3);

  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> dist(-0.01, 0.01);
  VectorField u(c.size());
  for (auto& v : u) v = Vec2(dist(rng), dist(rng));

  TensorField F, strain, stress;
  recover_fields(c, fam, w, mat, u, F, strain, stress);

  for (const auto& nd : c.nodes) {
    if (nd.role != Role::bulk) continue;
    const auto& family = fam.force[nd.id];
    const auto& gamma = w.force[nd.id].g;
    // base path
    const Vec2 base = nonlocal_divergence(stress, nd.id, family, gamma);
    // bond path with Delta F^nh forced to zero: P_JI = P(F_J)
    std::vector<Mat2> bond_stress(family.size());
    for (std::size_t k = 0; k < family.size(); ++k)
      bond_stress[k] = first_pk_stress(small_strain(F[family[k]]), mat);
    const Vec2 ba = ba_divergence(stress[nd.id], bond_stress, gamma);
    CHECK(ba.x() == base.x());
    CHECK(ba.y() == base.y());
  }
}

TEST_CASE("affine fields have vanishing non-uniform bond correction end to end") {
  const PointCloud c = perturbed_square(0.2, 0.03, 13, 3.5);
  const FamilyGraph fam = build_families(c, 3.5 * c.h_avg, FamilySpace::physical);
  WeightOptions opts;
  opts.kind = OperatorKind::gmls;
  opts.order = 2;
  const OperatorWeights w = build_operator_weights(c, fam, opts);
  const Material mat = make_material(100000.0, 0.3);

  const Mat2 A = (Mat2() << 0.011, -0.004, 0.006, -0.009).finished();
  VectorField u(c.size());
  for (int i = 0; i < c.size(); ++i) u[i] = A * c.nodes[i].X;

  TensorField F, strain, stress;
  recover_fields(c, fam, w, mat, u, F, strain, stress);

  for (const auto& nd : c.nodes) {
    if (nd.role != Role::bulk) continue;
    for (int j : fam.force[nd.id]) {
      const Mat2 FJI = bond_deformation_gradient(F[nd.id], F[j], c.nodes[nd.id].X + u[nd.id],
                                                 c.nodes[j].X + u[j], c.nodes[nd.id].X,
                                                 c.nodes[j].X);
      CHECK((FJI - F[j]).norm() <= 1e-12);  // Delta F^nh = 0 to machine precision
      CHECK((FJI - (Mat2::Identity() + A)).norm() <= 1e-10);
    }
  }
}

TEST_CASE("internal force is linear in the displacements") {
  const PointCloud c = perturbed_square(0.2, 0.03, 55, 3.5);
  const FamilyGraph fam = build_families(c, 3.5 * c.h_avg, FamilySpace::physical);
  WeightOptions opts;
  opts.kind = OperatorKind::rk;
  opts.order = 2;
  const OperatorWeights w = build_operator_weights(c, fam, opts);
  const Material mat = make_material(100000.0, 0.3);

  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> dist(-0.05, 0.05);
  VectorField u1(c.size()), u2(c.size()), ucomb(c.size());
  const double al = 1.7, be = -0.6;
  for (int i = 0; i < c.size(); ++i) {
    u1[i] = Vec2(dist(rng), dist(rng));
    u2[i] = Vec2(dist(rng), dist(rng));
    ucomb[i] = al * u1[i] + be * u2[i];
  }
  const auto r1 = apply_internal_force(c, fam, w, mat, Formulation::ba_rk, u1);
  const auto r2 = apply_internal_force(c, fam, w, mat, Formulation::ba_rk, u2);
  const auto rc = apply_internal_force(c, fam, w, mat, Formulation::ba_rk, ucomb);
  double scale = 0.0;
  for (const auto& r : rc) scale = std::max(scale, r.norm());
  for (std::size_t k = 0; k < rc.size(); ++k)
    CHECK((rc[k] - al * r1[k] - be * r2[k]).norm() <= 1e-10 * std::max(1.0, scale));
}
