#include "pdc/benchmarks.hpp"

#include "pdc/errors.hpp"
#include "pdc/operator_weights.hpp"
#include "pdc/verification.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

namespace pdc {

const char* to_string(GridKind g) {
  switch (g) {
    case GridKind::uniform: return "uniform";
    case GridKind::perturbed: return "perturbed";
    case GridKind::polar: return "polar";
    case GridKind::file: return "file";
  }
  return "?";
}

double default_delta_multiplier(int order, GridKind grid) {
  if (order < 1 || order > 3) throw InvalidArgument("order must be in {1,2,3}");
  if (grid == GridKind::file) return 2.25 + (order - 1) * 1.0;  // triangular pointsets
  return 2.5 + (order - 1) * 1.0;
}

double default_parametric_delta(int order) {
  if (order < 1 || order > 3) throw InvalidArgument("order must be in {1,2,3}");
  return 1.75 + (order - 1) * 1.0;
}

BenchmarkCase manufactured_case(int order, GridKind grid, int levels, const Material& m) {
  if (grid != GridKind::uniform && grid != GridKind::perturbed)
    throw InvalidArgument("manufactured benchmark runs on uniform or perturbed grids");
  BenchmarkCase c;
  c.name = "manufactured";
  c.material = m;
  const ManufacturedConsts consts;
  c.exact = [consts](const Vec2& X) { return manufactured_solution(X, consts); };
  c.body_force = [consts, m](const Vec2& X) { return manufactured_body_force(X, consts, m); };
  c.ladder.kind = grid;
  c.ladder.levels = levels;
  c.order = order;
  c.delta_rule = default_delta_multiplier(order, grid);
  c.expected_min_rate = std::min(order, 2) - 0.3;
  return c;
}

BenchmarkCase plate_hole_case(int order, int levels, const Material& m, double a, double L,
                              double T) {
  BenchmarkCase c;
  c.name = "plate_hole";
  c.material = m;
  c.exact = [m, T, a](const Vec2& X) {
    const double r = X.norm();
    const double theta = std::atan2(X.y(), X.x());
    // the free-surface hole is traction-free, hence the plane-strain form
    return airy_hole_displacement(std::max(r, a), theta, T, a, m, AiryForm::plane_strain);
  };
  c.body_force = nullptr;
  c.ladder.kind = GridKind::polar;
  c.ladder.levels = levels;
  c.ladder.a = a;
  c.ladder.L = L;
  c.order = order;
  c.delta_rule = default_parametric_delta(order);
  c.parametric = true;
  c.expected_min_rate = 0.8;
  return c;
}

BenchmarkCase patch_test_case(int order, GridKind grid, const Material& m) {
  BenchmarkCase c;
  c.name = "patch_test";
  c.material = m;
  const Mat2 A = (Mat2() << 0.013, -0.004, 0.007, 0.019).finished();
  const Vec2 b(0.003, -0.002);
  c.exact = [A, b](const Vec2& X) { return Vec2(A * X + b); };
  c.body_force = nullptr;
  c.ladder.kind = grid;
  c.ladder.levels = 1;
  c.order = order;
  c.delta_rule = grid == GridKind::polar ? default_parametric_delta(order)
                                         : default_delta_multiplier(order, grid);
  c.parametric = grid == GridKind::polar;
  return c;
}

std::vector<PointCloud> build_ladder(const BenchmarkCase& c) {
  const LadderSpec& l = c.ladder;
  if (l.levels < 1) throw InvalidArgument("ladder needs at least one level");
  std::vector<PointCloud> clouds;
  switch (l.kind) {
    case GridKind::uniform:
      for (int k = 0; k < l.levels; ++k) {
        const double h = l.h0 / (1 << k);
        clouds.push_back(generate_uniform_grid(l.lo, l.hi, h, c.delta_rule * h));
      }
      break;
    case GridKind::perturbed: {
      const PointCloud base = generate_uniform_grid(l.lo, l.hi, l.h0, c.delta_rule * l.h0);
      clouds = perturb_then_refine(base, l.sigma, l.levels - 1, l.seed);
      break;
    }
    case GridKind::polar: {
      const int collar = static_cast<int>(std::ceil(c.delta_rule));
      for (int k = 0; k < l.levels; ++k)
        clouds.push_back(generate_polar_grid(l.a, l.L, l.nr0 << k, l.ntheta0 << k, collar));
      break;
    }
    case GridKind::file: {
      if (l.files.empty()) throw InvalidArgument("file ladder needs at least one path");
      for (const auto& f : l.files) clouds.push_back(load_pointcloud(f));
      break;
    }
  }
  return clouds;
}

namespace {

void dump_fields(const BenchmarkCase& c, Formulation f, const PointCloud& cloud,
                 const Solution& sol, int level, const std::filesystem::path& out_dir) {
  char name[160];
  std::snprintf(name, sizeof name, "fields_%s_%s_n%d_L%d.csv", c.name.c_str(), to_string(f),
                c.order, level);
  std::ofstream out(out_dir / name);
  out << "id,x,y,u1,u2,e1,e2\n";
  char buf[320];
  for (const auto& nd : cloud.nodes) {
    Vec2 e = Vec2::Zero();
    if (c.exact && nd.role == Role::bulk) e = sol.u[nd.id] - c.exact(nd.X);
    std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", nd.id, nd.X.x(),
                  nd.X.y(), sol.u[nd.id].x(), sol.u[nd.id].y(), e.x(), e.y());
    out << buf;
  }
}

void dump_weights(const BenchmarkCase& c, Formulation f, const FamilyGraph& fam,
                  const OperatorWeights& w, int level, const std::filesystem::path& out_dir) {
  char name[160];
  std::snprintf(name, sizeof name, "weights_%s_%s_n%d_L%d.csv", c.name.c_str(), to_string(f),
                c.order, level);
  std::ofstream out(out_dir / name);
  out << "node,neighbor,set,wx,wy\n";
  char buf[200];
  const auto dump_set = [&](const std::vector<NodeWeightSet>& sets,
                            const std::vector<std::vector<int>>& fams, const char* tag) {
    for (std::size_t i = 0; i < sets.size(); ++i) {
      if (!sets[i].built) continue;
      for (std::size_t k = 0; k < fams[i].size(); ++k) {
        std::snprintf(buf, sizeof buf, "%zu,%d,%s,%.17g,%.17g\n", i, fams[i][k], tag,
                      sets[i].raw[k].x(), sets[i].raw[k].y());
        out << buf;
      }
    }
  };
  dump_set(w.kinematic, fam.kinematic, "kinematic");
  dump_set(w.force, fam.force, "force");
}

}  // namespace

LevelResult run_level(const BenchmarkCase& c, Formulation f, const PointCloud& cloud, int level,
                      const RunOptions& opts) {
  const FamilySpace space = c.parametric ? FamilySpace::parametric : FamilySpace::physical;
  const double delta = c.parametric ? c.delta_rule : c.delta_rule * cloud.h_avg;
  const FamilyGraph fam = build_families(cloud, delta, space);

  WeightOptions wopts;
  wopts.kind = uses_rk_weights(f) ? OperatorKind::rk : OperatorKind::gmls;
  wopts.order = c.order;
  const OperatorWeights weights = build_operator_weights(cloud, fam, wopts);

  const EquilibriumSystem sys =
      assemble(cloud, fam, weights, c.material, f, c.body_force, c.exact);
  const Solution sol = solve(sys, cloud, fam, weights, c.material);

  LevelResult r;
  r.level = level;
  r.h = cloud.h_avg;
  r.n_bulk = static_cast<int>(sys.bulk_ids.size());
  r.solve_residual = sol.diag.residual_rel;
  if (c.exact) {
    r.rms = rms_error(sol.u, c.exact, cloud, sys.bulk_ids);
    double umax = 0.0;
    for (int i : sys.bulk_ids) umax = std::max(umax, c.exact(cloud.nodes[i].X).norm());
    r.rms_rel = umax > 0.0 ? r.rms / umax : r.rms;
  }
  if (!opts.out_dir.empty()) {
    std::filesystem::create_directories(opts.out_dir);
    if (opts.dump_fields) dump_fields(c, f, cloud, sol, level, opts.out_dir);
    if (opts.dump_weights) dump_weights(c, f, fam, weights, level, opts.out_dir);
  }
  return r;
}

CaseResult run_case(const BenchmarkCase& c, Formulation f, const RunOptions& opts) {
  const auto clouds = build_ladder(c);
  CaseResult res;
  res.case_name = c.name;
  res.formulation = f;
  res.order = c.order;
  res.delta_rule = c.delta_rule;
  res.parametric = c.parametric;
  res.grid = c.ladder.kind;
  res.seed = c.ladder.seed;
  for (std::size_t k = 0; k < clouds.size(); ++k)
    res.levels.push_back(run_level(c, f, clouds[k], static_cast<int>(k), opts));
  if (res.levels.size() >= 2 && c.exact) {
    std::vector<double> errs, hs;
    for (const auto& lv : res.levels) {
      errs.push_back(lv.rms);
      hs.push_back(lv.h);
    }
    res.rates = convergence_rate(errs, hs);
  }
  return res;
}

}  // namespace pdc
