#pragma once

#include "pdc/family.hpp"
#include "pdc/material.hpp"
#include "pdc/point_cloud.hpp"
#include "pdc/solver.hpp"
#include "pdc/types.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace pdc {

enum class GridKind { uniform, perturbed, polar, file };

const char* to_string(GridKind g);

struct LadderSpec {
  GridKind kind = GridKind::uniform;
  int levels = 3;
  // square grids
  Vec2 lo = Vec2(-1.0, -1.0);
  Vec2 hi = Vec2(1.0, 1.0);
  double h0 = 0.2;
  double sigma = 0.03;
  std::uint64_t seed = 42;
  // polar plate
  double a = 1.0;
  double L = 4.0;
  int nr0 = 20;
  int ntheta0 = 20;
  // imported pointsets, one file per level
  std::vector<std::string> files;
};

struct BenchmarkCase {
  std::string name;
  SpatialFn exact;       // null when no closed-form solution
  SpatialFn body_force;  // null means zero
  Material material;
  LadderSpec ladder;
  double delta_rule = 3.5;   // multiplier of h_avg, or parametric constant
  bool parametric = false;   // families and horizon live in parametric space
  int order = 2;
  double expected_min_rate = 0.0;  // informational, reported not enforced
};

/// Paper-default horizon rules per order.
double default_delta_multiplier(int order, GridKind grid);  // square 2.5/3.5/4.5, file 2.25/3.25/4.25
double default_parametric_delta(int order);                 // 1.75/2.75/3.75

BenchmarkCase manufactured_case(int order, GridKind grid, int levels,
                                const Material& m = make_material(100000.0, 0.3));
BenchmarkCase plate_hole_case(int order, int levels,
                              const Material& m = make_material(100000.0, 0.3), double a = 1.0,
                              double L = 4.0, double T = 1.0);
BenchmarkCase patch_test_case(int order, GridKind grid,
                              const Material& m = make_material(100000.0, 0.3));

std::vector<PointCloud> build_ladder(const BenchmarkCase& c);

struct LevelResult {
  int level = 0;
  double h = 0.0;
  double rms = 0.0;      // absolute RMS displacement error over bulk nodes
  double rms_rel = 0.0;  // rms / max |u_exact| over bulk nodes
  int n_bulk = 0;
  double solve_residual = 0.0;
};

struct CaseResult {
  std::string case_name;
  Formulation formulation = Formulation::rk;
  int order = 2;
  double delta_rule = 0.0;
  bool parametric = false;
  GridKind grid = GridKind::uniform;
  std::uint64_t seed = 0;
  std::vector<LevelResult> levels;
  std::vector<double> rates;  // pairwise, size levels-1
};

struct RunOptions {
  bool dump_fields = false;
  bool dump_weights = false;
  std::filesystem::path out_dir;
};

/// Build the ladder, solve every level with the given formulation, and
/// compute errors/rates. Throws on the first failing level.
CaseResult run_case(const BenchmarkCase& c, Formulation f, const RunOptions& opts = {});

/// Single level, reusing a prebuilt cloud.
LevelResult run_level(const BenchmarkCase& c, Formulation f, const PointCloud& cloud, int level,
                      const RunOptions& opts = {});

}  // namespace pdc
