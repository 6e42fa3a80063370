#pragma once

#include "pdc/benchmarks.hpp"
#include "pdc/types.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace pdc {

struct DeltaRule {
  double value = 0.0;
  bool parametric = false;  // "3.5h" -> multiplier, bare "2.75" -> parametric constant
};

DeltaRule parse_delta_rule(const std::string& text);

/// Flat key = value run configuration ('#' starts a comment). List-valued
/// keys (formulation, order, delta) take comma-separated entries; `run`
/// requires singletons, `sweep` crosses them.
struct RunConfig {
  std::string benchmark = "manufactured";  // manufactured | plate_hole | patch_test
  std::vector<Formulation> formulations{Formulation::ba_rk};
  std::vector<int> orders{2};
  std::string grid;                 // uniform | perturbed | polar | file:<paths>; default per benchmark
  std::vector<DeltaRule> deltas;    // empty -> per-order default
  int levels = 3;
  double h0 = 0.2;
  double sigma = 0.03;
  double E = 100000.0;
  double nu = 0.3;
  double a = 1.0;
  double L = 4.0;
  int nr0 = 20;
  int ntheta0 = 20;
  std::uint64_t seed = 42;
  std::string out = "out";
  bool dump_weights = false;
  bool dump_fields = false;
  std::vector<std::string> files;   // filled when grid = file:...

  GridKind grid_kind() const;
  void validate() const;
};

RunConfig load_run_config(const std::filesystem::path& path);

/// Environment overrides: PDC_<KEY> (upper-cased key) replaces the config
/// value, e.g. PDC_SEED=7, PDC_FORMULATION=ba_gmls.
void apply_env_overrides(RunConfig& cfg, const std::string& prefix = "PDC_");

/// Apply one key = value assignment (shared by the file parser and env
/// overrides).
void apply_config_entry(RunConfig& cfg, const std::string& key, const std::string& value);

/// Expand into one BenchmarkCase per (order x delta) cell; formulations are
/// iterated by the caller.
std::vector<BenchmarkCase> make_cases(const RunConfig& cfg);

}  // namespace pdc
