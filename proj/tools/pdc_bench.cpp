// Configuration-driven benchmark runner: build cloud -> weights -> assemble
// -> solve -> report, for any (benchmark, formulation, order, horizon, grid)
// combination. `run` executes one cell, `sweep` the full cross product.

#include "pdc/benchmarks.hpp"
#include "pdc/config.hpp"
#include "pdc/errors.hpp"
#include "pdc/report.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitSolver = 3;

struct CliArgs {
  std::string config;
  std::string out;
  long long seed = -1;
  bool dump_weights = false;
  bool dump_fields = false;
};

pdc::RunConfig prepare_config(const CliArgs& args) {
  pdc::RunConfig cfg = pdc::load_run_config(args.config);
  pdc::apply_env_overrides(cfg);
  if (!args.out.empty()) cfg.out = args.out;
  if (args.seed >= 0) cfg.seed = static_cast<std::uint64_t>(args.seed);
  cfg.dump_weights |= args.dump_weights;
  cfg.dump_fields |= args.dump_fields;
  cfg.validate();
  return cfg;
}

void print_case(const pdc::CaseResult& r) {
  for (std::size_t k = 0; k < r.levels.size(); ++k) {
    const auto& lv = r.levels[k];
    std::printf("%-12s %-8s n=%d L%d  h=%-8.4g bulk=%-6d rms=%-12.5g", r.case_name.c_str(),
                pdc::to_string(r.formulation), r.order, lv.level, lv.h, lv.n_bulk, lv.rms);
    if (k > 0 && k - 1 < r.rates.size()) std::printf(" rate=%.2f", r.rates[k - 1]);
    std::printf("\n");
  }
}

nlohmann::json diagnostics_entry(const pdc::CaseResult& r) {
  nlohmann::json cell;
  cell["case"] = r.case_name;
  cell["formulation"] = pdc::to_string(r.formulation);
  cell["order"] = r.order;
  cell["delta"] = r.delta_rule;
  cell["parametric_delta"] = r.parametric;
  cell["grid"] = pdc::to_string(r.grid);
  cell["seed"] = r.seed;
  for (const auto& lv : r.levels) {
    nlohmann::json jl;
    jl["level"] = lv.level;
    jl["h"] = lv.h;
    jl["n_bulk"] = lv.n_bulk;
    jl["rms"] = lv.rms;
    jl["rms_rel"] = lv.rms_rel;
    jl["solve_residual"] = lv.solve_residual;
    cell["levels"].push_back(jl);
  }
  for (double rate : r.rates) cell["rates"].push_back(rate);
  return cell;
}

int run_cells(const pdc::RunConfig& cfg, bool sweep) {
  const auto cases = pdc::make_cases(cfg);
  if (!sweep && (cases.size() != 1 || cfg.formulations.size() != 1)) {
    std::cerr << "run expects a single (formulation, order, delta) cell; use sweep for lists\n";
    return kExitValidation;
  }

  std::filesystem::create_directories(cfg.out);
  pdc::RunOptions opts;
  opts.dump_fields = cfg.dump_fields;
  opts.dump_weights = cfg.dump_weights;
  opts.out_dir = cfg.out;

  std::vector<pdc::ReportRow> rows;
  nlohmann::json diag;
  bool any_failed = false;
  for (const auto& c : cases) {
    for (pdc::Formulation f : cfg.formulations) {
      try {
        const pdc::CaseResult r = pdc::run_case(c, f, opts);
        print_case(r);
        const auto cell_rows = pdc::to_rows(r);
        rows.insert(rows.end(), cell_rows.begin(), cell_rows.end());
        diag["cells"].push_back(diagnostics_entry(r));
      } catch (const std::exception& e) {
        if (!sweep) throw;
        any_failed = true;
        std::printf("%-12s %-8s n=%d delta=%g FAILED: %s\n", c.name.c_str(), pdc::to_string(f),
                    c.order, c.delta_rule, e.what());
        nlohmann::json cell;
        cell["case"] = c.name;
        cell["formulation"] = pdc::to_string(f);
        cell["order"] = c.order;
        cell["delta"] = c.delta_rule;
        cell["error"] = e.what();
        diag["cells"].push_back(cell);
      }
    }
  }
  diag["failed_cells"] = any_failed;

  const auto report = std::filesystem::path(cfg.out) / "report.csv";
  pdc::write_run_csv(report, rows);
  std::ofstream(std::filesystem::path(cfg.out) / "diagnostics.json") << diag.dump(2) << '\n';
  std::printf("report: %s\n", report.string().c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"meshfree nonlocal-operator elastostatics benchmarks"};
  app.require_subcommand(1);

  CliArgs args;
  const auto add_common = [&args](CLI::App* sub) {
    sub->add_option("--config", args.config, "run configuration file")->required();
    sub->add_option("--out", args.out, "output directory (overrides config)");
    sub->add_option("--seed", args.seed, "seed override");
    sub->add_flag("--dump-weights", args.dump_weights, "write per-bond weight CSVs");
    sub->add_flag("--dump-fields", args.dump_fields, "write per-node solution CSVs");
  };
  CLI::App* run = app.add_subcommand("run", "execute one benchmark cell");
  CLI::App* sweep = app.add_subcommand("sweep", "execute the formulation x order x delta matrix");
  add_common(run);
  add_common(sweep);

  try {
    app.parse(argc, argv);
    const pdc::RunConfig cfg = prepare_config(args);
    return run_cells(cfg, sweep->parsed());
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kExitValidation;
  } catch (const pdc::InvalidArgument& e) {
    std::cerr << "invalid configuration: " << e.what() << '\n';
    return kExitValidation;
  } catch (const pdc::ParseError& e) {
    std::cerr << "config parse error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const pdc::ValidationError& e) {
    std::cerr << "validation error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitSolver;
  }
}
