#include "pdc/config.hpp"

#include "pdc/errors.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>

namespace pdc {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  const auto e = s.find_last_not_of(" \t\r");
  return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(trim(cur));
  return out;
}

double to_double(const std::string& s, const std::string& key) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || *end != '\0')
    throw InvalidArgument("config key '" + key + "': malformed number '" + s + "'");
  return v;
}

long to_long(const std::string& s, const std::string& key) {
  char* end = nullptr;
  const long v = std::strtol(s.c_str(), &end, 10);
  if (end == s.c_str() || *end != '\0')
    throw InvalidArgument("config key '" + key + "': malformed integer '" + s + "'");
  return v;
}

bool to_bool(const std::string& s, const std::string& key) {
  if (s == "true" || s == "1" || s == "on") return true;
  if (s == "false" || s == "0" || s == "off") return false;
  throw InvalidArgument("config key '" + key + "': expected boolean, got '" + s + "'");
}

}  // namespace

DeltaRule parse_delta_rule(const std::string& text) {
  std::string t = trim(text);
  if (t.empty()) throw InvalidArgument("empty delta rule");
  DeltaRule rule;
  if (t.back() == 'h') {
    rule.parametric = false;
    t.pop_back();
  } else {
    rule.parametric = true;
  }
  rule.value = to_double(t, "delta");
  if (!(rule.value > 0.0)) throw InvalidArgument("delta rule must be positive");
  return rule;
}

void apply_config_entry(RunConfig& cfg, const std::string& key, const std::string& value) {
  if (key == "benchmark") {
    cfg.benchmark = value;
  } else if (key == "formulation") {
    cfg.formulations.clear();
    for (const auto& f : split_list(value)) cfg.formulations.push_back(formulation_from_string(f));
  } else if (key == "order") {
    cfg.orders.clear();
    for (const auto& o : split_list(value)) cfg.orders.push_back(static_cast<int>(to_long(o, key)));
  } else if (key == "grid") {
    cfg.grid = value;
    cfg.files.clear();
    if (value.rfind("file:", 0) == 0) cfg.files = split_list(value.substr(5));
  } else if (key == "delta") {
    cfg.deltas.clear();
    for (const auto& d : split_list(value)) cfg.deltas.push_back(parse_delta_rule(d));
  } else if (key == "levels") {
    cfg.levels = static_cast<int>(to_long(value, key));
  } else if (key == "h0") {
    cfg.h0 = to_double(value, key);
  } else if (key == "sigma") {
    cfg.sigma = to_double(value, key);
  } else if (key == "E") {
    cfg.E = to_double(value, key);
  } else if (key == "nu") {
    cfg.nu = to_double(value, key);
  } else if (key == "a") {
    cfg.a = to_double(value, key);
  } else if (key == "L") {
    cfg.L = to_double(value, key);
  } else if (key == "nr0") {
    cfg.nr0 = static_cast<int>(to_long(value, key));
  } else if (key == "ntheta0") {
    cfg.ntheta0 = static_cast<int>(to_long(value, key));
  } else if (key == "seed") {
    cfg.seed = static_cast<std::uint64_t>(to_long(value, key));
  } else if (key == "out") {
    cfg.out = value;
  } else if (key == "dump_weights") {
    cfg.dump_weights = to_bool(value, key);
  } else if (key == "dump_fields") {
    cfg.dump_fields = to_bool(value, key);
  } else {
    throw InvalidArgument("unknown config key: '" + key + "'");
  }
}

RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open config: " + path.string());
  RunConfig cfg;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError("expected key = value", line_no);
    try {
      apply_config_entry(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    } catch (const InvalidArgument& e) {
      throw ParseError(e.what(), line_no);
    }
  }
  if (cfg.grid.empty()) {
    cfg.grid = cfg.benchmark == "plate_hole"   ? "polar"
               : cfg.benchmark == "patch_test" ? "perturbed"
                                               : "uniform";
  }
  return cfg;
}

void apply_env_overrides(RunConfig& cfg, const std::string& prefix) {
  static const char* keys[] = {"benchmark", "formulation", "order", "grid",  "delta",
                               "levels",    "h0",          "sigma", "E",     "nu",
                               "a",         "L",           "nr0",   "ntheta0", "seed",
                               "out",       "dump_weights", "dump_fields"};
  for (const char* key : keys) {
    std::string env = prefix;
    for (const char* p = key; *p; ++p) env.push_back(static_cast<char>(std::toupper(*p)));
    if (const char* v = std::getenv(env.c_str())) apply_config_entry(cfg, key, v);
  }
}

GridKind RunConfig::grid_kind() const {
  if (grid == "uniform") return GridKind::uniform;
  if (grid == "perturbed") return GridKind::perturbed;
  if (grid == "polar") return GridKind::polar;
  if (grid.rfind("file:", 0) == 0) return GridKind::file;
  throw InvalidArgument("unknown grid: '" + grid + "'");
}

void RunConfig::validate() const {
  if (benchmark != "manufactured" && benchmark != "plate_hole" && benchmark != "patch_test")
    throw InvalidArgument("unknown benchmark: '" + benchmark + "'");
  if (formulations.empty()) throw InvalidArgument("at least one formulation required");
  if (orders.empty()) throw InvalidArgument("at least one order required");
  for (int n : orders)
    if (n < 1 || n > 3) throw InvalidArgument("order must be in {1,2,3}");
  if (levels < 1) throw InvalidArgument("levels must be >= 1");
  const GridKind g = grid_kind();
  if (benchmark == "manufactured" && g != GridKind::uniform && g != GridKind::perturbed)
    throw InvalidArgument("manufactured benchmark needs a uniform or perturbed grid");
  if (benchmark == "plate_hole" && g != GridKind::polar && g != GridKind::file)
    throw InvalidArgument("plate_hole benchmark needs a polar or file grid");
  if (g == GridKind::file && files.empty())
    throw InvalidArgument("grid = file:<path>[,<path>...] needs at least one path");
  for (const auto& d : deltas) {
    // file grids may carry parametric coordinates; missing ones fail at build
    if (d.parametric && g != GridKind::polar && g != GridKind::file)
      throw InvalidArgument("parametric delta rules need a polar or file grid");
    if (!d.parametric && g == GridKind::polar)
      throw InvalidArgument("the polar grid uses parametric delta rules (bare numbers)");
  }
  if (!(h0 > 0.0)) throw InvalidArgument("h0 must be positive");
  if (sigma < 0.0) throw InvalidArgument("sigma must be non-negative");
  if (!(E > 0.0) || nu <= -1.0 || nu >= 0.5) throw InvalidArgument("bad material constants");
}

std::vector<BenchmarkCase> make_cases(const RunConfig& cfg) {
  cfg.validate();
  const GridKind g = cfg.grid_kind();
  const Material mat = make_material(cfg.E, cfg.nu);
  std::vector<BenchmarkCase> cases;
  for (int order : cfg.orders) {
    std::vector<DeltaRule> deltas = cfg.deltas;
    if (deltas.empty()) {
      DeltaRule d;
      d.parametric = g == GridKind::polar;
      d.value = d.parametric ? default_parametric_delta(order) : default_delta_multiplier(order, g);
      deltas.push_back(d);
    }
    for (const DeltaRule& d : deltas) {
      BenchmarkCase c;
      if (cfg.benchmark == "manufactured")
        c = manufactured_case(order, g, cfg.levels, mat);
      else if (cfg.benchmark == "plate_hole")
        c = plate_hole_case(order, cfg.levels, mat, cfg.a, cfg.L);
      else
        c = patch_test_case(order, g, mat);
      c.ladder.kind = g;
      c.ladder.levels = cfg.levels;
      c.ladder.h0 = cfg.h0;
      c.ladder.sigma = cfg.sigma;
      c.ladder.seed = cfg.seed;
      c.ladder.a = cfg.a;
      c.ladder.L = cfg.L;
      c.ladder.nr0 = cfg.nr0;
      c.ladder.ntheta0 = cfg.ntheta0;
      c.ladder.files = cfg.files;
      if (g == GridKind::file && static_cast<int>(cfg.files.size()) != cfg.levels)
        c.ladder.levels = static_cast<int>(cfg.files.size());
      c.delta_rule = d.value;
      c.parametric = d.parametric;
      cases.push_back(std::move(c));
    }
  }
  return cases;
}

}  // namespace pdc
