#include "pdc/report.hpp"

#include "pdc/errors.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

namespace pdc {

std::vector<ReportRow> to_rows(const CaseResult& r) {
  std::vector<ReportRow> rows;
  char delta[64];
  std::snprintf(delta, sizeof delta, r.parametric ? "%g" : "%gh", r.delta_rule);
  for (std::size_t k = 0; k < r.levels.size(); ++k) {
    ReportRow row;
    row.case_name = r.case_name;
    row.formulation = to_string(r.formulation);
    row.order = r.order;
    row.level = r.levels[k].level;
    row.h = r.levels[k].h;
    row.rms = r.levels[k].rms;
    if (k > 0 && k - 1 < r.rates.size()) row.rate = r.rates[k - 1];
    row.grid = to_string(r.grid);
    row.delta = delta;
    row.seed = r.seed;
    rows.push_back(std::move(row));
  }
  return rows;
}

namespace {

void write_csv(const std::filesystem::path& path, std::span<const ReportRow> rows,
               bool provenance) {
  std::ofstream out(path);
  if (!out) throw InvalidArgument("cannot write report: " + path.string());
  out << "case,formulation,order,level,h,rms,rate";
  if (provenance) out << ",grid,delta,seed";
  out << '\n';
  char buf[256];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%s,%s,%d,%d,%.17g,%.17g,", r.case_name.c_str(),
                  r.formulation.c_str(), r.order, r.level, r.h, r.rms);
    out << buf;
    if (std::isnan(r.rate) && r.level == 0) {
      // no predecessor level
    } else {
      std::snprintf(buf, sizeof buf, "%.17g", r.rate);
      out << buf;
    }
    if (provenance) {
      std::snprintf(buf, sizeof buf, ",%s,%s,%llu", r.grid.c_str(), r.delta.c_str(),
                    static_cast<unsigned long long>(r.seed));
      out << buf;
    }
    out << '\n';
  }
}

}  // namespace

void write_convergence_csv(const std::filesystem::path& path, std::span<const ReportRow> rows) {
  write_csv(path, rows, false);
}

void write_run_csv(const std::filesystem::path& path, std::span<const ReportRow> rows) {
  write_csv(path, rows, true);
}

}  // namespace pdc
