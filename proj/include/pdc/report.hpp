#pragma once

#include "pdc/benchmarks.hpp"

#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace pdc {

struct ReportRow {
  std::string case_name;
  std::string formulation;
  int order = 0;
  int level = 0;
  double h = 0.0;
  double rms = 0.0;
  double rate = std::numeric_limits<double>::quiet_NaN();  // NaN on the first level
  // provenance
  std::string grid;
  std::string delta;
  std::uint64_t seed = 0;
};

std::vector<ReportRow> to_rows(const CaseResult& result);

/// `case,formulation,order,level,h,rms,rate`
void write_convergence_csv(const std::filesystem::path& path, std::span<const ReportRow> rows);

/// Same columns plus provenance: `...,grid,delta,seed`
void write_run_csv(const std::filesystem::path& path, std::span<const ReportRow> rows);

}  // namespace pdc
