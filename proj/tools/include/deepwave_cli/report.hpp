#pragma once

#include "json.hpp"

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace deepwave::cli {

enum class Comparison {
  within,    // |value - target| <= abs_tol + rel_tol |target|
  at_most,   // value <= target
  at_least,  // value >= target
  below,     // value < target
  above,     // value > target
};

struct Check {
  std::string name;
  double value = 0.0;
  double target = 0.0;
  double abs_tol = 0.0;
  double rel_tol = 0.0;
  Comparison comparison = Comparison::within;

  bool passed() const;
};

Check within(std::string name, double value, double target, double abs_tol,
             double rel_tol = 0.0);
Check at_most(std::string name, double value, double bound);
Check at_least(std::string name, double value, double bound);
Check below(std::string name, double value, double bound);
Check above(std::string name, double value, double bound);

/// A failed evaluation, kept in the report under its check name.
Check failed(std::string name);

using Series = std::vector<std::pair<double, double>>;

struct Report {
  std::string command;
  std::vector<Check> checks;
  std::vector<std::string> warnings;
  nlohmann::json summary = nlohmann::json::object();
  std::vector<std::pair<std::string, Series>> plots;

  bool all_passed() const;
  std::size_t failures() const;
};

/// check_name,value,target,abs_tol,rel_tol,status
std::string to_csv(const Report& report);

/// Writes <dir>/<command>_report.csv, <dir>/<command>_summary.json and one
/// two-column file per plot series. Throws io on failure.
void write_report(const Report& report, const nlohmann::json& provenance,
                  const std::filesystem::path& dir);

/// Fixed-format real for reports: identical input gives identical bytes.
std::string format_real(double v);

}  // namespace deepwave::cli
