#include "deepwave_cli/report.hpp"

#include "deepwave/core_types.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

namespace deepwave::cli {

bool Check::passed() const {
  if (!std::isfinite(value)) return false;
  switch (comparison) {
    case Comparison::within:
      return std::abs(value - target) <= abs_tol + rel_tol * std::abs(target);
    case Comparison::at_most:
      return value <= target;
    case Comparison::at_least:
      return value >= target;
    case Comparison::below:
      return value < target;
    case Comparison::above:
      return value > target;
  }
  return false;
}

Check within(std::string name, double value, double target, double abs_tol,
             double rel_tol) {
  return {std::move(name), value, target, abs_tol, rel_tol, Comparison::within};
}

Check at_most(std::string name, double value, double bound) {
  return {std::move(name), value, bound, 0.0, 0.0, Comparison::at_most};
}

Check at_least(std::string name, double value, double bound) {
  return {std::move(name), value, bound, 0.0, 0.0, Comparison::at_least};
}

Check below(std::string name, double value, double bound) {
  return {std::move(name), value, bound, 0.0, 0.0, Comparison::below};
}

Check above(std::string name, double value, double bound) {
  return {std::move(name), value, bound, 0.0, 0.0, Comparison::above};
}

Check failed(std::string name) {
  return {std::move(name), std::numeric_limits<double>::quiet_NaN(), 0.0, 0.0, 0.0,
          Comparison::within};
}

bool Report::all_passed() const { return failures() == 0; }

std::size_t Report::failures() const {
  std::size_t n = 0;
  for (const auto& c : checks) n += c.passed() ? 0 : 1;
  return n;
}

std::string format_real(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12e", v);
  return buf;
}

namespace {

std::string comparison_tag(Comparison c) {
  switch (c) {
    case Comparison::within: return "";
    case Comparison::at_most: return "<=";
    case Comparison::at_least: return ">=";
    case Comparison::below: return "<";
    case Comparison::above: return ">";
  }
  return "";
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::io, "cannot write " + path.string());
  out << text;
  if (!out.flush()) throw Error(ErrorCode::io, "failed writing " + path.string());
}

}  // namespace

std::string to_csv(const Report& report) {
  std::string out = "check_name,value,target,abs_tol,rel_tol,status\n";
  for (const auto& c : report.checks) {
    out += c.name + ',' + format_real(c.value) + ',' + comparison_tag(c.comparison) +
           format_real(c.target) + ',' + format_real(c.abs_tol) + ',' +
           format_real(c.rel_tol) + ',' + (c.passed() ? "pass" : "fail") + '\n';
  }
  return out;
}

void write_report(const Report& report, const nlohmann::json& provenance,
                  const std::filesystem::path& dir) {
  const std::string stem = report.command;
  write_file(dir / (stem + "_report.csv"), to_csv(report));
  nlohmann::json summary = report.summary;
  summary["command"] = report.command;
  summary["config"] = provenance;
  summary["checks_total"] = report.checks.size();
  summary["checks_failed"] = report.failures();
  summary["warnings"] = report.warnings;
  write_file(dir / (stem + "_summary.json"), summary.dump(2) + "\n");
  for (const auto& [name, series] : report.plots) {
    std::string text;
    for (const auto& [x, y] : series) text += format_real(x) + ' ' + format_real(y) + '\n';
    write_file(dir / (stem + "_" + name + ".dat"), text);
  }
}

}  // namespace deepwave::cli
