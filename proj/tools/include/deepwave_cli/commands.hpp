#pragma once

#include "deepwave/core_types.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace deepwave::cli {

enum ExitCode : int {
  exit_pass = 0,
  exit_check_failure = 1,
  exit_input_range = 2,
  exit_io = 3,
  exit_data_integrity = 4,
};

ExitCode exit_code_for(ErrorCode code);

struct Invocation {
  std::string command;                   // solve | verify | oracle-suite | tail-fit
  std::filesystem::path config;          // empty: defaults only
  std::filesystem::path out = ".";
  std::optional<std::uint64_t> seed;
  std::vector<std::string> overrides;    // key=value, applied after the file
};

/// Runs one command and returns its exit code. Progress and errors go to the
/// given streams; reports go to `out`.
int run_command(const Invocation& invocation, std::ostream& log, std::ostream& err);

/// Command-line entry point.
int run(int argc, char** argv);

}  // namespace deepwave::cli
