#include "support.hpp"

#include "deepwave/wave_io.hpp"
#include "deepwave_cli/commands.hpp"
#include "deepwave_cli/config.hpp"
#include "deepwave_cli/pipeline.hpp"
#include "deepwave_cli/report.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace deepwave;
using namespace deepwave::cli;
using deepwave::testing::error_of;

namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("deepwave_cli_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

int run_quiet(const Invocation& inv) {
  std::ostringstream log, err;
  return run_command(inv, log, err);
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("defaults parse and every tolerance is positive") {
    const RunConfig c = parse_config(default_config_json());
    CHECK(c.physics.speed_ratio == doctest::Approx(0.95));
    CHECK(c.solver.N == 2048);
    CHECK(c.verify.fit_window.r1 == 30.0);
  }

  TEST_CASE("overrides replace single keys") {
    auto j = default_config_json();
    apply_override(j, "physics.speed_ratio=0.9");
    apply_override(j, "verify.fit_window=[20,60]");
    apply_override(j, "paths.wave_input=some/wave.json");
    const RunConfig c = parse_config(j);
    CHECK(c.physics.speed_ratio == doctest::Approx(0.9));
    CHECK(c.verify.fit_window.r2 == 60.0);
    CHECK(c.wave_input == "some/wave.json");
  }

  TEST_CASE("bad configs are input errors") {
    auto j = default_config_json();
    CHECK(error_of([&] { apply_override(j, "physics.nonsense=1"); }) == ErrorCode::invalid_argument);
    CHECK(error_of([&] { apply_override(j, "physics.g=\"x\""); }) == ErrorCode::invalid_argument);
    apply_override(j, "tolerances.exponent=0");
    CHECK(error_of([&] { parse_config(j); }) == ErrorCode::invalid_argument);
    auto k = default_config_json();
    apply_override(k, "verify.shell_radii=[30,20,40]");
    CHECK(error_of([&] { parse_config(k); }) == ErrorCode::invalid_argument);
  }

  TEST_CASE("exit codes") {
    CHECK(exit_code_for(ErrorCode::io) == exit_io);
    CHECK(exit_code_for(ErrorCode::data_integrity) == exit_data_integrity);
    CHECK(exit_code_for(ErrorCode::out_of_range) == exit_input_range);
    CHECK(exit_code_for(ErrorCode::non_convergence) == exit_check_failure);
  }

  TEST_CASE("check comparisons") {
    CHECK(within("a", 1.04, 1.0, 0.0, 0.05).passed());
    CHECK_FALSE(within("a", 1.06, 1.0, 0.0, 0.05).passed());
    CHECK(at_most("b", -3.0, -2.25).passed());
    CHECK_FALSE(at_most("b", -0.9, -2.25).passed());
    CHECK(above("c", 1e-9, 0.0).passed());
    CHECK_FALSE(above("c", 0.0, 0.0).passed());
    CHECK_FALSE(failed("d").passed());
    Report r;
    r.command = "x";
    r.checks = {at_least("e", 2.0, 1.0)};
    CHECK(to_csv(r) ==
          "check_name,value,target,abs_tol,rel_tol,status\n"
          "e,2.000000000000e+00,>=1.000000000000e+00,0.000000000000e+00,0.000000000000e+00,pass\n");
  }

  TEST_CASE("log-log slope") {
    CHECK(log_log_slope({1, 2, 4}, {1, 0.25, 0.0625}) == doctest::Approx(-2.0));
  }

  TEST_CASE("missing output directory fails before any compute") {
    Invocation inv;
    inv.command = "solve";
    inv.out = "/nonexistent/deepwave";
    CHECK(run_quiet(inv) == exit_io);
  }

  TEST_CASE("speeds at or above c_min are range errors") {
    Invocation inv;
    inv.command = "solve";
    inv.out = scratch_dir("range");
    inv.overrides = {"physics.speed_ratio=1.0"};
    CHECK(run_quiet(inv) == exit_input_range);
  }

  TEST_CASE("solve writes a wave and a summary") {
    Invocation inv;
    inv.command = "solve";
    inv.out = scratch_dir("solve");
    inv.overrides = {"solver.N=256", "solver.L=50", "physics.speed_ratio=0.9",
                     "solver.continuation_steps=5"};
    CHECK(run_quiet(inv) == exit_pass);
    const auto wave = io::import_wave(inv.out / "wave.json");
    CHECK(wave.residual_max <= 1e-10);
    CHECK(fs::exists(inv.out / "solve_summary.json"));
  }

  TEST_CASE("trivial wave passes verify with zeros") {
    const fs::path dir = scratch_dir("trivial");
    io::export_wave(solver::flat_wave(solver::wave_params(1.0, 1.0, 1.3), 256, 100.0),
                    dir / "flat.json");
    Invocation inv;
    inv.command = "verify";
    inv.out = dir;
    inv.overrides = {"paths.wave_input=\"" + (dir / "flat.json").string() + "\""};
    CHECK(run_quiet(inv) == exit_pass);
    const std::string csv = slurp(dir / "verify_report.csv");
    CHECK(csv.find("fail") == std::string::npos);
  }

  TEST_CASE("corrupted wave file is a data-integrity error") {
    const fs::path dir = scratch_dir("corrupt");
    std::string text = io::wave_to_json(deepwave::testing::small_wave());
    text[text.find("\"checksum\": \"") + 13] ^= 1;
    std::ofstream(dir / "bad.json") << text;
    Invocation inv;
    inv.command = "verify";
    inv.out = dir;
    inv.overrides = {"paths.wave_input=\"" + (dir / "bad.json").string() + "\""};
    CHECK(run_quiet(inv) == exit_data_integrity);
  }

  TEST_CASE("oracle suite is reproducible for a seed") {
    const fs::path a = scratch_dir("seed_a");
    const fs::path b = scratch_dir("seed_b");
    const fs::path c = scratch_dir("seed_c");
    for (const auto& [dir, seed] : {std::pair{a, 7ull}, std::pair{b, 7ull}, std::pair{c, 8ull}}) {
      Invocation inv;
      inv.command = "oracle-suite";
      inv.out = dir;
      inv.seed = seed;
      CHECK(run_quiet(inv) == exit_pass);
    }
    CHECK(slurp(a / "oracle_suite_report.csv") == slurp(b / "oracle_suite_report.csv"));
    CHECK(slurp(a / "oracle_suite_summary.json") == slurp(b / "oracle_suite_summary.json"));
    CHECK(slurp(a / "oracle_suite_report.csv") != slurp(c / "oracle_suite_report.csv"));
  }
}
