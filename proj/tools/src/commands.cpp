#include "deepwave_cli/commands.hpp"

#include "deepwave/wave_io.hpp"
#include "deepwave_cli/config.hpp"
#include "deepwave_cli/pipeline.hpp"
#include "deepwave_cli/report.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>

namespace deepwave::cli {

namespace fs = std::filesystem;

ExitCode exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::io:
      return exit_io;
    case ErrorCode::data_integrity:
      return exit_data_integrity;
    case ErrorCode::invalid_gravity:
    case ErrorCode::negative_surface_tension:
    case ErrorCode::zero_wave_speed:
    case ErrorCode::vertical_wave_speed:
    case ErrorCode::invalid_dimension:
    case ErrorCode::invalid_decay_exponent:
    case ErrorCode::dimension_mismatch:
    case ErrorCode::out_of_range:
    case ErrorCode::invalid_argument:
      return exit_input_range;
    default:
      return exit_check_failure;
  }
}

namespace {

void require_output_dir(const fs::path& dir) {
  std::error_code ec;
  if (!fs::is_directory(dir, ec))
    throw Error(ErrorCode::io, "output directory " + dir.string() + " does not exist");
  const fs::path probe = dir / ".deepwave_write_probe";
  {
    std::ofstream out(probe);
    if (!out) throw Error(ErrorCode::io, "output directory " + dir.string() + " is not writable");
  }
  fs::remove(probe, ec);
}

int finish(const Report& report, const nlohmann::json& provenance, const fs::path& dir,
           std::ostream& log) {
  write_report(report, provenance, dir);
  for (const auto& w : report.warnings) log << "warning: " << w << '\n';
  for (const auto& c : report.checks) {
    if (!c.passed()) log << "FAIL " << c.name << " value " << format_real(c.value) << '\n';
  }
  log << report.command << ": " << report.checks.size() - report.failures() << '/'
      << report.checks.size() << " checks passed\n";
  return report.all_passed() ? exit_pass : exit_check_failure;
}

int cmd_solve(const RunConfig& config, const nlohmann::json& provenance, const fs::path& out,
              std::ostream& log) {
  const WaveParams params = configured_params(config.physics);
  const auto wave = solver::continuation(params, config.solver);
  io::export_wave(wave, out / config.wave_output);

  const double energy = solver::wave_energy(wave);
  const double mass = solver::wave_mass(wave);
  Report report;
  report.command = "solve";
  report.checks.push_back(at_most("newton_residual", wave.residual_max, config.tolerances.newton));
  report.summary = {{"speed", wave.speed()},  {"kinetic_energy", energy},
                    {"mass", mass},           {"residual_max", wave.residual_max},
                    {"iterations", wave.iterations}, {"N", wave.N},
                    {"L", wave.L},            {"checksum", io::wave_checksum(wave)},
                    {"wave_file", config.wave_output}};
  log << "c " << format_real(wave.speed()) << " KE " << format_real(energy) << " mass "
      << format_real(mass) << " residual " << format_real(wave.residual_max) << '\n';
  return finish(report, provenance, out, log);
}

}  // namespace

int run_command(const Invocation& inv, std::ostream& log, std::ostream& err) {
  try {
    std::vector<std::string> overrides = inv.overrides;
    if (inv.seed) overrides.push_back("seed=" + std::to_string(*inv.seed));
    const nlohmann::json provenance = load_config_json(inv.config, overrides);
    const RunConfig config = parse_config(provenance);
    require_output_dir(inv.out);

    if (inv.command == "solve") return cmd_solve(config, provenance, inv.out, log);
    if (inv.command == "oracle-suite") return finish(oracle_suite(config), provenance, inv.out, log);
    if (inv.command == "verify" || inv.command == "tail-fit") {
      const auto wave = io::import_wave(config.wave_input);
      const Report report = inv.command == "verify" ? verify_report(wave, config)
                                                    : tail_fit_report(wave, config);
      return finish(report, provenance, inv.out, log);
    }
    err << "unknown command " << inv.command << '\n';
    return exit_input_range;
  } catch (const Error& e) {
    err << "error (" << to_string(e.code()) << "): " << e.what() << '\n';
    return exit_code_for(e.code());
  }
}

int run(int argc, char** argv) {
  CLI::App app{"deepwave: solitary gravity-capillary waves and far-field identity checks"};
  app.require_subcommand(1);

  Invocation inv;
  std::optional<std::string> wave;
  std::optional<double> speed_ratio;
  std::vector<double> window;
  std::optional<int> grid;
  std::optional<double> half_length;

  const std::vector<std::pair<const char*, const char*>> commands{
      {"solve", "Solve for a depression wave and export it"},
      {"verify", "Run the identity pipeline on a wave file"},
      {"oracle-suite", "Check the identities on analytic fields in 2D and 3D"},
      {"tail-fit", "Fit the far-field decay of a wave's surface"},
  };
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--config", inv.config, "JSON config file")->check(CLI::ExistingFile);
    sub->add_option("--out", inv.out, "Existing output directory");
    sub->add_option("--seed", inv.seed, "Seed for the random oracle battery");
    sub->add_option("--set", inv.overrides, "Override a config key: section.key=value");
    sub->add_option("--speed-ratio", speed_ratio, "c / c_min");
    sub->add_option("--N", grid, "Grid size");
    sub->add_option("--L", half_length, "Box half-length");
    sub->add_option("--wave", wave, "Wave file to read");
    sub->add_option("--window", window, "Fit window r1 r2")->expected(2);
    sub->callback([&inv, sub] { inv.command = sub->get_name(); });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? exit_pass : exit_input_range;
  }
  if (speed_ratio) inv.overrides.push_back("physics.speed_ratio=" + format_real(*speed_ratio));
  if (grid) inv.overrides.push_back("solver.N=" + std::to_string(*grid));
  if (half_length) inv.overrides.push_back("solver.L=" + format_real(*half_length));
  if (wave) inv.overrides.push_back("paths.wave_input=" + nlohmann::json(*wave).dump());
  if (!window.empty())
    inv.overrides.push_back("verify.fit_window=[" + format_real(window[0]) + "," +
                            format_real(window[1]) + "]");
  return run_command(inv, std::cout, std::cerr);
}

}  // namespace deepwave::cli
