#include "deepwave_cli/config.hpp"

#include "deepwave/core_types.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace deepwave::cli {

using nlohmann::json;

json default_config_json() {
  const RunConfig d;
  const auto& t = d.tolerances;
  const auto& v = d.verify;
  const auto& s = d.solver;
  return json{
      {"physics",
       {{"g", d.physics.g},
        {"sigma", d.physics.sigma},
        {"speed_ratio", d.physics.speed_ratio},
        {"eps", d.physics.eps}}},
      {"solver",
       {{"N", s.N},
        {"L", s.L},
        {"tolerance", s.tolerance},
        {"max_iterations", s.max_iterations},
        {"continuation_steps", s.continuation_steps},
        {"start_offset", s.start_offset},
        {"amplitude_factor", s.amplitude_factor}}},
      {"verify",
       {{"fit_window", {v.fit_window.r1, v.fit_window.r2}},
        {"shell_radii", v.shell_radii},
        {"flux_radii", v.flux_radii},
        {"farfield_radii", v.farfield_radii},
        {"kelvin_radii", v.kelvin_radii},
        {"mass_window", v.mass_window},
        {"volume_radius", v.volume_radius},
        {"image_iterations", v.image_iterations},
        {"shell_order", v.shell_order}}},
      {"tolerances",
       {{"hemisphere", t.hemisphere},
        {"ratio_low", t.ratio_low},
        {"ratio_high", t.ratio_high},
        {"involution", t.involution},
        {"kelvin_linear", t.kelvin_linear},
        {"unit_normal", t.unit_normal},
        {"robin", t.robin},
        {"round_trip", t.round_trip},
        {"dispersion", t.dispersion},
        {"newton", t.newton},
        {"energy_quadrature", t.energy_quadrature},
        {"oracle_flux", t.oracle_flux},
        {"exponent", t.exponent},
        {"dipole_agreement", t.dipole_agreement},
        {"kinetic_identity", t.kinetic_identity},
        {"mass_fraction", t.mass_fraction},
        {"angular_limit", t.angular_limit},
        {"angular_spread", t.angular_spread},
        {"farfield_margin", t.farfield_margin}}},
      {"oracle",
       {{"fields_per_dimension", d.oracle.fields_per_dimension},
        {"points_per_field", d.oracle.points_per_field},
        {"involution_samples", d.oracle.involution_samples}}},
      {"seed", d.seed},
      {"paths", {{"wave_input", d.wave_input}, {"wave_output", d.wave_output}}},
  };
}

void merge_config(json& base, const json& patch, const std::string& where) {
  if (!patch.is_object()) throw Error(ErrorCode::invalid_argument, "config" + where + " must be an object");
  for (const auto& [key, value] : patch.items()) {
    const std::string path = where.empty() ? key : where + "." + key;
    if (!base.contains(key)) throw Error(ErrorCode::invalid_argument, "unknown config key " + path);
    json& slot = base[key];
    if (slot.is_object()) {
      merge_config(slot, value, path);
    } else {
      if (slot.is_number() != value.is_number() || slot.is_array() != value.is_array() ||
          slot.is_string() != value.is_string())
        throw Error(ErrorCode::invalid_argument, "config key " + path + " has the wrong type");
      slot = value;
    }
  }
}

void apply_override(json& config, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0)
    throw Error(ErrorCode::invalid_argument, "override must look like key=value: " + assignment);
  const std::string key = assignment.substr(0, eq);
  const std::string text = assignment.substr(eq + 1);
  json value = json::parse(text, nullptr, false);
  if (value.is_discarded()) value = text;

  json patch = value;
  std::string rest = key;
  std::vector<std::string> parts;
  for (std::size_t pos; (pos = rest.find('.')) != std::string::npos; rest = rest.substr(pos + 1))
    parts.push_back(rest.substr(0, pos));
  parts.push_back(rest);
  for (auto it = parts.rbegin(); it != parts.rend(); ++it) patch = json{{*it, patch}};
  merge_config(config, patch);
}

namespace {

double positive(const json& j, const char* section, const char* key) {
  const double v = j.at(section).at(key).get<double>();
  if (!(v > 0.0))
    throw Error(ErrorCode::invalid_argument,
                std::string(section) + "." + key + " must be positive");
  return v;
}

std::vector<double> radii(const json& j, const char* key) {
  auto r = j.at("verify").at(key).get<std::vector<double>>();
  if (r.size() < 3) throw Error(ErrorCode::invalid_argument, std::string("verify.") + key + " needs at least three radii");
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (!(r[i] > 0.0) || (i > 0 && r[i] <= r[i - 1]))
      throw Error(ErrorCode::invalid_argument,
                  std::string("verify.") + key + " must be positive and increasing");
  }
  return r;
}

}  // namespace

RunConfig parse_config(const json& j) {
  try {
    RunConfig c;
    c.physics.g = positive(j, "physics", "g");
    c.physics.sigma = j.at("physics").at("sigma").get<double>();
    c.physics.speed_ratio = positive(j, "physics", "speed_ratio");
    c.physics.eps = positive(j, "physics", "eps");

    const auto& s = j.at("solver");
    c.solver.N = s.at("N").get<int>();
    c.solver.L = s.at("L").get<double>();
    c.solver.tolerance = positive(j, "solver", "tolerance");
    c.solver.max_iterations = s.at("max_iterations").get<int>();
    c.solver.continuation_steps = s.at("continuation_steps").get<int>();
    c.solver.start_offset = s.at("start_offset").get<double>();
    c.solver.amplitude_factor = s.at("amplitude_factor").get<double>();
    solver::validate(c.solver);

    const auto& v = j.at("verify");
    const auto window = v.at("fit_window").get<std::vector<double>>();
    if (window.size() != 2 || !(window[0] > 0.0) || !(window[1] > window[0]))
      throw Error(ErrorCode::invalid_argument, "verify.fit_window must be [r1, r2] with 0 < r1 < r2");
    c.verify.fit_window = {window[0], window[1]};
    c.verify.shell_radii = radii(j, "shell_radii");
    c.verify.flux_radii = radii(j, "flux_radii");
    c.verify.farfield_radii = radii(j, "farfield_radii");
    c.verify.kelvin_radii = radii(j, "kelvin_radii");
    c.verify.mass_window = positive(j, "verify", "mass_window");
    c.verify.volume_radius = positive(j, "verify", "volume_radius");
    c.verify.image_iterations = v.at("image_iterations").get<int>();
    c.verify.shell_order = v.at("shell_order").get<int>();
    if (c.verify.image_iterations < 0 || c.verify.shell_order < 2)
      throw Error(ErrorCode::invalid_argument, "verify.image_iterations >= 0 and verify.shell_order >= 2 required");

    auto& t = c.tolerances;
    const char* tol = "tolerances";
    t.hemisphere = positive(j, tol, "hemisphere");
    t.ratio_low = positive(j, tol, "ratio_low");
    t.ratio_high = positive(j, tol, "ratio_high");
    t.involution = positive(j, tol, "involution");
    t.kelvin_linear = positive(j, tol, "kelvin_linear");
    t.unit_normal = positive(j, tol, "unit_normal");
    t.robin = positive(j, tol, "robin");
    t.round_trip = positive(j, tol, "round_trip");
    t.dispersion = positive(j, tol, "dispersion");
    t.newton = positive(j, tol, "newton");
    t.energy_quadrature = positive(j, tol, "energy_quadrature");
    t.oracle_flux = positive(j, tol, "oracle_flux");
    t.exponent = positive(j, tol, "exponent");
    t.dipole_agreement = positive(j, tol, "dipole_agreement");
    t.kinetic_identity = positive(j, tol, "kinetic_identity");
    t.mass_fraction = positive(j, tol, "mass_fraction");
    t.angular_limit = positive(j, tol, "angular_limit");
    t.angular_spread = positive(j, tol, "angular_spread");
    t.farfield_margin = positive(j, tol, "farfield_margin");
    if (t.ratio_high <= t.ratio_low)
      throw Error(ErrorCode::invalid_argument, "tolerances.ratio_high must exceed ratio_low");

    const auto& o = j.at("oracle");
    c.oracle.fields_per_dimension = o.at("fields_per_dimension").get<int>();
    c.oracle.points_per_field = o.at("points_per_field").get<int>();
    c.oracle.involution_samples = o.at("involution_samples").get<int>();
    if (c.oracle.fields_per_dimension < 1 || c.oracle.points_per_field < 1 ||
        c.oracle.involution_samples < 1)
      throw Error(ErrorCode::invalid_argument, "oracle counts must be positive");

    c.seed = j.at("seed").get<std::uint64_t>();
    c.wave_input = j.at("paths").at("wave_input").get<std::string>();
    c.wave_output = j.at("paths").at("wave_output").get<std::string>();
    return c;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::invalid_argument, std::string("bad config: ") + e.what());
  }
}

json load_config_json(const std::filesystem::path& file,
                      const std::vector<std::string>& overrides) {
  json config = default_config_json();
  if (!file.empty()) {
    std::ifstream in(file);
    if (!in) throw Error(ErrorCode::io, "cannot read config " + file.string());
    std::stringstream buffer;
    buffer << in.rdbuf();
    json patch = json::parse(buffer.str(), nullptr, false);
    if (patch.is_discarded())
      throw Error(ErrorCode::invalid_argument, "config " + file.string() + " is not valid JSON");
    merge_config(config, patch);
  }
  for (const auto& o : overrides) apply_override(config, o);
  return config;
}

}  // namespace deepwave::cli
