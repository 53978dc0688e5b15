#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "vshell/constitutive.hpp"

namespace vshell {

/// Settings of one CLI invocation. Zero-valued numeric fields mean "use the
/// case default".
struct RunConfig {
  std::string case_name = "flat_plate";
  std::string model;             // membrane, flexural, 3d; empty = case default
  std::vector<double> eps;       // one value for run, a list for study
  std::string material = "default";
  MaterialParams params{1.0, 1.0, 1.0, 1.0};
  int n1 = 0, n2 = 0, n3 = 0;
  int degree = 0;                // 3D in-plane spline degree
  int degree3 = 0;               // 3D transverse spline degree
  double T = 0.0;
  double dt = 0.0;               // default T/200
  std::string scheme = "trapezoidal";
  std::string out = "out";
  std::uint64_t seed = 20240601;
  bool export_matrices = false;

  bool operator==(const RunConfig&) const = default;
};

/// Applies one key=value setting. Keys: case, model, eps (comma list),
/// material (preset name, resets lambda/mu/theta/rho), lambda, mu, theta,
/// rho, n1, n2, n3, degree, degree3, T, dt, scheme, out, seed,
/// export_matrices. Throws ConfigError.
void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value);

/// Parses a line-oriented key=value text ('#' starts a comment) on top of cfg.
void parse_config_text(RunConfig& cfg, const std::string& text);
void parse_config_file(RunConfig& cfg, const std::string& path);

/// Checks positivity of numeric fields and, if study is set, that eps is
/// strictly decreasing. Throws ConfigError.
void validate(const RunConfig& cfg, bool study);

nlohmann::json to_json(const RunConfig& cfg);
RunConfig config_from_json(const nlohmann::json& j);
std::string to_config_text(const RunConfig& cfg);

std::vector<double> parse_double_list(const std::string& text);

}  // namespace vshell
