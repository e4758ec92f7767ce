// Copyright 2026 The sta-open Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Run configuration. The JSON schema is documented in docs/config-schema.md.

#ifndef STA_APP_CONFIG_HPP
#define STA_APP_CONFIG_HPP

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "sta/propagator.hpp"

namespace sta::app {

enum class Scenario {
  TlsIsothermal,
  TlsOttoCool,
  TlsOttoHeat,
  TlsGeneral,
  AtomMarkov,
  AtomSta,
  OscHeat,
  OscCool,
  CustomTrajectory,
};

std::string_view to_string(Scenario s);
std::optional<Scenario> parse_scenario(std::string_view name);
const std::vector<Scenario>& all_scenarios();

/// Thrown for anything wrong with a config before a run starts.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
  std::string_view reason() const noexcept { return "ConfigError"; }
};

/// One control schedule of a custom trajectory: a constant, a polynomial5
/// ramp, or a two-column CSV file.
struct ScheduleSource {
  enum class Kind { Constant, Ramp, File } kind = Kind::Constant;
  double from = 0.0;
  double to = 0.0;
  std::filesystem::path file;
};

struct Thresholds {
  std::optional<double> min_fidelity;  // scenario default when unset
  double min_eigenvalue = -1e-6;
};

struct RunConfig {
  Scenario scenario = Scenario::TlsIsothermal;
  std::map<std::string, double> parameters;
  std::map<std::string, ScheduleSource> schedules;  // custom-trajectory only
  double tf = 1.0;
  int steps = 1000;
  int target_stride = 0;  // 0 selects the scenario default
  std::vector<GeneratorKind> generators;
  std::filesystem::path outputs = "out";
  std::uint64_t seed = 0;
  Thresholds thresholds;
  nlohmann::json source;  // the parsed input, echoed in the manifest

  double param(const std::string& name) const;
  /// Rebuilds `source` from the typed fields (used after sweep overrides).
  nlohmann::json to_json() const;
};

/// Parses and validates. Relative schedule files resolve against `base_dir`.
/// Throws ConfigError.
RunConfig parse_config(const nlohmann::json& doc, const std::filesystem::path& base_dir = {});
RunConfig load_config(const std::filesystem::path& path);

/// Re-checks a config after fields were changed programmatically.
void validate(RunConfig& config);

/// Names a sweep may vary: the scenario parameters plus "tf" and "steps".
bool has_axis(const RunConfig& config, const std::string& axis);
/// Copy with one axis set to `value`, revalidated.
RunConfig with_axis(const RunConfig& config, const std::string& axis, double value);

/// Generators a scenario accepts, and the default subset.
std::vector<GeneratorKind> allowed_generators(Scenario s);
std::vector<GeneratorKind> default_generators(Scenario s);

}  // namespace sta::app

#endif  // STA_APP_CONFIG_HPP
