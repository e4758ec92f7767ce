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

#ifndef STA_APP_SCENARIOS_HPP
#define STA_APP_SCENARIOS_HPP

#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "sta/app/config.hpp"
#include "sta/qsl.hpp"

namespace sta::app {

/// One named CSV column, one value per grid node.
struct Column {
  std::string name;
  std::vector<double> values;
};

struct GeneratorRun {
  GeneratorKind kind = GeneratorKind::LindbladLike;
  std::optional<PropagationRecord> record;  // empty for the oscillator moment representation
  std::optional<QslReport> qsl;
  std::vector<Column> columns;  // full time series, "t" first
  double final_fidelity = std::numeric_limits<double>::quiet_NaN();
  double max_trace_defect = 0.0;
  double min_eigenvalue = std::numeric_limits<double>::quiet_NaN();
  double min_omega_cd2 = std::numeric_limits<double>::quiet_NaN();          // oscillator scenarios only
  double min_uncertainty_margin = std::numeric_limits<double>::quiet_NaN(); // moment representation only
  double min_fidelity_threshold = 0.0;
};

struct ScenarioRun {
  std::vector<GeneratorRun> runs;
};

/// Builds the scenario and propagates every requested generator. Numerical
/// failures surface as sta::Error.
ScenarioRun execute(const RunConfig& config);

/// Fidelity bar applied by --strict when the config sets none.
double default_min_fidelity(Scenario s);

/// Reasons a run misses its thresholds (empty when it passes).
std::vector<std::string> threshold_failures(const RunConfig& config, const GeneratorRun& run);

}  // namespace sta::app

#endif  // STA_APP_SCENARIOS_HPP
