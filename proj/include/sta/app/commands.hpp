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

#ifndef STA_APP_COMMANDS_HPP
#define STA_APP_COMMANDS_HPP

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "sta/app/config.hpp"

namespace sta::app {

enum ExitCode : int {
  kExitOk = 0,
  kExitVerifyFailed = 1,
  kExitValidation = 2,
  kExitNumerical = 3,
  kExitThreshold = 4,
};

struct GlobalOptions {
  bool strict = false;
  std::optional<std::filesystem::path> out;  // overrides the config's "outputs"
  int workers = 0;                           // 0: STA_OPEN_WORKERS, then hardware threads
};

/// Requested count if positive, else STA_OPEN_WORKERS, else the hardware
/// concurrency (at least 1).
int resolve_workers(int requested);

struct RunOutcome {
  int exit_code = kExitOk;
  std::string status;  // ok | threshold_failure | numerical_abort
  std::string reason;  // machine-readable, empty on success
  std::string message;
  nlohmann::json manifest;
  std::vector<nlohmann::json> summaries;
};

/// Runs one validated config and writes its CSVs and manifest.json into
/// `dir`. Never throws for numerical failures; they become exit code 3
/// with the reason recorded in the manifest.
RunOutcome run_config(const RunConfig& config, const std::filesystem::path& dir, bool strict);

int cmd_run(const std::filesystem::path& config_path, const GlobalOptions& opts, std::ostream& log);

/// Comma-separated numbers. Throws ConfigError.
std::vector<double> parse_values(const std::string& list);

/// One run per value in <out>/<axis>_<index>/, aggregated in <out>/sweep.csv.
/// Returns 0 when every run succeeded, otherwise the largest run exit code.
int cmd_sweep(const std::filesystem::path& config_path, const std::string& axis, const std::string& values,
              const GlobalOptions& opts, std::ostream& log);

}  // namespace sta::app

#endif  // STA_APP_COMMANDS_HPP
