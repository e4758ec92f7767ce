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

// CSV and manifest writers. Numbers use %.17g in the C locale, rows end in
// LF, and every file is written to a temporary sibling and then renamed.

#ifndef STA_APP_OUTPUT_HPP
#define STA_APP_OUTPUT_HPP

#include <filesystem>
#include <string>
#include <vector>

#include "sta/app/scenarios.hpp"

namespace sta::app {

std::string format_number(double v);

/// Header line plus one row per node. All columns must have equal length.
std::string csv_text(const std::vector<Column>& columns);

void write_file_atomic(const std::filesystem::path& path, const std::string& content);

std::string timeseries_name(GeneratorKind kind);
void write_timeseries(const std::filesystem::path& dir, const GeneratorRun& run);

nlohmann::json qsl_json(const QslReport& q);
nlohmann::json summary_json(const RunConfig& config, const GeneratorRun& run);

}  // namespace sta::app

#endif  // STA_APP_OUTPUT_HPP
