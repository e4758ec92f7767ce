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

#include "sta/app/output.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <thread>

namespace sta::app {

using nlohmann::json;

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_text(const std::vector<Column>& columns) {
  std::string out;
  if (columns.empty()) return out;
  const std::size_t rows = columns.front().values.size();
  for (std::size_t j = 0; j < columns.size(); ++j) {
    if (columns[j].values.size() != rows) {
      throw std::logic_error("column '" + columns[j].name + "' has " + std::to_string(columns[j].values.size()) +
                             " rows, expected " + std::to_string(rows));
    }
    out += (j ? "," : "") + columns[j].name;
  }
  out += '\n';
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < columns.size(); ++j) {
      if (j) out += ',';
      out += format_number(columns[j].values[i]);
    }
    out += '\n';
  }
  return out;
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  static std::atomic<unsigned> counter{0};
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::filesystem::path tmp = path;
  tmp += ".tmp" + std::to_string(std::hash<std::thread::id>{}(std::this_thread::get_id()) % 100000) + "_" +
         std::to_string(counter++);
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw std::runtime_error("short write to " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

std::string timeseries_name(GeneratorKind kind) { return "timeseries_" + std::string(to_string(kind)) + ".csv"; }

void write_timeseries(const std::filesystem::path& dir, const GeneratorRun& run) {
  write_file_atomic(dir / timeseries_name(run.kind), csv_text(run.columns));
}

namespace {

// JSON has no NaN; unevaluated quantities become null.
json num(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

}  // namespace

json qsl_json(const QslReport& q) {
  return {{"bures_distance_endpoints", num(q.bures_distance_endpoints)},
          {"trace_distance_endpoints", num(q.trace_distance_endpoints)},
          {"fisher_speed_avg", num(q.fisher_speed_avg)},
          {"trace_speed_avg", num(q.trace_speed_avg)},
          {"tau_min_fisher", num(q.tau_min_fisher)},
          {"tau_min_trace", num(q.tau_min_trace)},
          {"actual_duration", num(q.actual_duration)},
          {"max_triangle_excess", num(q.max_triangle_excess)}};
}

json summary_json(const RunConfig& cfg, const GeneratorRun& run) {
  json s{{"generator", std::string(to_string(run.kind))},
         {"csv", timeseries_name(run.kind)},
         {"final_fidelity", num(run.final_fidelity)},
         {"max_trace_defect", num(run.max_trace_defect)},
         {"min_eigenvalue", num(run.min_eigenvalue)},
         {"representation", !run.record                                    ? "moments"
                            : run.kind == GeneratorKind::OscillatorDephasing ? "fock"
                                                                             : "density_matrix"},
         {"qsl", run.qsl ? qsl_json(*run.qsl) : json(nullptr)}};
  if (run.record) {
    s["max_hermiticity_defect"] = num(run.record->max_hermiticity_defect());
    s["positivity_breach"] = run.record->positivity_breach;
    s["warnings"] = run.record->warnings;
  } else {
    s["min_uncertainty_margin"] = num(run.min_uncertainty_margin);
  }
  if (!std::isnan(run.min_omega_cd2)) s["min_omega_cd2"] = num(run.min_omega_cd2);
  const auto failures = threshold_failures(cfg, run);
  s["thresholds_met"] = failures.empty();
  s["threshold_failures"] = failures;
  return s;
}

}  // namespace sta::app
