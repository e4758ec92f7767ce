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

#include "sta/app/commands.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include "sta/app/output.hpp"
#include "sta/app/scenarios.hpp"

namespace sta::app {

using nlohmann::json;

int resolve_workers(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("STA_OPEN_WORKERS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<int>(std::min(v, 1024L));
  }
  return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

RunOutcome run_config(const RunConfig& cfg, const std::filesystem::path& dir, bool strict) {
  const auto start = std::chrono::steady_clock::now();
  RunOutcome out;
  json manifest{{"tool", "sta-open"}, {"version", STA_OPEN_VERSION}, {"config", cfg.source}};
  try {
    const ScenarioRun result = execute(cfg);
    std::vector<std::string> failures;
    for (const auto& run : result.runs) {
      write_timeseries(dir, run);
      out.summaries.push_back(summary_json(cfg, run));
      for (const auto& f : threshold_failures(cfg, run)) failures.push_back(std::string(to_string(run.kind)) + ": " + f);
    }
    out.status = "ok";
    if (strict && !failures.empty()) {
      out.exit_code = kExitThreshold;
      out.status = "threshold_failure";
      out.reason = "AcceptanceThreshold";
      out.message = failures.front();
    }
  } catch (const ConfigError& e) {
    // Only schedule files can fail this late.
    out.exit_code = kExitValidation;
    out.status = "invalid_config";
    out.reason = std::string(e.reason());
    out.message = e.what();
    return out;
  } catch (const Error& e) {
    out.exit_code = kExitNumerical;
    out.status = "numerical_abort";
    out.reason = std::string(e.reason());
    out.message = e.what();
  } catch (const std::exception& e) {
    out.exit_code = kExitNumerical;
    out.status = "numerical_abort";
    out.reason = "InternalError";
    out.message = e.what();
  }
  manifest["status"] = out.status;
  manifest["exit_code"] = out.exit_code;
  manifest["reason"] = out.reason.empty() ? json(nullptr) : json(out.reason);
  manifest["message"] = out.message;
  manifest["strict"] = strict;
  manifest["generators"] = out.summaries;
  manifest["wall_clock_seconds"] =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  out.manifest = manifest;
  write_file_atomic(dir / "manifest.json", manifest.dump(2) + "\n");
  return out;
}

int cmd_run(const std::filesystem::path& config_path, const GlobalOptions& opts, std::ostream& log) {
  RunConfig cfg;
  try {
    cfg = load_config(config_path);
  } catch (const ConfigError& e) {
    log << "config error: " << e.what() << "\n";
    return kExitValidation;
  }
  const std::filesystem::path dir = opts.out ? *opts.out : cfg.outputs;
  const RunOutcome r = run_config(cfg, dir, opts.strict);
  if (r.exit_code == kExitOk) {
    log << "wrote " << r.summaries.size() << " time series to " << dir.string() << "\n";
  } else {
    log << r.status << " (" << r.reason << "): " << r.message << "\n";
  }
  return r.exit_code;
}

std::vector<double> parse_values(const std::string& list) {
  std::vector<double> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    if (b == std::string::npos) throw ConfigError("empty entry in --values");
    item = item.substr(b, e - b + 1);
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      throw ConfigError("not a number in --values: '" + item + "'");
    }
    if (used != item.size() || !std::isfinite(v)) throw ConfigError("not a number in --values: '" + item + "'");
    out.push_back(v);
  }
  if (out.empty()) throw ConfigError("--values is empty");
  return out;
}

namespace {

struct SweepSlot {
  double value = 0.0;
  RunOutcome outcome;
};

std::string field(const json& s, const char* key) {
  if (!s.contains(key) || s[key].is_null()) return "nan";
  return format_number(s[key].get<double>());
}

}  // namespace

int cmd_sweep(const std::filesystem::path& config_path, const std::string& axis, const std::string& values,
              const GlobalOptions& opts, std::ostream& log) {
  RunConfig base;
  std::vector<double> vals;
  try {
    base = load_config(config_path);
    if (!has_axis(base, axis)) throw ConfigError("axis '" + axis + "' is not a parameter of " + std::string(to_string(base.scenario)));
    vals = parse_values(values);
  } catch (const ConfigError& e) {
    log << "config error: " << e.what() << "\n";
    return kExitValidation;
  }
  const std::filesystem::path root = opts.out ? *opts.out : base.outputs;
  std::vector<SweepSlot> slots(vals.size());
  std::atomic<std::size_t> next{0};
  std::mutex log_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < vals.size(); i = next++) {
      SweepSlot& slot = slots[i];
      slot.value = vals[i];
      const std::filesystem::path dir = root / (axis + "_" + std::to_string(i));
      try {
        RunConfig cfg = with_axis(base, axis, vals[i]);
        cfg.outputs = dir;
        slot.outcome = run_config(cfg, dir, opts.strict);
      } catch (const ConfigError& e) {
        slot.outcome.exit_code = kExitValidation;
        slot.outcome.status = "invalid_config";
        slot.outcome.reason = std::string(e.reason());
        slot.outcome.message = e.what();
      } catch (const std::exception& e) {
        slot.outcome.exit_code = kExitNumerical;
        slot.outcome.status = "numerical_abort";
        slot.outcome.reason = "InternalError";
        slot.outcome.message = e.what();
      }
      std::lock_guard<std::mutex> lock(log_mutex);
      log << axis << "=" << format_number(vals[i]) << ": " << slot.outcome.status
          << (slot.outcome.message.empty() ? "" : " (" + slot.outcome.message + ")") << "\n";
    }
  };
  const int n = std::min<int>(resolve_workers(opts.workers), static_cast<int>(vals.size()));
  {
    std::vector<std::jthread> pool;
    for (int w = 0; w < n; ++w) pool.emplace_back(worker);
  }

  std::string csv = "value,generator,status,final_fidelity,tau_min_fisher,tau_min_trace,min_omega_cd2\n";
  int code = kExitOk;
  for (const auto& slot : slots) {
    code = std::max(code, slot.outcome.exit_code);
    if (slot.outcome.summaries.empty()) {
      csv += format_number(slot.value) + ",," + slot.outcome.status + ",nan,nan,nan,nan\n";
      continue;
    }
    for (const auto& s : slot.outcome.summaries) {
      const json& q = s["qsl"];
      csv += format_number(slot.value) + "," + s["generator"].get<std::string>() + "," + slot.outcome.status + "," +
             field(s, "final_fidelity") + "," + field(q, "tau_min_fisher") + "," + field(q, "tau_min_trace") + "," +
             field(s, "min_omega_cd2") + "\n";
    }
  }
  write_file_atomic(root / "sweep.csv", csv);
  log << "sweep of " << vals.size() << " runs written to " << (root / "sweep.csv").string() << "\n";
  return code;
}

}  // namespace sta::app
