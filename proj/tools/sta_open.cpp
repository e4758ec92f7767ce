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

// sta-open run <config> | verify [--level fast|full] | sweep <config> --axis <name> --values <list>

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "sta/app/commands.hpp"
#include "sta/app/verify.hpp"

int main(int argc, char** argv) {
  using namespace sta::app;
  CLI::App app{"Shortcut-to-equilibration scenario runner", "sta-open"};
  app.set_version_flag("--version", STA_OPEN_VERSION);
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions opts;
  std::string out;
  app.add_flag("--strict", opts.strict, "Exit 4 when a run misses its acceptance thresholds");
  app.add_option("--out", out, "Output directory (overrides the config)");
  app.add_option("--workers", opts.workers, "Worker threads for sweeps (default: STA_OPEN_WORKERS or all cores)")
      ->check(CLI::NonNegativeNumber);

  std::string config;
  auto* run = app.add_subcommand("run", "Run one scenario config");
  run->add_option("config", config, "JSON config")->required();

  std::string level = "fast";
  auto* verify = app.add_subcommand("verify", "Run the invariant suite");
  verify->add_option("--level", level, "fast or full")->check(CLI::IsMember({"fast", "full"}));

  std::string axis, values;
  auto* sweep = app.add_subcommand("sweep", "Run a config over a list of values of one parameter");
  sweep->add_option("config", config, "JSON config")->required();
  sweep->add_option("--axis", axis, "Parameter to vary (a scenario parameter, tf or steps)")->required();
  sweep->add_option("--values", values, "Comma-separated values")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitValidation;
  }
  if (!out.empty()) opts.out = out;

  try {
    if (*run) return cmd_run(config, opts, std::cerr);
    if (*verify) return cmd_verify(*parse_level(level), std::cout);
    if (*sweep) return cmd_sweep(config, axis, values, opts, std::cerr);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
  return kExitValidation;
}
