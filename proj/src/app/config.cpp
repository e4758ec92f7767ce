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

#include "sta/app/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>

namespace sta::app {

namespace {

using nlohmann::json;

enum class Range { Any, Positive, NonNegative, Truncation, Dimension, Flag };

struct Rule {
  const char* name;
  Range range;
  std::optional<double> fallback;  // unset: required
};

const std::vector<Rule>& rules(Scenario s) {
  static const std::vector<Rule> isothermal{
      {"beta", Range::Positive, {}}, {"omega", Range::Any, {}},
      {"delta0", Range::Any, {}},    {"deltaf", Range::Any, {}}};
  static const std::vector<Rule> otto{
      {"delta", Range::Any, {}}, {"omega", Range::Any, {}},
      {"beta0", Range::Positive, {}}, {"betaf", Range::Positive, {}}};
  static const std::vector<Rule> general{
      {"delta0", Range::Any, {}},    {"deltaf", Range::Any, {}},      {"omega0", Range::Any, {}},
      {"omegaf", Range::Any, {}},    {"beta0", Range::Positive, {}}, {"betaf", Range::Positive, {}}};
  static const std::vector<Rule> markov{
      {"omega0", Range::Positive, {}}, {"beta_s", Range::Positive, {}},
      {"beta_b", Range::Positive, {}}, {"gamma", Range::NonNegative, {}}};
  static const std::vector<Rule> sta{
      {"omega0", Range::Positive, {}}, {"beta_s", Range::Positive, {}}, {"beta_b", Range::Positive, {}}};
  // fock = 1 propagates the truncated Fock matrix, 0 the second moments.
  // Cooling strokes default to moments: gamma < 0 makes the Fock run blow up.
  static const std::vector<Rule> osc_heat{
      {"omega0", Range::Positive, {}},     {"omegaf", Range::Positive, {}},
      {"beta0", Range::Positive, {}},      {"betaf", Range::Positive, {}},
      {"truncation", Range::Truncation, 60.0}, {"mass", Range::Positive, 1.0},
      {"hbar", Range::Positive, 1.0},      {"omega_ref", Range::NonNegative, 0.0},
      {"truncation_tail", Range::Positive, 1e-8}, {"fock", Range::Flag, 1.0}};
  static const std::vector<Rule> osc_cool = [] {
    auto r = osc_heat;
    r.back().fallback = 0.0;
    return r;
  }();
  static const std::vector<Rule> custom_random{
      {"dim", Range::Dimension, {}}, {"rank", Range::Dimension, {}}};
  switch (s) {
    case Scenario::TlsIsothermal: return isothermal;
    case Scenario::TlsOttoCool:
    case Scenario::TlsOttoHeat: return otto;
    case Scenario::TlsGeneral: return general;
    case Scenario::AtomMarkov: return markov;
    case Scenario::AtomSta: return sta;
    case Scenario::OscHeat: return osc_heat;
    case Scenario::OscCool: return osc_cool;
    case Scenario::CustomTrajectory: return custom_random;
  }
  return isothermal;
}

bool is_integer(double v) { return std::isfinite(v) && v == std::floor(v); }

void check_range(const Rule& r, double v) {
  const std::string name = r.name;
  if (!std::isfinite(v)) throw ConfigError("parameter '" + name + "' must be finite");
  switch (r.range) {
    case Range::Any: break;
    case Range::Positive:
      if (!(v > 0.0)) throw ConfigError("parameter '" + name + "' must be > 0");
      break;
    case Range::NonNegative:
      if (!(v >= 0.0)) throw ConfigError("parameter '" + name + "' must be >= 0");
      break;
    case Range::Truncation:
      if (!is_integer(v) || v < 2 || v > 400) throw ConfigError("parameter '" + name + "' must be an integer in [2, 400]");
      break;
    case Range::Flag:
      if (v != 0.0 && v != 1.0) throw ConfigError("parameter '" + name + "' must be 0 or 1");
      break;
    case Range::Dimension:
      if (!is_integer(v) || v < 1 || v > 64) throw ConfigError("parameter '" + name + "' must be an integer in [1, 64]");
      break;
  }
}

void reject_unknown(const json& obj, std::initializer_list<const char*> known, const std::string& where) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (std::none_of(known.begin(), known.end(), [&](const char* k) { return it.key() == k; })) {
      throw ConfigError("unknown key '" + it.key() + "' in " + where);
    }
  }
}

double number(const json& v, const std::string& what) {
  if (!v.is_number()) throw ConfigError(what + " must be a number");
  return v.get<double>();
}

ScheduleSource parse_schedule(const json& v, const std::string& name, const std::filesystem::path& base) {
  ScheduleSource s;
  if (v.is_number()) {
    s.kind = ScheduleSource::Kind::Constant;
    s.from = s.to = v.get<double>();
  } else if (v.is_string()) {
    s.kind = ScheduleSource::Kind::File;
    s.file = v.get<std::string>();
    if (s.file.is_relative() && !base.empty()) s.file = base / s.file;
  } else if (v.is_object()) {
    reject_unknown(v, {"from", "to"}, "schedules." + name);
    if (!v.contains("from") || !v.contains("to")) throw ConfigError("schedules." + name + " needs 'from' and 'to'");
    s.kind = ScheduleSource::Kind::Ramp;
    s.from = number(v["from"], "schedules." + name + ".from");
    s.to = number(v["to"], "schedules." + name + ".to");
  } else {
    throw ConfigError("schedules." + name + " must be a number, a {from, to} ramp or a CSV path");
  }
  return s;
}

json schedule_json(const ScheduleSource& s) {
  switch (s.kind) {
    case ScheduleSource::Kind::Constant: return s.from;
    case ScheduleSource::Kind::Ramp: return json{{"from", s.from}, {"to", s.to}};
    case ScheduleSource::Kind::File: return s.file.generic_string();
  }
  return nullptr;
}

}  // namespace

std::string_view to_string(Scenario s) {
  switch (s) {
    case Scenario::TlsIsothermal: return "tls-isothermal";
    case Scenario::TlsOttoCool: return "tls-otto-cool";
    case Scenario::TlsOttoHeat: return "tls-otto-heat";
    case Scenario::TlsGeneral: return "tls-general";
    case Scenario::AtomMarkov: return "atom-markov";
    case Scenario::AtomSta: return "atom-sta";
    case Scenario::OscHeat: return "osc-heat";
    case Scenario::OscCool: return "osc-cool";
    case Scenario::CustomTrajectory: return "custom-trajectory";
  }
  return "unknown";
}

const std::vector<Scenario>& all_scenarios() {
  static const std::vector<Scenario> all{Scenario::TlsIsothermal, Scenario::TlsOttoCool, Scenario::TlsOttoHeat,
                                         Scenario::TlsGeneral,    Scenario::AtomMarkov,  Scenario::AtomSta,
                                         Scenario::OscHeat,       Scenario::OscCool,     Scenario::CustomTrajectory};
  return all;
}

std::optional<Scenario> parse_scenario(std::string_view name) {
  for (Scenario s : all_scenarios()) {
    if (to_string(s) == name) return s;
  }
  return std::nullopt;
}

std::vector<GeneratorKind> allowed_generators(Scenario s) {
  using G = GeneratorKind;
  switch (s) {
    case Scenario::AtomMarkov: return {G::MarkovLindblad};
    case Scenario::AtomSta: return {G::GainLoss, G::BalancedNonlinear, G::LindbladLike, G::MarkovLindblad};
    case Scenario::OscHeat:
    case Scenario::OscCool: return {G::OscillatorDephasing};
    default: return {G::GainLoss, G::BalancedNonlinear, G::LindbladLike};
  }
}

std::vector<GeneratorKind> default_generators(Scenario s) {
  if (s == Scenario::AtomSta) return {GeneratorKind::LindbladLike, GeneratorKind::MarkovLindblad};
  return allowed_generators(s);
}

double RunConfig::param(const std::string& name) const {
  auto it = parameters.find(name);
  if (it == parameters.end()) throw ConfigError("missing parameter '" + name + "'");
  return it->second;
}

void validate(RunConfig& c) {
  if (!(c.tf > 0.0) || !std::isfinite(c.tf)) throw ConfigError("grid.tf must be > 0");
  if (c.steps < 2 || c.steps > 10000000) throw ConfigError("grid.steps must be in [2, 1e7]");
  if (c.target_stride < 0) throw ConfigError("grid.target_stride must be >= 0");

  const bool custom_schedules = c.scenario == Scenario::CustomTrajectory && !c.schedules.empty();
  if (!c.schedules.empty() && c.scenario != Scenario::CustomTrajectory) {
    throw ConfigError("'schedules' is only valid for custom-trajectory");
  }
  if (custom_schedules) {
    if (!c.parameters.empty()) throw ConfigError("custom-trajectory takes either 'schedules' or 'parameters'");
    for (const char* k : {"delta", "omega", "beta"}) {
      if (!c.schedules.count(k)) throw ConfigError(std::string("schedules.") + k + " is required");
    }
    for (const auto& [k, src] : c.schedules) {
      if (k != "delta" && k != "omega" && k != "beta") throw ConfigError("unknown schedule '" + k + "'");
      if (k == "beta" && src.kind != ScheduleSource::Kind::File && (!(src.from > 0.0) || !(src.to > 0.0))) {
        throw ConfigError("schedules.beta must stay > 0");
      }
      if (src.kind == ScheduleSource::Kind::File && !std::filesystem::exists(src.file)) {
        throw ConfigError("schedule file not found: " + src.file.string());
      }
    }
  } else {
    const auto& rs = rules(c.scenario);
    for (const auto& [k, v] : c.parameters) {
      if (std::none_of(rs.begin(), rs.end(), [&](const Rule& r) { return k == r.name; })) {
        throw ConfigError("unknown parameter '" + k + "' for " + std::string(to_string(c.scenario)));
      }
    }
    for (const Rule& r : rs) {
      auto it = c.parameters.find(r.name);
      if (it == c.parameters.end()) {
        if (!r.fallback) throw ConfigError("missing parameter '" + std::string(r.name) + "'");
        c.parameters[r.name] = *r.fallback;
        continue;
      }
      check_range(r, it->second);
    }
  }

  switch (c.scenario) {
    case Scenario::TlsOttoCool:
      if (!(c.param("betaf") > c.param("beta0"))) throw ConfigError("tls-otto-cool needs betaf > beta0");
      break;
    case Scenario::TlsOttoHeat:
      if (!(c.param("betaf") < c.param("beta0"))) throw ConfigError("tls-otto-heat needs betaf < beta0");
      break;
    case Scenario::OscHeat:
    case Scenario::OscCool: {
      const double x0 = c.param("beta0") * c.param("omega0");
      const double xf = c.param("betaf") * c.param("omegaf");
      if (c.scenario == Scenario::OscHeat && !(xf < x0)) throw ConfigError("osc-heat needs betaf omegaf < beta0 omega0");
      if (c.scenario == Scenario::OscCool && !(xf > x0)) throw ConfigError("osc-cool needs betaf omegaf > beta0 omega0");
      break;
    }
    case Scenario::CustomTrajectory:
      if (!custom_schedules && c.param("rank") > c.param("dim")) throw ConfigError("rank must not exceed dim");
      break;
    default: break;
  }

  const auto allowed = allowed_generators(c.scenario);
  if (c.generators.empty()) c.generators = default_generators(c.scenario);
  std::set<GeneratorKind> seen;
  for (GeneratorKind g : c.generators) {
    if (std::find(allowed.begin(), allowed.end(), g) == allowed.end()) {
      throw ConfigError("generator " + std::string(to_string(g)) + " is not available for " +
                        std::string(to_string(c.scenario)));
    }
    if (!seen.insert(g).second) throw ConfigError("generator " + std::string(to_string(g)) + " listed twice");
  }
  if (c.thresholds.min_fidelity && !(*c.thresholds.min_fidelity >= 0.0 && *c.thresholds.min_fidelity <= 1.0)) {
    throw ConfigError("thresholds.min_fidelity must lie in [0, 1]");
  }
  if (!std::isfinite(c.thresholds.min_eigenvalue)) throw ConfigError("thresholds.min_eigenvalue must be finite");
}

RunConfig parse_config(const json& doc, const std::filesystem::path& base_dir) {
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");
  reject_unknown(doc, {"scenario", "parameters", "schedules", "grid", "generators", "outputs", "seed", "thresholds"},
                 "config");
  RunConfig c;
  if (!doc.contains("scenario") || !doc["scenario"].is_string()) throw ConfigError("'scenario' must be a string");
  const auto sc = parse_scenario(doc["scenario"].get<std::string>());
  if (!sc) throw ConfigError("unknown scenario '" + doc["scenario"].get<std::string>() + "'");
  c.scenario = *sc;

  if (doc.contains("parameters")) {
    const json& p = doc["parameters"];
    if (!p.is_object()) throw ConfigError("'parameters' must be an object");
    for (auto it = p.begin(); it != p.end(); ++it) c.parameters[it.key()] = number(it.value(), "parameters." + it.key());
  }
  if (doc.contains("schedules")) {
    const json& s = doc["schedules"];
    if (!s.is_object()) throw ConfigError("'schedules' must be an object");
    for (auto it = s.begin(); it != s.end(); ++it) c.schedules[it.key()] = parse_schedule(it.value(), it.key(), base_dir);
  }

  if (!doc.contains("grid") || !doc["grid"].is_object()) throw ConfigError("'grid' must be an object");
  const json& g = doc["grid"];
  reject_unknown(g, {"tf", "steps", "target_stride"}, "grid");
  if (!g.contains("tf") || !g.contains("steps")) throw ConfigError("grid needs 'tf' and 'steps'");
  c.tf = number(g["tf"], "grid.tf");
  if (!g["steps"].is_number_integer()) throw ConfigError("grid.steps must be an integer");
  c.steps = g["steps"].get<int>();
  if (g.contains("target_stride")) {
    if (!g["target_stride"].is_number_integer()) throw ConfigError("grid.target_stride must be an integer");
    c.target_stride = g["target_stride"].get<int>();
  }

  if (doc.contains("generators")) {
    const json& gs = doc["generators"];
    if (!gs.is_array()) throw ConfigError("'generators' must be an array");
    for (const json& v : gs) {
      if (!v.is_string()) throw ConfigError("generator names must be strings");
      const auto kind = parse_generator(v.get<std::string>());
      if (!kind) throw ConfigError("unknown generator '" + v.get<std::string>() + "'");
      c.generators.push_back(*kind);
    }
    if (c.generators.empty()) throw ConfigError("'generators' must not be empty");
  }
  if (doc.contains("outputs")) {
    if (!doc["outputs"].is_string()) throw ConfigError("'outputs' must be a path string");
    c.outputs = doc["outputs"].get<std::string>();
  }
  if (doc.contains("seed")) {
    if (!doc["seed"].is_number_unsigned() && !(doc["seed"].is_number_integer() && doc["seed"].get<long long>() >= 0)) {
      throw ConfigError("'seed' must be a non-negative integer");
    }
    c.seed = doc["seed"].get<std::uint64_t>();
  }
  if (doc.contains("thresholds")) {
    const json& t = doc["thresholds"];
    if (!t.is_object()) throw ConfigError("'thresholds' must be an object");
    reject_unknown(t, {"min_fidelity", "min_eigenvalue"}, "thresholds");
    if (t.contains("min_fidelity")) c.thresholds.min_fidelity = number(t["min_fidelity"], "thresholds.min_fidelity");
    if (t.contains("min_eigenvalue")) c.thresholds.min_eigenvalue = number(t["min_eigenvalue"], "thresholds.min_eigenvalue");
  }
  validate(c);
  c.source = doc;
  return c;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  return parse_config(doc, path.parent_path());
}

json RunConfig::to_json() const {
  json doc;
  doc["scenario"] = std::string(to_string(scenario));
  if (!parameters.empty()) doc["parameters"] = parameters;
  if (!schedules.empty()) {
    json s = json::object();
    for (const auto& [k, v] : schedules) s[k] = schedule_json(v);
    doc["schedules"] = s;
  }
  doc["grid"] = {{"tf", tf}, {"steps", steps}};
  if (target_stride > 0) doc["grid"]["target_stride"] = target_stride;
  json gs = json::array();
  for (GeneratorKind g : generators) gs.push_back(std::string(to_string(g)));
  doc["generators"] = gs;
  doc["outputs"] = outputs.generic_string();
  doc["seed"] = seed;
  json th{{"min_eigenvalue", thresholds.min_eigenvalue}};
  if (thresholds.min_fidelity) th["min_fidelity"] = *thresholds.min_fidelity;
  doc["thresholds"] = th;
  return doc;
}

bool has_axis(const RunConfig& c, const std::string& axis) {
  return axis == "tf" || axis == "steps" || c.parameters.count(axis) > 0;
}

RunConfig with_axis(const RunConfig& c, const std::string& axis, double value) {
  if (!has_axis(c, axis)) throw ConfigError("unknown sweep axis '" + axis + "'");
  RunConfig out = c;
  if (axis == "tf") {
    out.tf = value;
  } else if (axis == "steps") {
    if (!is_integer(value)) throw ConfigError("steps must be an integer");
    out.steps = static_cast<int>(value);
  } else {
    out.parameters[axis] = value;
    const auto& rs = rules(c.scenario);
    for (const Rule& r : rs) {
      if (axis == r.name) check_range(r, value);
    }
  }
  validate(out);
  out.source = out.to_json();
  return out;
}

}  // namespace sta::app
