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

#include "sta/app/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

#include "sta/models/atom.hpp"
#include "sta/models/oscillator.hpp"
#include "sta/models/tls.hpp"

namespace sta::app {

namespace {

using NodeFn = std::function<double(double)>;

Column sample(const std::string& name, const TimeGrid& grid, const NodeFn& f) {
  Column c{name, {}};
  c.values.reserve(static_cast<std::size_t>(grid.nodes()));
  for (int k = 0; k < grid.nodes(); ++k) c.values.push_back(f(grid.node(k)));
  return c;
}

int stride_for(const RunConfig& c, int fallback) { return c.target_stride > 0 ? c.target_stride : fallback; }

// Base columns shared by every run, followed by scenario-specific ones.
GeneratorRun finish(GeneratorKind kind, PropagationRecord rec, const std::vector<QslNode>& nodes,
                    std::vector<Column> extra, const RunConfig& cfg) {
  GeneratorRun run;
  run.kind = kind;
  run.qsl = qsl_report(rec, nodes);
  const auto& d = rec.diagnostics;
  auto diag = [&](const char* name, auto member) {
    Column c{name, {}};
    for (const auto& n : d) c.values.push_back(n.*member);
    run.columns.push_back(std::move(c));
  };
  diag("t", &NodeDiagnostics::t);
  diag("trace", &NodeDiagnostics::trace);
  diag("hermiticity_defect", &NodeDiagnostics::hermiticity_defect);
  diag("min_eigenvalue", &NodeDiagnostics::min_eigenvalue);
  diag("fidelity", &NodeDiagnostics::fidelity_to_target);
  run.columns.push_back({"fisher_speed", run.qsl->fisher_speed});
  run.columns.push_back({"trace_speed", run.qsl->trace_speed});
  run.columns.push_back({"triangle_bound", run.qsl->triangle_bound});
  for (auto& c : extra) run.columns.push_back(std::move(c));
  run.final_fidelity = rec.final_fidelity();
  run.max_trace_defect = rec.max_trace_defect();
  run.min_eigenvalue = rec.min_eigenvalue();
  run.min_fidelity_threshold = cfg.thresholds.min_fidelity.value_or(default_min_fidelity(cfg.scenario));
  run.record = std::move(rec);
  return run;
}

GeneratorRun trajectory_run(GeneratorKind kind, const SpectralTrajectory& traj, const RunConfig& cfg,
                            std::vector<Column> extra) {
  const TimeGrid& grid = traj.grid();
  IntegrateOptions opts;
  opts.target_stride = stride_for(cfg, 1);
  PropagationRecord rec = integrate(kind, traj, grid, eval_state(traj, grid.t0()).matrix, opts);
  std::vector<QslNode> nodes;
  nodes.reserve(rec.states.size());
  for (int k = 0; k < grid.nodes(); ++k) {
    const double t = grid.node(k);
    const ControlSet set = kind == GeneratorKind::LindbladLike ? lindblad_set(traj, t) : gain_loss_controls(traj, t);
    nodes.push_back(qsl_node(kind, set, rec.states[static_cast<std::size_t>(k)]));
  }
  return finish(kind, std::move(rec), nodes, std::move(extra), cfg);
}

// -- two-level strokes --------------------------------------------------------

Schedule schedule_from(const ScheduleSource& s, double tf) {
  switch (s.kind) {
    case ScheduleSource::Kind::Constant: return Schedule::constant(s.from);
    case ScheduleSource::Kind::Ramp: return Schedule::polynomial5(s.from, s.to, tf);
    case ScheduleSource::Kind::File: break;
  }
  try {
    return Schedule::from_csv(s.file);
  } catch (const Error& e) {
    throw ConfigError(std::string("schedule file ") + s.file.string() + ": " + e.what());
  }
}

tls::Stroke tls_stroke(const RunConfig& c) {
  switch (c.scenario) {
    case Scenario::TlsIsothermal:
      return tls::isothermal_stroke(c.param("beta"), c.param("omega"), c.param("delta0"), c.param("deltaf"), c.tf);
    case Scenario::TlsOttoCool:
    case Scenario::TlsOttoHeat:
      return tls::isochore_stroke(c.param("delta"), c.param("omega"), c.param("beta0"), c.param("betaf"), c.tf);
    case Scenario::TlsGeneral:
      return tls::general_stroke(c.param("delta0"), c.param("deltaf"), c.param("omega0"), c.param("omegaf"),
                                 c.param("beta0"), c.param("betaf"), c.tf);
    default: break;
  }
  return {schedule_from(c.schedules.at("delta"), c.tf), schedule_from(c.schedules.at("omega"), c.tf),
          schedule_from(c.schedules.at("beta"), c.tf), tls::StrokeKind::General};
}

std::vector<Column> tls_columns(const tls::Stroke& s, const TimeGrid& g) {
  std::vector<Column> cols;
  cols.push_back(sample("delta", g, [&](double t) { return s.delta(t); }));
  cols.push_back(sample("omega", g, [&](double t) { return s.omega(t); }));
  cols.push_back(sample("beta", g, [&](double t) { return s.beta(t); }));
  cols.push_back(sample("lambda_plus", g, [&](double t) {
    return tls::populations(s.beta(t) * std::hypot(s.delta(t), s.omega(t)))(0);
  }));
  cols.push_back(sample("gamma_plus_minus", g, [&](double t) { return tls::rates(s, t).plus_minus; }));
  cols.push_back(sample("gamma_minus_plus", g, [&](double t) { return tls::rates(s, t).minus_plus; }));
  return cols;
}

ScenarioRun run_tls(const RunConfig& cfg) {
  const TimeGrid grid(0.0, cfg.tf, cfg.steps);
  const tls::Stroke stroke = tls_stroke(cfg);
  const SpectralTrajectory traj = tls::trajectory(stroke, grid);
  ScenarioRun out;
  for (GeneratorKind kind : cfg.generators) {
    out.runs.push_back(trajectory_run(kind, traj, cfg, tls_columns(stroke, grid)));
  }
  return out;
}

ScenarioRun run_random(const RunConfig& cfg) {
  const TimeGrid grid(0.0, cfg.tf, cfg.steps);
  const auto dim = static_cast<Eigen::Index>(cfg.param("dim"));
  const auto rank = static_cast<Eigen::Index>(cfg.param("rank"));
  const SpectralTrajectory traj = random_trajectory(dim, rank, cfg.seed, grid);
  std::vector<Column> lambdas;
  for (Eigen::Index n = 0; n < dim; ++n) {
    lambdas.push_back(sample("lambda_" + std::to_string(n), grid, [&](double t) { return traj.frame(t).values(n); }));
  }
  ScenarioRun out;
  for (GeneratorKind kind : cfg.generators) out.runs.push_back(trajectory_run(kind, traj, cfg, lambdas));
  return out;
}

// -- atom ---------------------------------------------------------------------

atom::Spec atom_spec(const RunConfig& c) {
  atom::Spec s;
  s.omega0 = c.param("omega0");
  s.beta_s = c.param("beta_s");
  s.beta_b = c.param("beta_b");
  if (c.parameters.count("gamma")) s.gamma = c.param("gamma");
  atom::validate(s);
  return s;
}

Column beta_state_column(const PropagationRecord& rec, double omega0) {
  Column c{"beta_state", {}};
  for (const cmat& rho : rec.states) c.values.push_back(atom::beta_from_state(omega0, rho));
  return c;
}

ScenarioRun run_atom_markov(const RunConfig& cfg) {
  const atom::Spec spec = atom_spec(cfg);
  const TimeGrid grid(0.0, cfg.tf, cfg.steps);
  const atom::Rates r = atom::markov_rates(spec);
  const ControlSet set = atom::controls(spec.omega0, r, 0.0);
  IntegrateOptions opts;
  opts.target_stride = stride_for(cfg, 1);
  PropagationRecord rec = integrate(
      GeneratorKind::MarkovLindblad, [&](double t) { ControlSet s = set; s.t = t; return s; }, grid,
      atom::thermal_state(spec.omega0, spec.beta_s),
      [&](double t) { return atom::thermal_state(spec.omega0, atom::beta_of_t(spec, t)); }, opts);
  std::vector<QslNode> nodes;
  for (const cmat& rho : rec.states) nodes.push_back(qsl_node(GeneratorKind::MarkovLindblad, set, rho));
  std::vector<Column> cols;
  cols.push_back(sample("beta_closed_form", grid, [&](double t) { return atom::beta_of_t(spec, t); }));
  cols.push_back(sample("gamma_01", grid, [&](double) { return r.r01; }));
  cols.push_back(sample("gamma_10", grid, [&](double) { return r.r10; }));
  cols.push_back(beta_state_column(rec, spec.omega0));
  ScenarioRun out;
  out.runs.push_back(finish(GeneratorKind::MarkovLindblad, std::move(rec), nodes, std::move(cols), cfg));
  return out;
}

ScenarioRun run_atom_sta(const RunConfig& cfg) {
  atom::Spec spec = atom_spec(cfg);
  spec.target = atom::default_target(spec, cfg.tf);
  const TimeGrid grid(0.0, cfg.tf, cfg.steps);
  const SpectralTrajectory traj = atom::trajectory(spec.omega0, *spec.target, grid);
  std::vector<Column> cols;
  cols.push_back(sample("beta_target", grid, [&](double t) { return spec.target->value(t); }));
  cols.push_back(sample("gamma_01", grid, [&](double t) { return atom::sta_rates(spec, t).r01; }));
  cols.push_back(sample("gamma_10", grid, [&](double t) { return atom::sta_rates(spec, t).r10; }));

  ScenarioRun out;
  for (GeneratorKind kind : cfg.generators) {
    if (kind != GeneratorKind::MarkovLindblad) {
      GeneratorRun run = trajectory_run(kind, traj, cfg, cols);
      run.columns.push_back(beta_state_column(*run.record, spec.omega0));
      out.runs.push_back(std::move(run));
      continue;
    }
    // Printed shortcut rates with fixed sigma_+/- jumps.
    auto controls = [&](double t) { return atom::controls(spec.omega0, atom::sta_rates(spec, t), t); };
    IntegrateOptions opts;
    opts.target_stride = stride_for(cfg, 1);
    PropagationRecord rec = integrate(kind, controls, grid, atom::thermal_state(spec.omega0, spec.beta_s),
                                      [&](double t) { return eval_state(traj, t).matrix; }, opts);
    std::vector<QslNode> nodes;
    for (int k = 0; k < grid.nodes(); ++k) {
      nodes.push_back(qsl_node(kind, controls(grid.node(k)), rec.states[static_cast<std::size_t>(k)]));
    }
    std::vector<Column> extra = cols;
    extra.push_back(beta_state_column(rec, spec.omega0));
    out.runs.push_back(finish(kind, std::move(rec), nodes, std::move(extra), cfg));
  }
  return out;
}

// -- oscillator ---------------------------------------------------------------

std::vector<Column> oscillator_columns(const osc::Spec& spec, const std::vector<osc::Controls>& cs,
                                       const osc::GaussianEvolution& gauss) {
  const double w0 = spec.omega.value(0.0);
  auto from_controls = [&](const char* name, auto f) {
    Column c{name, {}};
    for (const auto& x : cs) c.values.push_back(f(x));
    return c;
  };
  std::vector<Column> cols;
  cols.push_back(from_controls("omega", [](const osc::Controls& c) { return c.omega; }));
  cols.push_back(from_controls("beta", [](const osc::Controls& c) { return c.beta; }));
  cols.push_back(from_controls("alpha", [](const osc::Controls& c) { return c.alpha; }));
  cols.push_back(from_controls("big_omega", [](const osc::Controls& c) { return c.big_omega; }));
  cols.push_back(from_controls("omega_cd2_over_omega0_sq", [&](const osc::Controls& c) { return c.omega_cd2 / (w0 * w0); }));
  cols.push_back(from_controls("gamma_hbar_over_m_omega0",
                               [&](const osc::Controls& c) { return c.gamma * spec.hbar / (spec.mass * w0); }));
  Column gv{"gaussian_variance", {}};
  for (const auto& g : gauss.states) gv.values.push_back(g.position_variance());
  cols.push_back(std::move(gv));
  return cols;
}

ScenarioRun run_oscillator(const RunConfig& cfg) {
  osc::Spec spec = osc::stroke(cfg.param("omega0"), cfg.param("omegaf"), cfg.param("beta0"), cfg.param("betaf"),
                               cfg.tf, static_cast<int>(cfg.param("truncation")), cfg.param("mass"),
                               cfg.param("hbar"));
  spec.omega_ref = cfg.param("omega_ref");
  osc::validate(spec);
  Tolerances tol = default_tolerances();
  tol.truncation_tail = cfg.param("truncation_tail");
  const bool fock = cfg.param("fock") != 0.0;

  const TimeGrid grid(0.0, cfg.tf, cfg.steps);
  const osc::GaussianEvolution gauss = osc::gaussian_evolve(spec, grid, 1e-6, tol);
  std::vector<osc::Controls> cs;
  for (int k = 0; k < grid.nodes(); ++k) cs.push_back(osc::controls(spec, grid.node(k), tol));
  std::vector<Column> cols = oscillator_columns(spec, cs, gauss);
  const std::vector<osc::Moments> mom = osc::propagate_moments(spec, grid, tol);
  Column mv{"moment_variance", {}};
  for (const auto& m : mom) mv.values.push_back(m.xx);
  cols.push_back(std::move(mv));

  GeneratorRun run;
  if (fock) {
    osc::check_truncation(spec, tol);
    const osc::FockOperators ops = osc::fock_operators(spec);
    cmat rho0 = osc::thermal_fock(spec.omega.value(0.0), spec.beta.value(0.0), ops);
    rho0 /= rho0.trace();
    IntegrateOptions opts;
    opts.tol = tol;
    opts.target_stride = stride_for(cfg, std::max(1, cfg.steps / 20));
    PropagationRecord rec = integrate_rhs(
        GeneratorKind::OscillatorDephasing,
        [&](double t, const cmat& rho) { return rhs(osc::fock_controls(spec, ops, t, tol), rho); }, grid, rho0,
        [&](double t) { return osc::rotated_target(spec, ops, t, tol); }, opts);
    Column fv{"position_variance", {}};
    for (const cmat& rho : rec.states) fv.values.push_back(osc::position_variance(rho, ops));
    cols.push_back(std::move(fv));
    const std::vector<QslNode> nodes = osc::qsl_nodes(spec, ops, rec, tol);
    run = finish(GeneratorKind::OscillatorDephasing, std::move(rec), nodes, std::move(cols), cfg);
  } else {
    // Moment representation: fidelity to the target Gaussian at every node.
    run.kind = GeneratorKind::OscillatorDephasing;
    Column t{"t", {}}, fid{"fidelity", {}}, margin{"uncertainty_margin", {}};
    run.min_uncertainty_margin = std::numeric_limits<double>::infinity();
    for (const auto& m : mom) {
      t.values.push_back(m.t);
      fid.values.push_back(osc::gaussian_fidelity(m, osc::target_moments(spec, m.t, tol), spec.hbar));
      margin.values.push_back(m.uncertainty_margin(spec.hbar));
      run.min_uncertainty_margin = std::min(run.min_uncertainty_margin, margin.values.back());
    }
    run.final_fidelity = fid.values.back();
    run.columns.push_back(std::move(t));
    run.columns.push_back(std::move(fid));
    run.columns.push_back(std::move(margin));
    for (auto& c : cols) run.columns.push_back(std::move(c));
    run.min_fidelity_threshold = cfg.thresholds.min_fidelity.value_or(default_min_fidelity(cfg.scenario));
  }
  run.min_omega_cd2 = std::numeric_limits<double>::infinity();
  for (const auto& c : cs) run.min_omega_cd2 = std::min(run.min_omega_cd2, c.omega_cd2);
  ScenarioRun out;
  out.runs.push_back(std::move(run));
  return out;
}

}  // namespace

double default_min_fidelity(Scenario s) {
  return s == Scenario::OscHeat || s == Scenario::OscCool ? 0.999 : 1.0 - 1e-6;
}

ScenarioRun execute(const RunConfig& cfg) {
  switch (cfg.scenario) {
    case Scenario::TlsIsothermal:
    case Scenario::TlsOttoCool:
    case Scenario::TlsOttoHeat:
    case Scenario::TlsGeneral: return run_tls(cfg);
    case Scenario::AtomMarkov: return run_atom_markov(cfg);
    case Scenario::AtomSta: return run_atom_sta(cfg);
    case Scenario::OscHeat:
    case Scenario::OscCool: return run_oscillator(cfg);
    case Scenario::CustomTrajectory: return cfg.schedules.empty() ? run_random(cfg) : run_tls(cfg);
  }
  throw ConfigError("unhandled scenario");
}

std::vector<std::string> threshold_failures(const RunConfig& cfg, const GeneratorRun& run) {
  std::vector<std::string> out;
  if (!(run.final_fidelity >= run.min_fidelity_threshold)) {
    out.push_back("final fidelity " + std::to_string(run.final_fidelity) + " below " +
                  std::to_string(run.min_fidelity_threshold));
  }
  if (run.record && !(run.min_eigenvalue >= cfg.thresholds.min_eigenvalue)) {
    out.push_back("min eigenvalue " + std::to_string(run.min_eigenvalue));
  }
  if (!run.record && !(run.min_uncertainty_margin >= 0.0)) {
    out.push_back("uncertainty relation violated by " + std::to_string(run.min_uncertainty_margin));
  }
  if (run.qsl) {
    if (!(run.qsl->tau_min_fisher <= cfg.tf)) out.push_back("Fisher speed limit exceeds tf");
    if (!(run.qsl->tau_min_trace <= cfg.tf)) out.push_back("trace speed limit exceeds tf");
  }
  return out;
}

}  // namespace sta::app
