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

#include "sta/app/verify.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <ostream>
#include <random>
#include <sstream>

#include "sta/app/output.hpp"
#include "sta/app/scenarios.hpp"
#include "sta/models/atom.hpp"
#include "sta/models/oscillator.hpp"
#include "sta/models/tls.hpp"
#include "sta/qsl.hpp"

namespace sta::app {

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

// Same ensemble for the identity checks: d in {2,3,4}, 2 <= r <= d.
template <class F>
double over_random_ensemble(int count, F&& per_point) {
  double worst = 0.0;
  for (int s = 0; s < count; ++s) {
    const Eigen::Index d = 2 + s % 3;
    const Eigen::Index r = 2 + (s / 3) % (d - 1);
    const TimeGrid grid(0.0, 1.0, 20);
    const auto traj = random_trajectory(d, r, 1000 + static_cast<std::uint64_t>(s), grid);
    for (double t : {0.15, 0.5, 0.85}) worst = std::max(worst, per_point(traj, t));
  }
  return worst;
}

Outcome tls_tracking() {
  const TimeGrid grid(0.0, 1.0, 2000);
  const auto traj = tls::trajectory(tls::isothermal_stroke(1.0, 1.0, 1.0, -1.0, 1.0), grid);
  const cmat rho0 = eval_state(traj, 0.0).matrix;
  double worst = 0.0, trace = 0.0;
  for (GeneratorKind k : {GeneratorKind::LindbladLike, GeneratorKind::BalancedNonlinear, GeneratorKind::GainLoss}) {
    const auto rec = integrate(k, traj, grid, rho0);
    worst = std::max(worst, track_error(rec, traj));
    if (k == GeneratorKind::GainLoss) trace = rec.max_trace_defect();
  }
  return {worst <= 1e-5 && trace <= 1e-5, "max Bures " + sci(worst) + ", GainLoss trace defect " + sci(trace)};
}

Outcome dissipator_flow() {
  const double worst = over_random_ensemble(100, [](const SpectralTrajectory& traj, double t) {
    const ControlSet set = lindblad_set(traj, t);
    const cmat rho = eval_state(traj, t).matrix;
    const cmat diff = apply_dissipator(set, rho) - eigenvalue_flow(traj.jet(t));
    return diff.cwiseAbs().maxCoeff();
  });
  return {worst <= 1e-8, "max elementwise deviation " + sci(worst)};
}

Outcome generator_equivalence() {
  const double worst = over_random_ensemble(100, [](const SpectralTrajectory& traj, double t) {
    const ControlSet set = lindblad_set(traj, t);
    const cmat rho = eval_state(traj, t).matrix;
    const cmat a = rhs(GeneratorKind::GainLoss, set, rho);
    const cmat b = rhs(GeneratorKind::LindbladLike, set, rho);
    const cmat c = rhs(GeneratorKind::BalancedNonlinear, set, rho);
    return std::max((a - b).cwiseAbs().maxCoeff(), (c - b).cwiseAbs().maxCoeff());
  });
  return {worst <= 1e-8, "max elementwise deviation " + sci(worst)};
}

Outcome tls_rate_structure() {
  const tls::Stroke iso = tls::isothermal_stroke(1.0, 1.0, 1.0, -1.0, 1.0);
  // polynomial5 from 1 to -1 crosses zero at t = tf / 2.
  const tls::Rates at = tls::rates(iso, 0.5);
  double crossing = std::max(std::abs(at.plus_minus), std::abs(at.minus_plus));
  bool opposite = true;
  const TimeGrid g(0.0, 1.0, 200);
  for (int k = 1; k < g.steps(); ++k) {
    if (k == 100) continue;
    const tls::Rates r = tls::rates(iso, g.node(k));
    opposite = opposite && r.plus_minus * r.minus_plus < 0.0;
  }
  const tls::Stroke cool = tls::isochore_stroke(1.0, 1.0, 1.0, 2.0, 1.0);
  const tls::Stroke heat = tls::isochore_stroke(1.0, 1.0, 2.0, 1.0, 1.0);
  double mirror = 0.0;
  for (int k = 0; k <= g.steps(); ++k) {
    const double t = g.node(k);
    const tls::Rates c = tls::rates(cool, t);
    const tls::Rates h = tls::rates(heat, 1.0 - t);
    mirror = std::max({mirror, std::abs(c.plus_minus + h.plus_minus), std::abs(c.minus_plus + h.minus_plus)});
  }
  return {crossing <= 1e-8 && opposite && mirror <= 1e-8,
          "crossing " + sci(crossing) + ", mirror " + sci(mirror) + (opposite ? "" : ", sign pattern broken")};
}

Outcome atom_oracles() {
  atom::Spec s;
  s.omega0 = 2.0;
  s.beta_s = 0.1;
  s.beta_b = 0.01;
  s.gamma = 0.005;
  const double tf = 5.0;
  const TimeGrid grid(0.0, tf, 1000);
  const ControlSet set = atom::controls(s.omega0, atom::markov_rates(s), 0.0);
  const auto rec = integrate(GeneratorKind::MarkovLindblad, [&](double) { return set; }, grid,
                             atom::thermal_state(s.omega0, s.beta_s));
  double worst = 0.0;
  for (int k = 0; k <= grid.steps(); k += 10) {
    worst = std::max(worst, std::abs(atom::beta_from_state(s.omega0, rec.states[static_cast<std::size_t>(k)]) -
                                     atom::beta_of_t(s, grid.node(k))));
  }
  s.target = atom::default_target(s, tf);
  const auto sta = integrate(GeneratorKind::MarkovLindblad,
                             [&](double t) { return atom::controls(s.omega0, atom::sta_rates(s, t), t); }, grid,
                             atom::thermal_state(s.omega0, s.beta_s));
  const double f = diagnostic_fidelity(sta.states.back(), atom::thermal_state(s.omega0, s.beta_b));
  return {worst <= 1e-6 && f >= 1.0 - 1e-6, "beta deviation " + sci(worst) + ", shortcut infidelity " + sci(1.0 - f)};
}

Outcome oscillator_identities() {
  const TimeGrid grid(0.0, 2.0, 400);
  double worst = 0.0, bracket = 0.0;
  for (const auto& spec : {osc::stroke(1.0, 2.0, 1.0, 0.1, 2.0), osc::stroke(1.0, 0.5, 1.0, 10.0, 2.0)}) {
    const auto ev = osc::gaussian_evolve(spec, grid, 1.0);
    worst = std::max({worst, ev.max_omega_error, ev.max_gamma_error});
    for (int k = 1; k < grid.steps(); ++k) {
      const auto c = osc::controls(spec, grid.node(k));
      bracket = std::max(bracket, std::abs(c.omega_cd2 - c.omega_cd2_expanded) / (1.0 + std::abs(c.omega_cd2)));
    }
  }
  return {worst <= 1e-6 && bracket <= 1e-6, "Gaussian identities " + sci(worst) + ", frequency forms " + sci(bracket)};
}

Outcome trap_inversion() {
  const auto spec = osc::stroke(1.0, 0.5, 1.0, 10.0, 2.0);
  const TimeGrid grid(0.0, 2.0, 400);
  double lowest = 1e300;
  for (int k = 1; k < grid.steps(); ++k) lowest = std::min(lowest, osc::controls(spec, grid.node(k)).omega_cd2);
  return {lowest < 0.0, "min omega_cd^2 = " + sci(lowest)};
}

Outcome speed_limits() {
  double worst_excess = -1e300, worst_ratio = 0.0;
  auto fold = [&](const QslReport& q, double tf) {
    worst_excess = std::max(worst_excess, q.max_triangle_excess);
    worst_ratio = std::max({worst_ratio, q.tau_min_fisher / tf, q.tau_min_trace / tf});
  };
  auto tls_case = [&](const tls::Stroke& st) {
    const TimeGrid grid(0.0, 1.0, 1000);
    const auto traj = tls::trajectory(st, grid);
    for (GeneratorKind k : {GeneratorKind::LindbladLike, GeneratorKind::BalancedNonlinear}) {
      const auto rec = integrate(k, traj, grid, eval_state(traj, 0.0).matrix);
      std::vector<QslNode> nodes;
      for (int i = 0; i < grid.nodes(); ++i) {
        const double t = grid.node(i);
        const ControlSet set = k == GeneratorKind::LindbladLike ? lindblad_set(traj, t) : gain_loss_controls(traj, t);
        nodes.push_back(qsl_node(k, set, rec.states[static_cast<std::size_t>(i)]));
      }
      fold(qsl_report(rec, nodes), 1.0);
    }
  };
  tls_case(tls::isothermal_stroke(1.0, 1.0, 1.0, -1.0, 1.0));
  tls_case(tls::isochore_stroke(1.0, 1.0, 1.0, 2.0, 1.0));
  tls_case(tls::isochore_stroke(1.0, 1.0, 2.0, 1.0, 1.0));
  tls_case(tls::general_stroke(1.0, -0.5, 0.5, 1.5, 1.0, 2.0, 1.0));
  return {worst_excess <= 1e-8 && worst_ratio <= 1.0,
          "max tau/tf " + sci(worst_ratio) + ", triangle excess " + sci(worst_excess)};
}

Outcome rk4_order() {
  auto final_state = [](int steps) {
    const TimeGrid grid(0.0, 1.0, steps);
    const auto traj = tls::trajectory(tls::isothermal_stroke(1.0, 1.0, 1.0, -1.0, 1.0), grid);
    return integrate(GeneratorKind::LindbladLike, traj, grid, eval_state(traj, 0.0).matrix).states.back();
  };
  const double e1 = (final_state(20) - final_state(160)).norm();
  const double e2 = (final_state(40) - final_state(320)).norm();
  const double order = std::log2(e1 / e2);
  return {order >= 3.7, "observed order " + sci(order)};
}

Outcome metric_properties() {
  std::mt19937_64 rng(7);
  double worst = 0.0;
  bool ok = true;
  for (int i = 0; i < 50; ++i) {
    const Eigen::Index d = 2 + i % 4;
    const State a{random_state(d, 1 + i % static_cast<int>(d), rng)};
    const State b{random_state(d, d, rng)};
    const State c{random_state(d, d, rng)};
    const double fab = fidelity(a, b), fba = fidelity(b, a);
    worst = std::max({worst, std::abs(fab - fba), std::abs(fidelity(a, a) - 1.0)});
    ok = ok && fab >= 0.0 && fab <= 1.0;
    ok = ok && bures_distance(a, c) <= bures_distance(a, b) + bures_distance(b, c) + 1e-10;
    ok = ok && trace_distance(a.matrix, c.matrix) <= trace_distance(a.matrix, b.matrix) + trace_distance(b.matrix, c.matrix) + 1e-12;
    // Fuchs-van de Graaf.
    const double tdab = trace_distance(a.matrix, b.matrix);
    ok = ok && 1.0 - fab <= tdab + 1e-10 && tdab <= std::sqrt(std::max(0.0, 1.0 - fab * fab)) + 1e-10;
  }
  return {ok && worst <= 1e-8, "symmetry/identity defect " + sci(worst) + (ok ? "" : ", inequality violated")};
}

Outcome determinism() {
  RunConfig cfg = parse_config(nlohmann::json{{"scenario", "tls-isothermal"},
                                              {"parameters", {{"beta", 1.0}, {"omega", 1.0}, {"delta0", 1.0}, {"deltaf", -1.0}}},
                                              {"grid", {{"tf", 1.0}, {"steps", 200}}}});
  const ScenarioRun a = execute(cfg);
  const ScenarioRun b = execute(cfg);
  bool same = a.runs.size() == b.runs.size();
  bool rows = true;
  for (std::size_t i = 0; same && i < a.runs.size(); ++i) {
    const std::string ta = csv_text(a.runs[i].columns);
    same = ta == csv_text(b.runs[i].columns);
    rows = rows && static_cast<int>(std::count(ta.begin(), ta.end(), '\n')) == cfg.steps + 2;
  }
  return {same && rows, std::string(same ? "identical" : "different") + " CSVs, " + (rows ? "steps + 1 rows" : "wrong row count")};
}

Outcome minimum_eigenvalues() {
  double lowest = 1e300;
  for (const auto& st : {tls::isothermal_stroke(1.0, 1.0, 1.0, -1.0, 1.0), tls::isochore_stroke(1.0, 1.0, 1.0, 2.0, 1.0)}) {
    const TimeGrid grid(0.0, 1.0, 1000);
    const auto traj = tls::trajectory(st, grid);
    for (GeneratorKind k : {GeneratorKind::LindbladLike, GeneratorKind::BalancedNonlinear, GeneratorKind::GainLoss}) {
      lowest = std::min(lowest, integrate(k, traj, grid, eval_state(traj, 0.0).matrix).min_eigenvalue());
    }
  }
  return {lowest >= -1e-6, "lowest eigenvalue " + sci(lowest)};
}

Outcome oscillator_fock() {
  const auto spec = osc::stroke(1.0, 2.0, 1.0, 0.1, 2.0, 60);
  const TimeGrid grid(0.0, 2.0, 4000);
  const auto ops = osc::fock_operators(spec);
  cmat rho0 = osc::thermal_fock(1.0, 1.0, ops);
  rho0 /= rho0.trace();
  IntegrateOptions opts;
  opts.target_stride = grid.steps();
  const auto rec = integrate_rhs(
      GeneratorKind::OscillatorDephasing, [&](double t, const cmat& r) { return rhs(osc::fock_controls(spec, ops, t), r); },
      grid, rho0, {}, opts);
  const double f = diagnostic_fidelity(rec.states.back(), osc::thermal_fock(2.0, 0.1, ops));
  const auto ev = osc::gaussian_evolve(spec, grid);
  double worst = 0.0;
  for (int k = 0; k <= grid.steps(); ++k) {
    const double w = ev.states[static_cast<std::size_t>(k)].position_variance();
    worst = std::max(worst, std::abs(osc::position_variance(rec.states[static_cast<std::size_t>(k)], ops) - w) / w);
  }
  return {f >= 0.999 && worst <= 1e-3, "final fidelity " + sci(f) + ", max variance deviation " + sci(worst)};
}

struct Check {
  const char* name;
  bool full_only;
  std::function<Outcome()> run;
};

const std::vector<Check>& checks() {
  static const std::vector<Check> all{
      {"two-level stroke tracking", false, tls_tracking},
      {"dissipator reproduces eigenvalue flow", false, dissipator_flow},
      {"generator forms agree on trajectory", false, generator_equivalence},
      {"two-level rate structure", false, tls_rate_structure},
      {"atom closed form and shortcut", false, atom_oracles},
      {"oscillator Gaussian identities", false, oscillator_identities},
      {"oscillator cooling trap inversion", false, trap_inversion},
      {"speed limits and triangle bound", false, speed_limits},
      {"RK4 convergence order", false, rk4_order},
      {"fidelity and distance properties", false, metric_properties},
      {"minimum eigenvalue on runs", false, minimum_eigenvalues},
      {"deterministic CSV output", false, determinism},
      {"oscillator Fock vs Gaussian", true, oscillator_fock},
  };
  return all;
}

}  // namespace

std::optional<VerifyLevel> parse_level(std::string_view s) {
  if (s == "fast") return VerifyLevel::Fast;
  if (s == "full") return VerifyLevel::Full;
  return std::nullopt;
}

std::vector<CheckResult> run_checks(VerifyLevel level, std::ostream* progress) {
  std::vector<CheckResult> out;
  for (const Check& c : checks()) {
    if (c.full_only && level != VerifyLevel::Full) continue;
    const auto start = std::chrono::steady_clock::now();
    CheckResult r{c.name, false, "", 0.0};
    try {
      const Outcome o = c.run();
      r.pass = o.pass;
      r.detail = o.detail;
    } catch (const std::exception& e) {
      r.detail = std::string("threw: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (progress) *progress << "  ... " << r.name << "\n" << std::flush;
    out.push_back(std::move(r));
  }
  return out;
}

int cmd_verify(VerifyLevel level, std::ostream& out) {
  const auto results = run_checks(level);
  bool all = true;
  for (const auto& r : results) {
    char line[512];
    std::snprintf(line, sizeof line, "%-4s  %-40s %7.2fs  %s\n", r.pass ? "PASS" : "FAIL", r.name.c_str(), r.seconds,
                  r.detail.c_str());
    out << line;
    all = all && r.pass;
  }
  out << (all ? "all checks passed" : "verification FAILED") << "\n";
  return all ? 0 : 1;
}

}  // namespace sta::app
