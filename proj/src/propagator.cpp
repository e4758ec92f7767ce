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

#include "sta/propagator.hpp"

#include <algorithm>
#include <cmath>

namespace sta {

namespace {

constexpr cplx kI(0.0, 1.0);

void require_shape(const cmat& op, const cmat& rho, const char* what) {
  if (op.rows() != rho.rows() || op.cols() != rho.cols()) {
    throw Error(ErrorCode::ShapeMismatch, std::string(what) + " does not match the state");
  }
}

NodeDiagnostics diagnose(double t, const cmat& rho) {
  NodeDiagnostics d;
  d.t = t;
  d.trace = std::real(rho.trace());
  d.hermiticity_defect = hermiticity_defect(rho);
  d.min_eigenvalue = min_eigenvalue(rho) / std::max(std::abs(d.trace), 1e-300);
  return d;
}

}  // namespace

std::string_view to_string(GeneratorKind kind) {
  switch (kind) {
    case GeneratorKind::GainLoss: return "GainLoss";
    case GeneratorKind::BalancedNonlinear: return "BalancedNonlinear";
    case GeneratorKind::LindbladLike: return "LindbladLike";
    case GeneratorKind::MarkovLindblad: return "MarkovLindblad";
    case GeneratorKind::OscillatorDephasing: return "OscillatorDephasing";
  }
  return "Unknown";
}

std::optional<GeneratorKind> parse_generator(std::string_view name) {
  for (auto k : {GeneratorKind::GainLoss, GeneratorKind::BalancedNonlinear, GeneratorKind::LindbladLike,
                 GeneratorKind::MarkovLindblad, GeneratorKind::OscillatorDephasing}) {
    if (to_string(k) == name) return k;
  }
  return std::nullopt;
}

cmat rhs(GeneratorKind kind, const ControlSet& c, const cmat& rho) {
  require_shape(c.h_cd, rho, "H_CD");
  cmat out = -kI * commutator(c.h_cd, rho);
  switch (kind) {
    case GeneratorKind::GainLoss:
    case GeneratorKind::BalancedNonlinear: {
      require_shape(c.gamma, rho, "Gamma");
      out -= anticommutator(c.gamma, rho);
      if (kind == GeneratorKind::BalancedNonlinear) {
        out += (2.0 * (c.gamma * rho).trace()) * rho;
      }
      break;
    }
    case GeneratorKind::LindbladLike:
    case GeneratorKind::MarkovLindblad:
    case GeneratorKind::OscillatorDephasing:
      out += apply_dissipator(c, rho);
      break;
  }
  return out;
}

cmat rhs(const DephasingControls& c, const cmat& rho) {
  if (c.hamiltonian.rows() != rho.rows() || c.position.rows() != rho.rows()) {
    throw Error(ErrorCode::ShapeMismatch, "oscillator operators do not match the state");
  }
  cmat out = -kI * (c.hamiltonian * rho - rho * c.hamiltonian);
  if (c.strength != 0.0) {
    const cmat inner = c.position * rho - rho * c.position;
    out -= c.strength * (c.position * inner - inner * c.position);
  }
  return out;
}

double PropagationRecord::final_fidelity() const {
  for (auto it = diagnostics.rbegin(); it != diagnostics.rend(); ++it) {
    if (!std::isnan(it->fidelity_to_target)) return it->fidelity_to_target;
  }
  return std::numeric_limits<double>::quiet_NaN();
}

double PropagationRecord::min_eigenvalue() const {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& d : diagnostics) m = std::min(m, d.min_eigenvalue);
  return m;
}

double PropagationRecord::max_hermiticity_defect() const {
  double m = 0.0;
  for (const auto& d : diagnostics) m = std::max(m, d.hermiticity_defect);
  return m;
}

double PropagationRecord::max_trace_defect(const std::function<double(double)>& expected) const {
  double m = 0.0;
  for (const auto& d : diagnostics) {
    const double e = expected ? expected(d.t) : 1.0;
    m = std::max(m, std::abs(d.trace - e));
  }
  return m;
}

PropagationRecord integrate_rhs(GeneratorKind kind, const RhsFn& f, const TimeGrid& grid,
                                const cmat& rho0, const TargetFn& target,
                                const IntegrateOptions& options) {
  if (rho0.rows() == 0 || rho0.rows() != rho0.cols() || !rho0.allFinite()) {
    throw Error(ErrorCode::InvalidState, "initial state must be a finite square matrix");
  }
  PropagationRecord rec{grid, kind, {}, {}, false, {}};
  rec.states.reserve(static_cast<std::size_t>(grid.nodes()));
  rec.diagnostics.reserve(static_cast<std::size_t>(grid.nodes()));
  const int stride = std::max(1, options.target_stride);

  auto record = [&](int k, const cmat& rho) {
    const double t = grid.node(k);
    NodeDiagnostics d = diagnose(t, rho);
    if (target && (k % stride == 0 || k == grid.steps())) {
      d.fidelity_to_target = diagnostic_fidelity(rho, target(t));
    }
    if (!std::isfinite(d.trace) || !std::isfinite(d.hermiticity_defect)) {
      throw Error(ErrorCode::InvalidState, "state became non-finite at t=" + std::to_string(t));
    }
    if (d.min_eigenvalue < -options.tol.positivity_breach && !rec.positivity_breach) {
      rec.positivity_breach = true;
      rec.warnings.push_back("PositivityBreach: min eigenvalue " + std::to_string(d.min_eigenvalue) +
                             " at t=" + std::to_string(t));
    }
    rec.states.push_back(rho);
    rec.diagnostics.push_back(d);
  };

  cmat rho = rho0;
  record(0, rho);
  for (int k = 0; k < grid.steps(); ++k) {
    const double t = grid.node(k);
    const double dt = grid.node(k + 1) - t;
    const cmat k1 = f(t, rho);
    const cmat k2 = f(t + 0.5 * dt, rho + (0.5 * dt) * k1);
    const cmat k3 = f(t + 0.5 * dt, rho + (0.5 * dt) * k2);
    const cmat k4 = f(t + dt, rho + dt * k3);
    rho += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    record(k + 1, rho);
  }
  return rec;
}

PropagationRecord integrate(GeneratorKind kind, const ControlFn& controls, const TimeGrid& grid,
                            const cmat& rho0, const TargetFn& target,
                            const IntegrateOptions& options) {
  RhsFn f = [&](double t, const cmat& rho) { return rhs(kind, controls(t), rho); };
  return integrate_rhs(kind, f, grid, rho0, target, options);
}

PropagationRecord integrate(GeneratorKind kind, const SpectralTrajectory& traj, const TimeGrid& grid,
                            const cmat& rho0, const IntegrateOptions& options) {
  ControlFn controls;
  switch (kind) {
    case GeneratorKind::GainLoss:
    case GeneratorKind::BalancedNonlinear:
      controls = [&traj](double t) { return gain_loss_controls(traj, t); };
      break;
    case GeneratorKind::LindbladLike:
      controls = [&traj](double t) { return lindblad_set(traj, t); };
      break;
    case GeneratorKind::MarkovLindblad:
    case GeneratorKind::OscillatorDephasing:
      throw Error(ErrorCode::InvalidArgument,
                  std::string(to_string(kind)) + " needs explicit controls, not a trajectory");
  }
  TargetFn target = [&traj](double t) { return eval_state(traj, t).matrix; };
  return integrate(kind, controls, grid, rho0, target, options);
}

double track_error(const PropagationRecord& record, const SpectralTrajectory& traj) {
  if (!(record.grid == traj.grid()) || record.states.size() != static_cast<std::size_t>(traj.grid().nodes())) {
    throw Error(ErrorCode::GridMismatch, "record and trajectory grids differ");
  }
  double worst = 0.0;
  for (int k = 0; k < record.grid.nodes(); ++k) {
    const double f = diagnostic_fidelity(record.states[static_cast<std::size_t>(k)],
                                         eval_state(traj, record.grid.node(k)).matrix);
    worst = std::max(worst, std::sqrt(std::max(0.0, 2.0 * (1.0 - f))));
  }
  return worst;
}

}  // namespace sta
