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

#ifndef STA_PROPAGATOR_HPP
#define STA_PROPAGATOR_HPP

#include <Eigen/SparseCore>

#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sta/cd_engine.hpp"

namespace sta {

enum class GeneratorKind {
  GainLoss,           // -i[H_CD, rho] - {Gamma, rho}
  BalancedNonlinear,  // GainLoss + 2 Tr[Gamma rho] rho
  LindbladLike,       // -i[H_CD, rho] + sum gamma_mn D[L_mn](rho)
  MarkovLindblad,     // same form, fixed operators and rates
  OscillatorDephasing // -i[H/hbar, rho] - gamma [x, [x, rho]]
};

std::string_view to_string(GeneratorKind kind);
std::optional<GeneratorKind> parse_generator(std::string_view name);

using SparseOperator = Eigen::SparseMatrix<cplx>;

/// Oscillator controls in a fixed Fock basis.
struct DephasingControls {
  double t = 0.0;
  SparseOperator hamiltonian;  // p^2/2m + m w_cd^2 x^2 / 2, divided by hbar
  SparseOperator position;
  double strength = 0.0;       // gamma_t
};

cmat rhs(GeneratorKind kind, const ControlSet& controls, const cmat& rho);
cmat rhs(const DephasingControls& controls, const cmat& rho);

struct NodeDiagnostics {
  double t = 0.0;
  double trace = 0.0;
  double hermiticity_defect = 0.0;
  double min_eigenvalue = 0.0;
  double fidelity_to_target = std::numeric_limits<double>::quiet_NaN();  // NaN where not evaluated
};

struct PropagationRecord {
  TimeGrid grid;
  GeneratorKind kind;
  std::vector<cmat> states;
  std::vector<NodeDiagnostics> diagnostics;
  bool positivity_breach = false;
  std::vector<std::string> warnings;

  double final_fidelity() const;
  double min_eigenvalue() const;
  double max_hermiticity_defect() const;
  /// max_k |Tr rho_k - expected(t_k)|; expected defaults to 1.
  double max_trace_defect(const std::function<double(double)>& expected = {}) const;
};

using RhsFn = std::function<cmat(double, const cmat&)>;
using TargetFn = std::function<cmat(double)>;
using ControlFn = std::function<ControlSet(double)>;

struct IntegrateOptions {
  Tolerances tol{};
  /// Fidelity to the target is evaluated every `target_stride` nodes and at
  /// the last node.
  int target_stride = 1;
};

/// Classical fixed-step RK4. The state is never symmetrized; Hermiticity is
/// only monitored.
PropagationRecord integrate_rhs(GeneratorKind kind, const RhsFn& f, const TimeGrid& grid,
                                const cmat& rho0, const TargetFn& target = {},
                                const IntegrateOptions& options = {});

PropagationRecord integrate(GeneratorKind kind, const ControlFn& controls, const TimeGrid& grid,
                            const cmat& rho0, const TargetFn& target = {},
                            const IntegrateOptions& options = {});

/// Controls built from the trajectory at every stage time; the prescribed
/// state is the fidelity target. MarkovLindblad and OscillatorDephasing need
/// explicit controls and are rejected here.
PropagationRecord integrate(GeneratorKind kind, const SpectralTrajectory& traj, const TimeGrid& grid,
                            const cmat& rho0, const IntegrateOptions& options = {});

/// Max over nodes of the Bures distance between the (trace-normalized)
/// propagated state and the prescribed one. Record and trajectory must share
/// the grid.
double track_error(const PropagationRecord& record, const SpectralTrajectory& traj);

}  // namespace sta

#endif  // STA_PROPAGATOR_HPP
