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

// Two-level strokes with H0 = (Delta sigma_z + Omega sigma_x) / 2 and the
// thermal trajectory rho = sum_a lambda_a |a_t><a_t|.
//
// Labels: "+" is the branch weighted e^{+beta R/2}/Z (R = sqrt(Delta^2 +
// Omega^2)), i.e. the ground state of H0,
//   |+_t> = sin(theta/2)|0> - cos(theta/2)|1>,
//   |-_t> = cos(theta/2)|0> + sin(theta/2)|1>,   theta = atan2(Omega, Delta).
// Trajectory column 0 is "+", column 1 is "-".

#ifndef STA_MODELS_TLS_HPP
#define STA_MODELS_TLS_HPP

#include "sta/cd_engine.hpp"

namespace sta::tls {

enum class StrokeKind { Isothermal, IsochoreHeatCool, General };

struct Stroke {
  Schedule delta;
  Schedule omega;
  Schedule beta;
  StrokeKind kind = StrokeKind::General;
};

/// Checks the stroke invariants (isothermal: constant beta; isochore:
/// constant Delta and Omega). Throws InvalidArgument.
void validate(const Stroke& stroke);

struct Hamiltonians {
  cmat h0;
  cmat h1;
};

/// H0 and the closed-form counterdiabatic term
///   H1 = (dOmega Delta - dDelta Omega) / (2 (Delta^2 + Omega^2)) sigma_y.
/// Throws GapClosure if Delta^2 + Omega^2 < tol.gap_closure.
Hamiltonians hamiltonians(const Stroke& stroke, double t, const Tolerances& tol = default_tolerances());

/// (gamma_{+-}, gamma_{-+}) for L_{+-} = |+><-| and L_{-+} = |-><+|.
struct Rates {
  double plus_minus = 0.0;
  double minus_plus = 0.0;
};

/// Fixed beta, driven Delta and Omega.
Rates isothermal_rates(double beta, double gap, double gap_dot);
/// Fixed H0, driven beta.
Rates isochore_rates(double gap, double beta, double beta_dot);
/// Everything driven.
Rates general_rates(double delta, double omega, double beta, double delta_dot, double omega_dot,
                    double beta_dot);

/// Dispatches on the stroke kind.
Rates rates(const Stroke& stroke, double t, const Tolerances& tol = default_tolerances());

/// Gamma = gamma_{-+} |+><+| + gamma_{+-} |-><-|; `basis` holds |+>, |-> as
/// columns.
cmat gamma_from_rates(const Rates& r, const cmat& basis);

/// Populations (lambda_+, lambda_-) at beta R.
rvec populations(double beta_gap);

SpectralFrame frame(const Stroke& stroke, double t, const Tolerances& tol = default_tolerances());

/// Closed-form trajectory with H0 as reference Hamiltonian.
SpectralTrajectory trajectory(const Stroke& stroke, const TimeGrid& grid, TrajectoryOptions options = {});

/// Canonical strokes: Delta from d0 to df (polynomial5) at fixed Omega and beta.
Stroke isothermal_stroke(double beta, double omega, double delta0, double deltaf, double tf);
/// Fixed Delta and Omega, beta from b0 to bf (polynomial5).
Stroke isochore_stroke(double delta, double omega, double beta0, double betaf, double tf);
Stroke general_stroke(double delta0, double deltaf, double omega0, double omegaf, double beta0,
                      double betaf, double tf);

}  // namespace sta::tls

#endif  // STA_MODELS_TLS_HPP
