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

// Two-level atom in a bosonic bath. H_S = (omega0/2) sigma_z, so |0> is the
// excited and |1> the ground level; L_10 = sigma_- = |1><0| and
// L_01 = sigma_+ = |0><1|.

#ifndef STA_MODELS_ATOM_HPP
#define STA_MODELS_ATOM_HPP

#include <optional>

#include "sta/cd_engine.hpp"

namespace sta::atom {

struct Spec {
  double omega0 = 2.0;
  double beta_s = 0.1;  // initial inverse temperature of the atom
  double beta_b = 0.01; // bath
  double gamma = 0.0;   // coupling strength
  std::optional<Schedule> target;  // modified inverse temperature for the shortcut
};

/// omega0 > 0, betas > 0, gamma >= 0. Throws InvalidArgument.
void validate(const Spec& spec);

cmat hamiltonian(double omega0);
cmat thermal_state(double omega0, double beta);
/// beta = ln(rho_11 / rho_00) / omega0.
double beta_from_state(double omega0, const cmat& rho);
double mean_boson_number(double omega0, double beta);

struct Rates {
  double r01 = 0.0;  // sigma_+
  double r10 = 0.0;  // sigma_-
};

/// gamma_10 = gamma (n + 1), gamma_01 = gamma n at the bath temperature.
Rates markov_rates(const Spec& spec);

/// Closed-form beta_S(t) of the Markov evolution from a thermal state.
double beta_of_t(const Spec& spec, double t);

/// gamma_01 = -(omega0/4) dbeta e^{-beta omega0},
/// gamma_10 = +(omega0/4) dbeta e^{+beta omega0} on the target schedule.
/// Throws MissingTarget without one.
Rates sta_rates(const Spec& spec, double t);

/// Rates dlambda_m / (2 lambda_n) of the thermal trajectory on `beta`.
Rates trajectory_rates(double omega0, const Schedule& beta, double t);

/// H_S with the two jumps {sigma_+, sigma_-} at the given rates.
ControlSet controls(double omega0, const Rates& rates, double t);

/// polynomial5 from beta_s to beta_b over [0, tf].
Schedule default_target(const Spec& spec, double tf);

/// Thermal trajectory of H_S at inverse temperature beta(t); columns |0>, |1>.
SpectralTrajectory trajectory(double omega0, const Schedule& beta, const TimeGrid& grid,
                              TrajectoryOptions options = {});

}  // namespace sta::atom

#endif  // STA_MODELS_ATOM_HPP
