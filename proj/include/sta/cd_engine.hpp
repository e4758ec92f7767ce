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

// Counterdiabatic control terms for a prescribed trajectory.
//
// For rho(t) = sum_n lambda_n |n_t><n_t| the motion splits into
//   - parallel transport of the eigenbasis, generated by
//       H1 = i sum_n (|d n><n| - <n|d n> |n><n|),
//   - eigenvalue flow sum_n dlambda_n |n><n|, written either as gain and loss
//       -{Gamma, rho},  Gamma = -1/2 sum_n (dlambda_n / lambda_n) |n><n|,
//     or, for trace-preserving flows, as a Lindblad-like dissipator with
//       L_mn = |m><n|,  gamma_mn = dlambda_m / (r lambda_n).
// All terms at a given time come from one SpectralJet so the gain/loss and
// Lindblad forms share the same eigenvalue rates.

#ifndef STA_CD_ENGINE_HPP
#define STA_CD_ENGINE_HPP

#include <optional>
#include <span>
#include <vector>

#include "sta/trajectory.hpp"

namespace sta {

/// gamma * (L rho L^dagger - 1/2 {L^dagger L, rho}). Indices are -1 for
/// operators that are not instantaneous-basis jumps.
struct LindbladTerm {
  int m = -1;
  int n = -1;
  cmat op;
  double rate = 0.0;
};

struct ControlSet {
  double t = 0.0;
  cmat h_cd;      // H0 + H1 (H0 is zero when the trajectory carries no reference)
  cmat h_aux;     // H1 alone
  cmat gamma;     // gain/loss operator
  std::vector<LindbladTerm> lindblads;
  Eigen::Index rank = 0;

  Eigen::Index dim() const { return h_cd.rows(); }
};

/// H1 from a jet (all d eigenvectors contribute).
cmat cd_hamiltonian(const SpectralJet& jet);
cmat cd_hamiltonian(const SpectralTrajectory& traj, double t);

/// H0 = sum_n E_n |n><n| with E_n = -log(Z0 lambda_n) / beta. Without an
/// explicit Z0 the one making H0 traceless is used. Throws
/// InvalidProbability if any lambda_n <= 0.
cmat reference_hamiltonian(const SpectralTrajectory& traj, double t, double beta,
                           std::optional<double> partition = std::nullopt);

/// Gamma = -1/2 sum_{n in support} (dlambda_n / lambda_n) |n><n|.
cmat gain_loss_operator(const SpectralTrajectory& traj, double t);

/// H_CD and Gamma without the Lindblad set; valid for non-trace-preserving
/// trajectories.
ControlSet gain_loss_controls(const SpectralTrajectory& traj, double t);

/// Full control set including the r^2 jumps L_mn = |m><n|. Throws
/// NotTracePreserving if |sum_n dlambda_n| exceeds tol.trace_preserving.
ControlSet lindblad_set(const SpectralTrajectory& traj, double t);

/// Rate rule for a single jump, shared by every construction.
double jump_rate(double lambda_dot_m, double lambda_m, double lambda_n, Eigen::Index rank);

cmat apply_dissipator(std::span<const LindbladTerm> terms, const cmat& rho);
inline cmat apply_dissipator(const ControlSet& set, const cmat& rho) {
  return apply_dissipator(std::span<const LindbladTerm>(set.lindblads), rho);
}

/// Eigenvalue flow written as sum_n dlambda_n |n><n| (what both the
/// gain/loss and dissipator terms must reproduce on trajectory).
cmat eigenvalue_flow(const SpectralJet& jet);

/// Co-moving frame U_CD(t, 0) = sum_n e^{i phi_n(t)} |n_t><n_0| on a grid.
struct ComovingFrame {
  std::vector<double> times;
  std::vector<cmat> unitaries;
  Eigen::MatrixXd phases;  // nodes x d

  /// U^dagger op U at node i.
  cmat to_comoving(const cmat& op, int node) const {
    const auto& u = unitaries.at(static_cast<std::size_t>(node));
    return u.adjoint() * op * u;
  }
};

/// Phases accumulate the geometric part i<n|dn> and, when the trajectory
/// carries a reference Hamiltonian and `dynamical` is set, -E_n.
ComovingFrame comoving_transform(const SpectralTrajectory& traj, const TimeGrid& grid,
                                 bool dynamical = true);

}  // namespace sta

#endif  // STA_CD_ENGINE_HPP
