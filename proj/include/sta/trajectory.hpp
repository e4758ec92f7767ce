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

// Prescribed mixed-state trajectories rho(t) = sum_n lambda_n(t) |n_t><n_t|.
//
// A trajectory wraps a provider that returns an instantaneous spectral frame
// (eigenvalues and eigenvectors) at any time. Eigenvector phases and the
// column order are fixed by marching along a time grid: every node is matched
// against the previous one by maximal overlap, and each column is rotated so
// the overlap is real and non-negative. Off-grid evaluations are matched
// against the nearest node, derivative stencils against the centre frame.

#ifndef STA_TRAJECTORY_HPP
#define STA_TRAJECTORY_HPP

#include <cstdint>
#include <functional>
#include <vector>

#include "sta/dm_core.hpp"
#include "sta/schedule.hpp"
#include "sta/time_grid.hpp"

namespace sta {

struct SpectralFrame {
  rvec values;   // lambda_n(t)
  cmat vectors;  // |n_t> as columns
};

/// Frame plus first time derivatives of eigenvalues and eigenvectors.
struct SpectralJet {
  SpectralFrame frame;
  rvec values_dot;
  cmat vectors_dot;
};

using FrameProvider = std::function<SpectralFrame(double)>;
using HamiltonianFn = std::function<cmat(double)>;

struct TrajectoryOptions {
  double fd_step = 0.0;            // 0 selects 1e-5 * duration
  bool trace_preserving = true;
  bool richardson_check = true;
  Tolerances tol{};
};

class SpectralTrajectory {
 public:
  /// `reference` is an optional Hamiltonian whose eigenbasis the trajectory
  /// shares; when present it enters H_CD and the dynamical phases.
  SpectralTrajectory(FrameProvider provider, TimeGrid grid, TrajectoryOptions options = {},
                     HamiltonianFn reference = {});

  Eigen::Index dim() const { return dim_; }
  Eigen::Index rank() const { return static_cast<Eigen::Index>(support_.size()); }
  /// Indices n with lambda_n(t0) > rank tolerance; the rate constructions
  /// run over these only.
  const std::vector<int>& support() const { return support_; }
  /// Indices excluded from the support (flagged, lambda_n ~ 0).
  const std::vector<int>& null_space() const { return null_; }

  const TimeGrid& grid() const { return grid_; }
  double fd_step() const { return fd_step_; }
  bool trace_preserving() const { return options_.trace_preserving; }
  const Tolerances& tolerances() const { return options_.tol; }

  bool has_reference_hamiltonian() const { return static_cast<bool>(reference_); }
  cmat reference_hamiltonian(double t) const;

  /// Gauge-fixed frame at t.
  SpectralFrame frame(double t) const;
  const cmat& node_basis(int i) const { return node_bases_.at(static_cast<std::size_t>(i)); }

  SpectralJet jet(double t) const;

 private:
  SpectralFrame matched(double t, const cmat& reference_basis) const;
  void check_time(double t) const;

  FrameProvider provider_;
  TimeGrid grid_;
  TrajectoryOptions options_;
  HamiltonianFn reference_;
  Eigen::Index dim_ = 0;
  double fd_step_ = 0.0;
  std::vector<int> support_;
  std::vector<int> null_;
  std::vector<cmat> node_bases_;
};

/// Result of matching a basis against a previous one.
struct GaugeMatch {
  cmat vectors;                  // reordered and phase-fixed current basis
  std::vector<int> permutation;  // slot n holds current column permutation[n]
  double min_overlap = 1.0;
};

/// Reorders `current` by maximal overlap with `previous` and multiplies each
/// column by the unit phase that makes <previous_n|current_n> real and >= 0.
/// Throws AmbiguousMatching if a best overlap is below `min_overlap` or two
/// slots claim the same column.
GaugeMatch match_basis(const cmat& previous, const cmat& current, double min_overlap = 0.5);

/// Gauge-fixed basis only.
cmat gauge_fix(const cmat& previous, const cmat& current);

State eval_state(const SpectralTrajectory& traj, double t);
SpectralJet eval_derivatives(const SpectralTrajectory& traj, double t);

// ---------------------------------------------------------------------------
// Thermal trajectories

struct ThermalSpec {
  HamiltonianFn hamiltonian;  // H0(t), Hermitian
  Schedule beta;              // inverse temperature, > 0
};

/// Gibbs weights e^{-beta E_n} / Z on the eigenbasis of H0(t), ascending
/// energy order. Throws DegenerateSpectrum if an instantaneous gap falls
/// below tol.gap times the spectral range.
SpectralTrajectory thermal_trajectory(const ThermalSpec& spec, const TimeGrid& grid,
                                      TrajectoryOptions options = {});

/// Gibbs weights for a real energy vector, stable for large beta.
rvec gibbs_weights(const rvec& energies, double beta);

/// Seeded smooth trajectory for property tests: `rank` positive
/// oscillating eigenvalues normalized to one (remaining ones zero) on a
/// basis rotating as exp(-iKt) V0 with random Hermitian K.
SpectralTrajectory random_trajectory(Eigen::Index dim, Eigen::Index rank, std::uint64_t seed,
                                     const TimeGrid& grid, TrajectoryOptions options = {});

}  // namespace sta

#endif  // STA_TRAJECTORY_HPP
