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

#include "sta/cd_engine.hpp"

#include <cmath>
#include <string>

namespace sta {

namespace {

void require_support(const SpectralTrajectory& traj, const rvec& lambda, double t) {
  for (int n : traj.support()) {
    if (!(lambda(n) > traj.tolerances().rank)) {
      throw Error(ErrorCode::VanishingEigenvalue,
                  "lambda_" + std::to_string(n) + " = " + std::to_string(lambda(n)) +
                      " at t=" + std::to_string(t));
    }
  }
}

cmat gamma_from_jet(const SpectralTrajectory& traj, const SpectralJet& jet, double t) {
  require_support(traj, jet.frame.values, t);
  const Eigen::Index d = traj.dim();
  cvec diag = cvec::Zero(d);
  for (int n : traj.support()) diag(n) = -0.5 * jet.values_dot(n) / jet.frame.values(n);
  const cmat& v = jet.frame.vectors;
  cmat g = v * diag.asDiagonal() * v.adjoint();
  return 0.5 * (g + g.adjoint());
}

ControlSet controls_from_jet(const SpectralTrajectory& traj, const SpectralJet& jet, double t) {
  ControlSet set;
  set.t = t;
  set.h_aux = cd_hamiltonian(jet);
  set.h_cd = set.h_aux;
  if (traj.has_reference_hamiltonian()) set.h_cd += traj.reference_hamiltonian(t);
  set.gamma = gamma_from_jet(traj, jet, t);
  set.rank = traj.rank();
  return set;
}

}  // namespace

cmat cd_hamiltonian(const SpectralJet& jet) {
  const cmat& v = jet.frame.vectors;
  const cmat& dv = jet.vectors_dot;
  // <n|dn> on the diagonal of V^dagger dV.
  const cvec connection = (v.adjoint() * dv).diagonal();
  cmat x = cplx(0.0, 1.0) * (dv * v.adjoint() - v * connection.asDiagonal() * v.adjoint());
  return 0.5 * (x + x.adjoint());
}

cmat cd_hamiltonian(const SpectralTrajectory& traj, double t) { return cd_hamiltonian(traj.jet(t)); }

cmat reference_hamiltonian(const SpectralTrajectory& traj, double t, double beta,
                           std::optional<double> partition) {
  if (!(beta > 0.0)) throw Error(ErrorCode::InvalidArgument, "beta must be positive");
  const auto f = traj.frame(t);
  if (f.values.minCoeff() <= 0.0) {
    throw Error(ErrorCode::InvalidProbability, "reference Hamiltonian needs lambda_n > 0");
  }
  const rvec logs = f.values.array().log().matrix();
  const double log_z = partition ? std::log(*partition) : -logs.mean();
  const rvec energies = -(logs.array() + log_z).matrix() / beta;
  return f.vectors * energies.cast<cplx>().asDiagonal() * f.vectors.adjoint();
}

cmat gain_loss_operator(const SpectralTrajectory& traj, double t) {
  return gamma_from_jet(traj, traj.jet(t), t);
}

ControlSet gain_loss_controls(const SpectralTrajectory& traj, double t) {
  return controls_from_jet(traj, traj.jet(t), t);
}

double jump_rate(double lambda_dot_m, [[maybe_unused]] double lambda_m, [[maybe_unused]] double lambda_n,
                 Eigen::Index rank) {
#ifdef STA_OPEN_MUTATE_RATES
  // Deliberately wrong denominator; builds the mutant used to check that the
  // verification suite catches a broken dissipator.
  return lambda_dot_m / (static_cast<double>(rank) * lambda_m);
#else
  return lambda_dot_m / (static_cast<double>(rank) * lambda_n);
#endif
}

ControlSet lindblad_set(const SpectralTrajectory& traj, double t) {
  const SpectralJet jet = traj.jet(t);
  double flow = 0.0;
  for (int n : traj.support()) flow += jet.values_dot(n);
  if (std::abs(flow) > traj.tolerances().trace_preserving) {
    throw Error(ErrorCode::NotTracePreserving,
                "sum of eigenvalue rates " + std::to_string(flow) + " at t=" + std::to_string(t));
  }
  ControlSet set = controls_from_jet(traj, jet, t);
  const cmat& v = jet.frame.vectors;
  const rvec& lambda = jet.frame.values;
  const auto r = traj.rank();
  set.lindblads.reserve(static_cast<std::size_t>(r * r));
  for (int m : traj.support()) {
    for (int n : traj.support()) {
      LindbladTerm term;
      term.m = m;
      term.n = n;
      term.op = v.col(m) * v.col(n).adjoint();
      term.rate = jump_rate(jet.values_dot(m), lambda(m), lambda(n), r);
      set.lindblads.push_back(std::move(term));
    }
  }
  return set;
}

cmat apply_dissipator(std::span<const LindbladTerm> terms, const cmat& rho) {
  cmat out = cmat::Zero(rho.rows(), rho.cols());
  for (const auto& term : terms) {
    if (term.op.rows() != rho.rows() || term.op.cols() != rho.cols()) {
      throw Error(ErrorCode::ShapeMismatch, "Lindblad operator does not match the state");
    }
    if (term.rate == 0.0) continue;
    const cmat ldl = term.op.adjoint() * term.op;
    out.noalias() += term.rate * (term.op * rho * term.op.adjoint());
    out.noalias() -= (0.5 * term.rate) * (ldl * rho + rho * ldl);
  }
  return out;
}

cmat eigenvalue_flow(const SpectralJet& jet) {
  const cmat& v = jet.frame.vectors;
  return v * jet.values_dot.cast<cplx>().asDiagonal() * v.adjoint();
}

ComovingFrame comoving_transform(const SpectralTrajectory& traj, const TimeGrid& grid,
                                 bool dynamical) {
  const Eigen::Index d = traj.dim();
  const bool with_energy = dynamical && traj.has_reference_hamiltonian();
  ComovingFrame out;
  out.times.reserve(static_cast<std::size_t>(grid.nodes()));
  out.unitaries.reserve(static_cast<std::size_t>(grid.nodes()));
  out.phases = Eigen::MatrixXd::Zero(grid.nodes(), d);

  auto phase_rate = [&](const SpectralJet& jet, double t) {
    const cmat& v = jet.frame.vectors;
    // i <n|dn> is real for unit vectors.
    rvec rate = (cplx(0.0, 1.0) * (v.adjoint() * jet.vectors_dot).diagonal()).real();
    if (with_energy) {
      const cmat h0 = traj.reference_hamiltonian(t);
      rate -= (v.adjoint() * h0 * v).diagonal().real();
    }
    return rate;
  };

  SpectralJet jet = traj.jet(grid.node(0));
  const cmat v0 = jet.frame.vectors;
  rvec rate = phase_rate(jet, grid.node(0));
  rvec phi = rvec::Zero(d);
  for (int k = 0; k < grid.nodes(); ++k) {
    const double t = grid.node(k);
    if (k > 0) {
      jet = traj.jet(t);
      const rvec next = phase_rate(jet, t);
      phi += 0.5 * (grid.node(k) - grid.node(k - 1)) * (rate + next);
      rate = next;
    }
    cvec ph(d);
    for (Eigen::Index n = 0; n < d; ++n) ph(n) = std::exp(cplx(0.0, phi(n)));
    out.times.push_back(t);
    out.unitaries.push_back(jet.frame.vectors * ph.asDiagonal() * v0.adjoint());
    out.phases.row(k) = phi.transpose();
  }
  return out;
}

}  // namespace sta
