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

#include "sta/trajectory.hpp"

#include <cmath>
#include <string>
#include <utility>

namespace sta {

namespace {

// Largest-magnitude entry of every column made real and positive.
cmat canonical_phases(cmat v) {
  for (Eigen::Index j = 0; j < v.cols(); ++j) {
    Eigen::Index imax = 0;
    v.col(j).cwiseAbs().maxCoeff(&imax);
    const cplx pivot = v(imax, j);
    if (std::abs(pivot) > 0.0) v.col(j) *= std::conj(pivot) / std::abs(pivot);
  }
  return v;
}

rvec permuted(const rvec& values, const std::vector<int>& perm) {
  rvec out(values.size());
  for (std::size_t n = 0; n < perm.size(); ++n) out(static_cast<Eigen::Index>(n)) = values(perm[n]);
  return out;
}

void validate_frame(const SpectralFrame& f, Eigen::Index dim, bool trace_preserving,
                    const Tolerances& tol, double t) {
  const std::string at = " at t=" + std::to_string(t);
  if (f.values.size() != dim || f.vectors.rows() != dim || f.vectors.cols() != dim) {
    throw Error(ErrorCode::ShapeMismatch, "spectral frame has inconsistent dimensions" + at);
  }
  if (!f.values.allFinite() || !f.vectors.allFinite()) {
    throw Error(ErrorCode::InvalidState, "spectral frame has non-finite entries" + at);
  }
  if (f.values.minCoeff() < -tol.rank) {
    throw Error(ErrorCode::InvalidProbability, "negative eigenvalue" + at);
  }
  if (trace_preserving && std::abs(f.values.sum() - 1.0) > tol.trace) {
    throw Error(ErrorCode::NotTracePreserving, "eigenvalues do not sum to one" + at);
  }
  const double ortho =
      (f.vectors.adjoint() * f.vectors - cmat::Identity(dim, dim)).norm();
  if (ortho > tol.hermitian) {
    throw Error(ErrorCode::InvalidState, "eigenbasis not orthonormal" + at);
  }
}

}  // namespace

GaugeMatch match_basis(const cmat& previous, const cmat& current, double min_overlap) {
  if (previous.rows() != current.rows() || previous.cols() != current.cols()) {
    throw Error(ErrorCode::ShapeMismatch, "match_basis: basis shapes differ");
  }
  const Eigen::Index d = previous.cols();
  const cmat overlaps = previous.adjoint() * current;
  GaugeMatch out;
  out.vectors.resize(current.rows(), d);
  out.permutation.assign(static_cast<std::size_t>(d), -1);
  std::vector<bool> taken(static_cast<std::size_t>(d), false);
  for (Eigen::Index n = 0; n < d; ++n) {
    Eigen::Index best = 0;
    const double mag = overlaps.row(n).cwiseAbs().maxCoeff(&best);
    if (mag < min_overlap || taken[static_cast<std::size_t>(best)]) {
      throw Error(ErrorCode::AmbiguousMatching,
                  "basis jumped: column " + std::to_string(n) + " best overlap " + std::to_string(mag));
    }
    taken[static_cast<std::size_t>(best)] = true;
    out.permutation[static_cast<std::size_t>(n)] = static_cast<int>(best);
    const cplx o = overlaps(n, best);
    out.vectors.col(n) = current.col(best) * (std::conj(o) / std::abs(o));
    out.min_overlap = std::min(out.min_overlap, mag);
  }
  return out;
}

cmat gauge_fix(const cmat& previous, const cmat& current) {
  return match_basis(previous, current).vectors;
}

SpectralTrajectory::SpectralTrajectory(FrameProvider provider, TimeGrid grid,
                                       TrajectoryOptions options, HamiltonianFn reference)
    : provider_(std::move(provider)), grid_(grid), options_(options), reference_(std::move(reference)) {
  if (!provider_) throw Error(ErrorCode::InvalidArgument, "trajectory needs a frame provider");
  fd_step_ = options_.fd_step > 0.0 ? options_.fd_step : 1e-5 * grid_.duration();

  SpectralFrame first = provider_(grid_.t0());
  dim_ = first.values.size();
  if (dim_ < 1) throw Error(ErrorCode::ShapeMismatch, "trajectory frame is empty");
  validate_frame(first, dim_, options_.trace_preserving, options_.tol, grid_.t0());
  node_bases_.reserve(static_cast<std::size_t>(grid_.nodes()));
  node_bases_.push_back(canonical_phases(std::move(first.vectors)));
  for (Eigen::Index n = 0; n < dim_; ++n) {
    (first.values(n) > options_.tol.rank ? support_ : null_).push_back(static_cast<int>(n));
  }

  for (int k = 1; k < grid_.nodes(); ++k) {
    const double t = grid_.node(k);
    SpectralFrame f = provider_(t);
    validate_frame(f, dim_, options_.trace_preserving, options_.tol, t);
    GaugeMatch m = match_basis(node_bases_.back(), f.vectors);
    node_bases_.push_back(std::move(m.vectors));
  }
}

cmat SpectralTrajectory::reference_hamiltonian(double t) const {
  if (!reference_) return cmat::Zero(dim_, dim_);
  return reference_(t);
}

void SpectralTrajectory::check_time(double t) const {
  const double slack = 1e-9 * grid_.duration();
  if (!grid_.contains(t, slack)) {
    throw Error(ErrorCode::OutOfRange, "t=" + std::to_string(t) + " outside the trajectory grid");
  }
}

SpectralFrame SpectralTrajectory::matched(double t, const cmat& reference_basis) const {
  SpectralFrame raw = provider_(t);
  if (raw.values.size() != dim_) {
    throw Error(ErrorCode::ShapeMismatch, "provider changed dimension");
  }
  GaugeMatch m = match_basis(reference_basis, raw.vectors);
  return {permuted(raw.values, m.permutation), std::move(m.vectors)};
}

SpectralFrame SpectralTrajectory::frame(double t) const {
  check_time(t);
  return matched(t, node_bases_[static_cast<std::size_t>(grid_.nearest(t))]);
}

SpectralJet SpectralTrajectory::jet(double t) const {
  SpectralJet out;
  out.frame = frame(t);
  const double h = fd_step_;
  const cmat& centre = out.frame.vectors;
  auto sample = [&](double s) { return matched(s, centre); };

  const double eps = 1e-12 * grid_.duration();
  const bool room_left = t - 2.0 * h >= grid_.t0() - eps;
  const bool room_right = t + 2.0 * h <= grid_.tf() + eps;

  rvec coarse;
  if (room_left && room_right) {
    const auto fp = sample(t + h), fm = sample(t - h);
    out.values_dot = (fp.values - fm.values) / (2.0 * h);
    out.vectors_dot = (fp.vectors - fm.vectors) / (2.0 * h);
    if (options_.richardson_check) {
      const auto fp2 = sample(t + 2.0 * h), fm2 = sample(t - 2.0 * h);
      coarse = (fp2.values - fm2.values) / (4.0 * h);
    }
  } else {
    // Second-order one-sided stencil pointing into the grid.
    const double dir = room_right ? 1.0 : -1.0;
    const auto f1 = sample(t + dir * h), f2 = sample(t + dir * 2.0 * h);
    out.values_dot = dir * (-3.0 * out.frame.values + 4.0 * f1.values - f2.values) / (2.0 * h);
    out.vectors_dot = dir * (-3.0 * centre + 4.0 * f1.vectors - f2.vectors) / (2.0 * h);
    if (options_.richardson_check) {
      const auto f4 = sample(t + dir * 4.0 * h);
      coarse = dir * (-3.0 * out.frame.values + 4.0 * f2.values - f4.values) / (4.0 * h);
    }
  }

  if (options_.richardson_check) {
    const double change = (out.values_dot - coarse).cwiseAbs().maxCoeff();
    const double scale = out.values_dot.cwiseAbs().maxCoeff();
    const double floor = 1e-3 * options_.tol.richardson / grid_.duration();
    if (change > options_.tol.richardson * scale + floor) {
      throw Error(ErrorCode::UnstableDerivative,
                  "eigenvalue rates change by " + std::to_string(change) +
                      " under step doubling at t=" + std::to_string(t));
    }
  }
  return out;
}

State eval_state(const SpectralTrajectory& traj, double t) {
  const auto f = traj.frame(t);
  cmat rho = f.vectors * f.values.cast<cplx>().asDiagonal() * f.vectors.adjoint();
  const double target = traj.trace_preserving() ? 1.0 : f.values.sum();
  return {0.5 * (rho + rho.adjoint()), target};
}

SpectralJet eval_derivatives(const SpectralTrajectory& traj, double t) { return traj.jet(t); }

rvec gibbs_weights(const rvec& energies, double beta) {
  const double emin = energies.minCoeff();
  rvec w = (-beta * (energies.array() - emin)).exp().matrix();
  return w / w.sum();
}

SpectralTrajectory thermal_trajectory(const ThermalSpec& spec, const TimeGrid& grid,
                                      TrajectoryOptions options) {
  if (!spec.hamiltonian) throw Error(ErrorCode::InvalidArgument, "thermal spec needs H0(t)");
  const Tolerances tol = options.tol;
  FrameProvider provider = [spec, tol](double t) {
    const double beta = spec.beta(t);
    if (!(beta > 0.0) || !std::isfinite(beta)) {
      throw Error(ErrorCode::InvalidArgument, "inverse temperature must be finite and positive");
    }
    const auto es = spectral_decompose(spec.hamiltonian(t), tol);
    const Eigen::Index d = es.values.size();
    if (d > 1) {
      const double range = es.values(d - 1) - es.values(0);
      double gap = range;
      for (Eigen::Index i = 1; i < d; ++i) gap = std::min(gap, es.values(i) - es.values(i - 1));
      if (!(range > 0.0) || gap < tol.gap * range) {
        throw Error(ErrorCode::DegenerateSpectrum,
                    "H0 gap " + std::to_string(gap) + " at t=" + std::to_string(t));
      }
    }
    return SpectralFrame{gibbs_weights(es.values, beta), es.vectors};
  };
  options.trace_preserving = true;
  return SpectralTrajectory(std::move(provider), grid, options, spec.hamiltonian);
}

SpectralTrajectory random_trajectory(Eigen::Index dim, Eigen::Index rank, std::uint64_t seed,
                                     const TimeGrid& grid, TrajectoryOptions options) {
  if (dim < 1 || rank < 1 || rank > dim) {
    throw Error(ErrorCode::InvalidArgument, "random_trajectory: need 1 <= rank <= dim");
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> amp(0.2, 0.6), freq(0.5, 2.0), phase(0.0, 2.0 * M_PI);
  rvec a(rank), w(rank), p(rank);
  for (Eigen::Index n = 0; n < rank; ++n) {
    a(n) = amp(rng);
    w(n) = freq(rng);
    p(n) = phase(rng);
  }
  const auto generator = spectral_decompose(random_hermitian(dim, rng));
  const cmat v0 = random_unitary(dim, rng);
  const cmat w0 = generator.vectors.adjoint() * v0;

  FrameProvider provider = [=, kappa = generator.values, wv = generator.vectors](double t) {
    rvec lambda = rvec::Zero(dim);
    for (Eigen::Index n = 0; n < rank; ++n) lambda(n) = 1.0 + a(n) * std::sin(w(n) * t + p(n));
    lambda /= lambda.sum();
    cvec rot(dim);
    for (Eigen::Index i = 0; i < dim; ++i) rot(i) = std::exp(cplx(0.0, -kappa(i) * t));
    return SpectralFrame{lambda, wv * rot.asDiagonal() * w0};
  };
  options.trace_preserving = true;
  return SpectralTrajectory(std::move(provider), grid, options);
}

}  // namespace sta
