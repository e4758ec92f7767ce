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

#include "sta/models/atom.hpp"

#include <cmath>
#include <string>

namespace sta::atom {

namespace {

cmat ket_bra(int m, int n) {
  cmat op = cmat::Zero(2, 2);
  op(m, n) = 1.0;
  return op;
}

// (lambda_0, lambda_1) = (e^{-b w/2}, e^{b w/2}) / Z.
rvec weights(double omega0, double beta) {
  rvec p(2);
  const double x = beta * omega0;
  p(0) = x > 0.0 ? std::exp(-x) / (1.0 + std::exp(-x)) : 1.0 / (1.0 + std::exp(x));
  p(1) = 1.0 - p(0);
  return p;
}

}  // namespace

void validate(const Spec& s) {
  if (!(s.omega0 > 0.0) || !std::isfinite(s.omega0)) throw Error(ErrorCode::InvalidArgument, "omega0 must be positive");
  if (!(s.beta_s > 0.0) || !(s.beta_b > 0.0)) throw Error(ErrorCode::InvalidArgument, "inverse temperatures must be positive");
  if (!(s.gamma >= 0.0)) throw Error(ErrorCode::InvalidArgument, "gamma must be non-negative");
}

cmat hamiltonian(double omega0) { return 0.5 * omega0 * pauli::z(); }

cmat thermal_state(double omega0, double beta) {
  const rvec p = weights(omega0, beta);
  cmat rho = cmat::Zero(2, 2);
  rho(0, 0) = p(0);
  rho(1, 1) = p(1);
  return rho;
}

double beta_from_state(double omega0, const cmat& rho) {
  const double p0 = std::real(rho(0, 0));
  const double p1 = std::real(rho(1, 1));
  if (!(p0 > 0.0) || !(p1 > 0.0)) throw Error(ErrorCode::InvalidProbability, "populations must be positive");
  return std::log(p1 / p0) / omega0;
}

double mean_boson_number(double omega0, double beta) { return 1.0 / std::expm1(beta * omega0); }

Rates markov_rates(const Spec& s) {
  const double n = mean_boson_number(s.omega0, s.beta_b);
  return {s.gamma * n, s.gamma * (n + 1.0)};
}

double beta_of_t(const Spec& s, double t) {
  if (t <= 0.0) return s.beta_s;
  const double th_s = std::tanh(0.5 * s.omega0 * s.beta_s);
  const double th_b = std::tanh(0.5 * s.omega0 * s.beta_b);
  const double rate = s.gamma / th_b;  // gamma coth(Theta_B)
  const double e = std::exp(-rate * t);
  // -ln((1 - m) / (1 + m)) with m = e th_s + (1 - e) th_b
  return 2.0 * std::atanh(e * th_s + (1.0 - e) * th_b) / s.omega0;
}

Rates sta_rates(const Spec& s, double t) {
  if (!s.target) throw Error(ErrorCode::MissingTarget, "shortcut rates need a target schedule");
  const double b = s.target->value(t);
  const double bd = s.target->derivative(t);
  const double a = 0.25 * s.omega0 * bd;
  return {-a * std::exp(-b * s.omega0), a * std::exp(b * s.omega0)};
}

Rates trajectory_rates(double omega0, const Schedule& beta, double t) {
  const rvec p = weights(omega0, beta.value(t));
  // dlambda_0/dt = -omega0 dbeta lambda_0 lambda_1.
  const double l0_dot = -omega0 * beta.derivative(t) * p(0) * p(1);
  return {l0_dot / (2.0 * p(1)), -l0_dot / (2.0 * p(0))};
}

ControlSet controls(double omega0, const Rates& r, double t) {
  ControlSet set;
  set.t = t;
  set.h_cd = hamiltonian(omega0);
  set.h_aux = cmat::Zero(2, 2);
  set.gamma = cmat::Zero(2, 2);
  set.rank = 2;
  set.lindblads.push_back({0, 1, ket_bra(0, 1), r.r01});
  set.lindblads.push_back({1, 0, ket_bra(1, 0), r.r10});
  return set;
}

Schedule default_target(const Spec& s, double tf) { return Schedule::polynomial5(s.beta_s, s.beta_b, tf); }

SpectralTrajectory trajectory(double omega0, const Schedule& beta, const TimeGrid& grid,
                              TrajectoryOptions options) {
  if (!(omega0 > 0.0)) throw Error(ErrorCode::InvalidArgument, "omega0 must be positive");
  auto provider = [omega0, beta](double t) {
    const double b = beta.value(t);
    if (!(b > 0.0)) throw Error(ErrorCode::InvalidArgument, "beta must be positive, got " + std::to_string(b));
    return SpectralFrame{weights(omega0, b), cmat::Identity(2, 2)};
  };
  auto reference = [omega0](double) { return hamiltonian(omega0); };
  return SpectralTrajectory(provider, grid, options, reference);
}

}  // namespace sta::atom
