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

#include "sta/models/tls.hpp"

#include <cmath>
#include <string>

namespace sta::tls {

namespace {

double gap_squared(const Stroke& s, double t, const Tolerances& tol) {
  const double d = s.delta(t);
  const double o = s.omega(t);
  const double r2 = d * d + o * o;
  if (!(r2 >= tol.gap_closure)) {
    throw Error(ErrorCode::GapClosure, "Delta^2 + Omega^2 = " + std::to_string(r2) + " at t=" + std::to_string(t));
  }
  return r2;
}

// 1 / (e^x + 1) without overflow.
double fermi(double x) {
  if (x > 0.0) {
    const double e = std::exp(-x);
    return e / (1.0 + e);
  }
  return 1.0 / (std::exp(x) + 1.0);
}

}  // namespace

void validate(const Stroke& s) {
  auto is_const = [](const Schedule& a) { return a.kind() == Schedule::Kind::Constant; };
  if (s.kind == StrokeKind::Isothermal && !is_const(s.beta)) {
    throw Error(ErrorCode::InvalidArgument, "isothermal stroke needs a constant beta");
  }
  if (s.kind == StrokeKind::IsochoreHeatCool && (!is_const(s.delta) || !is_const(s.omega))) {
    throw Error(ErrorCode::InvalidArgument, "isochore stroke needs constant Delta and Omega");
  }
}

Hamiltonians hamiltonians(const Stroke& s, double t, const Tolerances& tol) {
  const double r2 = gap_squared(s, t, tol);
  const double d = s.delta(t);
  const double o = s.omega(t);
  Hamiltonians h;
  h.h0 = 0.5 * (d * pauli::z() + o * pauli::x());
  const double c = 0.5 * (s.omega.derivative(t) * d - s.delta.derivative(t) * o) / r2;
  h.h1 = c * pauli::y();
  return h;
}

Rates isothermal_rates(double beta, double gap, double gap_dot) {
  const double a = 0.5 * beta * gap_dot;
  return {a * fermi(-beta * gap), -a * fermi(beta * gap)};
}

Rates isochore_rates(double gap, double beta, double beta_dot) {
  const double a = 0.5 * beta_dot * gap;
  return {a * fermi(-beta * gap), -a * fermi(beta * gap)};
}

Rates general_rates(double delta, double omega, double beta, double delta_dot, double omega_dot,
                    double beta_dot) {
  const double gap = std::sqrt(delta * delta + omega * omega);
  const double num = delta * delta * beta_dot + omega * (omega * beta_dot + beta * omega_dot) +
                     beta * delta * delta_dot;
  const double a = num / (2.0 * gap);
  return {a * fermi(-beta * gap), -a * fermi(beta * gap)};
}

Rates rates(const Stroke& s, double t, const Tolerances& tol) {
  const double r2 = gap_squared(s, t, tol);
  const double gap = std::sqrt(r2);
  const double d = s.delta(t), o = s.omega(t), b = s.beta(t);
  const double dd = s.delta.derivative(t), od = s.omega.derivative(t), bd = s.beta.derivative(t);
  switch (s.kind) {
    case StrokeKind::Isothermal:
      return isothermal_rates(b, gap, (d * dd + o * od) / gap);
    case StrokeKind::IsochoreHeatCool:
      return isochore_rates(gap, b, bd);
    case StrokeKind::General:
      break;
  }
  return general_rates(d, o, b, dd, od, bd);
}

cmat gamma_from_rates(const Rates& r, const cmat& basis) {
  if (basis.rows() != 2 || basis.cols() != 2) {
    throw Error(ErrorCode::ShapeMismatch, "two-level basis must be 2x2");
  }
  return r.minus_plus * projector(basis.col(0)) + r.plus_minus * projector(basis.col(1));
}

rvec populations(double beta_gap) {
  rvec p(2);
  p(0) = fermi(-beta_gap);
  p(1) = fermi(beta_gap);
  return p;
}

SpectralFrame frame(const Stroke& s, double t, const Tolerances& tol) {
  gap_squared(s, t, tol);
  const double d = s.delta(t), o = s.omega(t);
  const double theta = std::atan2(o, d);
  const double c = std::cos(0.5 * theta), sn = std::sin(0.5 * theta);
  SpectralFrame f;
  f.values = populations(s.beta(t) * std::hypot(d, o));
  f.vectors.resize(2, 2);
  f.vectors << sn, c,
               -c, sn;
  return f;
}

SpectralTrajectory trajectory(const Stroke& stroke, const TimeGrid& grid, TrajectoryOptions options) {
  validate(stroke);
  if (stroke.beta(grid.t0()) <= 0.0 || stroke.beta(grid.tf()) <= 0.0) {
    throw Error(ErrorCode::InvalidArgument, "beta must be positive");
  }
  const Tolerances tol = options.tol;
  auto provider = [stroke, tol](double t) { return frame(stroke, t, tol); };
  auto reference = [stroke, tol](double t) { return hamiltonians(stroke, t, tol).h0; };
  return SpectralTrajectory(provider, grid, options, reference);
}

Stroke isothermal_stroke(double beta, double omega, double delta0, double deltaf, double tf) {
  return {Schedule::polynomial5(delta0, deltaf, tf), Schedule::constant(omega), Schedule::constant(beta),
          StrokeKind::Isothermal};
}

Stroke isochore_stroke(double delta, double omega, double beta0, double betaf, double tf) {
  return {Schedule::constant(delta), Schedule::constant(omega), Schedule::polynomial5(beta0, betaf, tf),
          StrokeKind::IsochoreHeatCool};
}

Stroke general_stroke(double delta0, double deltaf, double omega0, double omegaf, double beta0,
                      double betaf, double tf) {
  return {Schedule::polynomial5(delta0, deltaf, tf), Schedule::polynomial5(omega0, omegaf, tf),
          Schedule::polynomial5(beta0, betaf, tf), StrokeKind::General};
}

}  // namespace sta::tls
