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

#include "sta/models/oscillator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace sta::osc {

namespace {

struct Base {
  double omega, omega_dot, omega_ddot, beta, beta_dot, u, u_dot;
};

Base base(const Spec& s, double t, const Tolerances& tol) {
  Base b{};
  b.omega = s.omega.value(t);
  b.omega_dot = s.omega.derivative(t);
  b.omega_ddot = s.omega.second_derivative(t);
  b.beta = s.beta.value(t);
  b.beta_dot = s.beta.derivative(t);
  b.u = std::exp(-b.beta * s.hbar * b.omega);
  if (!(b.u > tol.degenerate_u && b.u < 1.0 - tol.degenerate_u)) {
    throw Error(ErrorCode::DegenerateU, "u = " + std::to_string(b.u) + " at t=" + std::to_string(t));
  }
  b.u_dot = -s.hbar * (b.beta_dot * b.omega + b.beta * b.omega_dot) * b.u;
  return b;
}

// alpha = -dN/dt / N keeps the rotated Gaussian on the dephasing equation;
// big_omega = alpha + omega_dot / (2 omega) vanishes when u is constant.
double alpha_of(const Base& b) { return -0.5 * b.omega_dot / b.omega + b.u_dot / (1.0 - b.u * b.u); }
double big_omega_of(const Base& b) { return b.u_dot / (1.0 - b.u * b.u); }

// Second-order first derivative of f at t, one-sided inside [0, tf].
template <class F>
double derivative(F&& f, double t, double h, double tf) {
  if (t - h < 0.0) return (-3.0 * f(t) + 4.0 * f(t + h) - f(t + 2.0 * h)) / (2.0 * h);
  if (t + h > tf) return (3.0 * f(t) - 4.0 * f(t - h) + f(t - 2.0 * h)) / (2.0 * h);
  return (f(t + h) - f(t - h)) / (2.0 * h);
}

SparseOperator from_triplets(int n, const std::vector<Eigen::Triplet<cplx>>& trips) {
  SparseOperator m(n, n);
  m.setFromTriplets(trips.begin(), trips.end());
  m.makeCompressed();
  return m;
}

}  // namespace

Spec stroke(double omega0, double omegaf, double beta0, double betaf, double tf, int truncation,
            double mass, double hbar) {
  Spec s;
  s.omega = Schedule::polynomial5(omega0, omegaf, tf);
  s.beta = Schedule::polynomial5(beta0, betaf, tf);
  s.tf = tf;
  s.truncation = truncation;
  s.mass = mass;
  s.hbar = hbar;
  return s;
}

void validate(const Spec& s) {
  if (!(s.tf > 0.0)) throw Error(ErrorCode::InvalidArgument, "tf must be positive");
  if (!(s.mass > 0.0) || !(s.hbar > 0.0)) throw Error(ErrorCode::InvalidArgument, "mass and hbar must be positive");
  if (s.truncation < 2) throw Error(ErrorCode::InvalidArgument, "truncation must be at least 2");
  for (double t : {0.0, 0.5 * s.tf, s.tf}) {
    if (!(s.omega.value(t) > 0.0)) throw Error(ErrorCode::InvalidArgument, "omega must be positive");
    if (!(s.beta.value(t) > 0.0)) throw Error(ErrorCode::InvalidArgument, "beta must be positive");
  }
  if (!(s.reference_frequency() > 0.0)) throw Error(ErrorCode::InvalidArgument, "omega_ref must be positive");
}

Controls controls(const Spec& s, double t, const Tolerances& tol) {
  const Base b = base(s, t, tol);
  Controls c;
  c.t = t;
  c.omega = b.omega;
  c.omega_dot = b.omega_dot;
  c.omega_ddot = b.omega_ddot;
  c.beta = b.beta;
  c.beta_dot = b.beta_dot;
  c.u = b.u;
  c.u_dot = b.u_dot;
  c.alpha = alpha_of(b);
  c.big_omega = c.alpha + 0.5 * b.omega_dot / b.omega;
  c.gamma = (s.mass * b.omega / s.hbar) * b.u_dot / ((1.0 - b.u) * (1.0 - b.u));

  const double h = s.step();
  c.alpha_dot = derivative([&](double x) { return alpha_of(base(s, x, tol)); }, t, h, s.tf);
  c.big_omega_dot = derivative([&](double x) { return big_omega_of(base(s, x, tol)); }, t, h, s.tf);

  const double w = b.omega;
  const double r = b.omega_dot / w;
  c.omega_cd2 = w * w - c.alpha * c.alpha - c.alpha_dot;
  c.omega_cd2_expanded = (w * w - 0.75 * r * r + 0.5 * b.omega_ddot / w) - c.big_omega * c.big_omega -
                         c.big_omega_dot + c.big_omega * r;
  c.omega_rot2 = w * w + c.alpha * c.alpha + c.alpha * r - c.alpha_dot;
  return c;
}

Gaussian gaussian(double k, double u) {
  Gaussian g;
  g.k = k;
  g.u = u;
  const double k2 = k * k;
  g.a = k2 * (1.0 + u * u) / (2.0 * (1.0 - u * u));
  g.c = -k2 * u / (1.0 - u * u);
  g.n = std::sqrt(2.0 * (g.a + g.c) / std::numbers::pi);
  return g;
}

Gaussian gaussian(const Spec& s, double t, const Tolerances& tol) {
  const Base b = base(s, t, tol);
  Gaussian g = gaussian(std::sqrt(s.mass * b.omega / s.hbar), b.u);
  g.t = t;
  return g;
}

GaussianEvolution gaussian_evolve(const Spec& s, const TimeGrid& grid, double identity_tol,
                                  const Tolerances& tol) {
  validate(s);
  GaussianEvolution out;
  out.states.reserve(static_cast<std::size_t>(grid.nodes()));
  out.checks.reserve(static_cast<std::size_t>(grid.nodes()));
  const double h = s.step();
  double scale_omega = 0.0, scale_gamma = 0.0, err_omega = 0.0, err_gamma = 0.0;
  for (int k = 0; k < grid.nodes(); ++k) {
    const double t = grid.node(k);
    const Gaussian g = gaussian(s, t, tol);
    const Base b = base(s, t, tol);
    GaussianCheck chk;
    chk.t = t;
    chk.omega_closed = alpha_of(b);
    chk.gamma_closed = (s.mass * b.omega / s.hbar) * b.u_dot / ((1.0 - b.u) * (1.0 - b.u));
    const double n_dot = derivative([&](double x) { return gaussian(s, x, tol).n; }, t, h, s.tf);
    const double a_dot = derivative([&](double x) { return gaussian(s, x, tol).a; }, t, h, s.tf);
    const double c_dot = derivative([&](double x) { return gaussian(s, x, tol).c; }, t, h, s.tf);
    chk.omega_from_norm = -n_dot / g.n;
    chk.gamma_from_a = a_dot + 2.0 * chk.omega_from_norm * g.a;
    chk.gamma_from_c = -c_dot - 2.0 * chk.omega_from_norm * g.c;
    scale_omega = std::max(scale_omega, std::abs(chk.omega_closed));
    scale_gamma = std::max(scale_gamma, std::abs(chk.gamma_closed));
    err_omega = std::max(err_omega, std::abs(chk.omega_from_norm - chk.omega_closed));
    err_gamma = std::max({err_gamma, std::abs(chk.gamma_from_a - chk.gamma_closed),
                          std::abs(chk.gamma_from_c - chk.gamma_closed)});
    out.states.push_back(g);
    out.checks.push_back(chk);
  }
  out.max_omega_error = err_omega / (1.0 + scale_omega);
  out.max_gamma_error = err_gamma / (1.0 + scale_gamma);
  if (out.max_omega_error > identity_tol || out.max_gamma_error > identity_tol) {
    throw Error(ErrorCode::IdentityViolation,
                "Gaussian identities off by " + std::to_string(out.max_omega_error) + " / " +
                    std::to_string(out.max_gamma_error));
  }
  return out;
}

Moments moments(const Gaussian& g, double chirp, double hbar) {
  // In x = (q + q')/2, y = q - q' the kernel is exp(-2(A+C) x^2 - (A-C) y^2/2 + 2 i chirp x y).
  Moments m;
  m.t = g.t;
  m.xx = g.position_variance();
  m.xp = 2.0 * hbar * chirp * m.xx;
  m.pp = hbar * hbar * (g.a - g.c) + 4.0 * hbar * hbar * chirp * chirp * m.xx;
  return m;
}

Moments target_moments(const Spec& s, double t, const Tolerances& tol) {
  const Controls c = controls(s, t, tol);
  return moments(gaussian(s, t, tol), s.mass * c.alpha / (2.0 * s.hbar), s.hbar);
}

std::vector<Moments> propagate_moments(const Spec& s, const TimeGrid& grid, const Tolerances& tol) {
  validate(s);
  using V = Eigen::Vector3d;
  const double m = s.mass, hb = s.hbar;
  auto f = [&](double t, const V& y) {
    const Controls c = controls(s, t, tol);
    return V(2.0 * y(2) / m, -2.0 * m * c.omega_cd2 * y(2) + 2.0 * hb * hb * c.gamma, y(1) / m - m * c.omega_cd2 * y(0));
  };
  const Moments m0 = target_moments(s, grid.t0(), tol);
  V y(m0.xx, m0.pp, m0.xp);
  std::vector<Moments> out;
  out.reserve(static_cast<std::size_t>(grid.nodes()));
  out.push_back({grid.t0(), y(0), y(1), y(2)});
  const double dt = grid.dt();
  for (int k = 0; k < grid.steps(); ++k) {
    const double t = grid.node(k);
    const V k1 = f(t, y);
    const V k2 = f(t + 0.5 * dt, y + 0.5 * dt * k1);
    const V k3 = f(t + 0.5 * dt, y + 0.5 * dt * k2);
    const V k4 = f(t + dt, y + dt * k3);
    y += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (!y.allFinite()) throw Error(ErrorCode::InvalidState, "moments became non-finite at t=" + std::to_string(t + dt));
    out.push_back({grid.node(k + 1), y(0), y(1), y(2)});
  }
  return out;
}

double gaussian_fidelity(const Moments& a, const Moments& b, double hbar) {
  const double h2 = hbar * hbar;
  const double det_sum = ((a.xx + b.xx) * (a.pp + b.pp) - (a.xp + b.xp) * (a.xp + b.xp)) / h2;
  const double da = (a.xx * a.pp - a.xp * a.xp) / h2 - 0.25;
  const double db = (b.xx * b.pp - b.xp * b.xp) / h2 - 0.25;
  const double lam = 4.0 * std::max(da, 0.0) * std::max(db, 0.0);
  // Squared fidelity 1 / (sqrt(det_sum + lam) - sqrt(lam)); 1/cosh r for a squeezed vacuum.
  return std::sqrt(std::min(1.0, 1.0 / (std::sqrt(det_sum + lam) - std::sqrt(lam))));
}

FockOperators fock_operators(int n, double mass, double hbar, double omega_ref) {
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "truncation must be at least 2");
  FockOperators ops;
  ops.n = n;
  ops.mass = mass;
  ops.hbar = hbar;
  ops.omega_ref = omega_ref;
  const double sx = std::sqrt(hbar / (2.0 * mass * omega_ref));
  const double sp = std::sqrt(hbar * mass * omega_ref / 2.0);
  const cplx i(0.0, 1.0);
  std::vector<Eigen::Triplet<cplx>> tx, tp, tx2, tp2, txp;
  for (int k = 0; k < n; ++k) {
    tx2.emplace_back(k, k, sx * sx * (2.0 * k + 1.0));
    tp2.emplace_back(k, k, sp * sp * (2.0 * k + 1.0));
    if (k + 1 < n) {
      const double s1 = std::sqrt(k + 1.0);  // <k|a|k+1>
      tx.emplace_back(k, k + 1, sx * s1);
      tx.emplace_back(k + 1, k, sx * s1);
      tp.emplace_back(k, k + 1, -i * sp * s1);
      tp.emplace_back(k + 1, k, i * sp * s1);
    }
    if (k + 2 < n) {
      const double s2 = std::sqrt((k + 1.0) * (k + 2.0));  // <k|a^2|k+2>
      tx2.emplace_back(k, k + 2, sx * sx * s2);
      tx2.emplace_back(k + 2, k, sx * sx * s2);
      tp2.emplace_back(k, k + 2, -sp * sp * s2);
      tp2.emplace_back(k + 2, k, -sp * sp * s2);
      // {x, p} = i hbar (a^dagger^2 - a^2)
      txp.emplace_back(k + 2, k, i * hbar * s2);
      txp.emplace_back(k, k + 2, -i * hbar * s2);
    }
  }
  ops.x = from_triplets(n, tx);
  ops.p = from_triplets(n, tp);
  ops.x2 = from_triplets(n, tx2);
  ops.p2 = from_triplets(n, tp2);
  ops.xp = from_triplets(n, txp);
  return ops;
}

FockOperators fock_operators(const Spec& s) {
  return fock_operators(s.truncation, s.mass, s.hbar, s.reference_frequency());
}

double check_truncation(const Spec& s, const Tolerances& tol) {
  const double u0 = std::exp(-s.beta.value(0.0) * s.hbar * s.omega.value(0.0));
  const double uf = std::exp(-s.beta.value(s.tf) * s.hbar * s.omega.value(s.tf));
  const double tail = std::pow(std::max(u0, uf), s.truncation - 1);
  if (tail > tol.truncation_tail) {
    throw Error(ErrorCode::TruncationTooSmall,
                "thermal mass " + std::to_string(tail) + " above level " + std::to_string(s.truncation - 2) +
                    " exceeds " + std::to_string(tol.truncation_tail));
  }
  return tail;
}

DephasingControls fock_controls(const Spec& s, const FockOperators& ops, double t, const Tolerances& tol) {
  const Controls c = controls(s, t, tol);
  DephasingControls d;
  d.t = t;
  d.hamiltonian = (ops.p2 * (1.0 / (2.0 * s.mass)) + ops.x2 * (0.5 * s.mass * c.omega_cd2)) * (1.0 / s.hbar);
  d.position = ops.x;
  d.strength = c.gamma;
  return d;
}

cmat gaussian_to_fock(const Gaussian& g, double chirp, const FockOperators& ops) {
  const int n = ops.n;
  const double kref = std::sqrt(ops.mass * ops.omega_ref / ops.hbar);
  const double xi_max = std::sqrt(2.0 * n + 1.0) + 7.0;
  const double half = xi_max / kref;
  const double kmax = kref * std::sqrt(2.0 * n + 1.0) + 2.0 * std::abs(chirp) * half +
                      2.0 * std::sqrt(g.a + std::abs(g.c));
  const double h_target = std::numbers::pi / (4.0 * kmax);
  const int points = 2 * static_cast<int>(std::ceil(half / h_target)) + 1;
  const double h = 2.0 * half / (points - 1);

  // Hermite functions psi_k(x) at frequency omega_ref, by the stable recurrence.
  Eigen::MatrixXd psi(n, points);
  Eigen::VectorXd xs(points);
  const double norm0 = std::pow(kref * kref / std::numbers::pi, 0.25);
  for (int j = 0; j < points; ++j) {
    const double x = -half + j * h;
    xs(j) = x;
    const double xi = kref * x;
    psi(0, j) = norm0 * std::exp(-0.5 * xi * xi);
    if (n > 1) psi(1, j) = std::sqrt(2.0) * xi * psi(0, j);
    for (int k = 1; k + 1 < n; ++k) {
      psi(k + 1, j) = std::sqrt(2.0 / (k + 1.0)) * xi * psi(k, j) - std::sqrt(k / (k + 1.0)) * psi(k - 1, j);
    }
  }
  cmat kernel(points, points);
  for (int j = 0; j < points; ++j) {
    for (int l = 0; l < points; ++l) {
      const double x = xs(j), y = xs(l);
      const double re = -g.a * (x * x + y * y) - 2.0 * g.c * x * y;
      kernel(j, l) = g.n * std::exp(cplx(re, chirp * (x * x - y * y)));
    }
  }
  const cmat psic = psi.cast<cplx>();
  cmat rho = (h * h) * (psic * kernel * psic.transpose());
  return 0.5 * (rho + rho.adjoint());
}

cmat thermal_fock(double omega, double beta, const FockOperators& ops) {
  const double u = std::exp(-beta * ops.hbar * omega);
  return gaussian_to_fock(gaussian(std::sqrt(ops.mass * omega / ops.hbar), u), 0.0, ops);
}

cmat rotated_target(const Spec& s, const FockOperators& ops, double t, const Tolerances& tol) {
  const Controls c = controls(s, t, tol);
  return gaussian_to_fock(gaussian(s, t, tol), s.mass * c.alpha / (2.0 * s.hbar), ops);
}

RotatedGenerators rotated_generators(const Spec& s, const FockOperators& ops, double t, const Tolerances& tol) {
  const Controls c = controls(s, t, tol);
  const double m = s.mass;
  const SparseOperator h = ops.p2 * (1.0 / (2.0 * m)) + ops.x2 * (0.5 * m * c.omega_rot2) - ops.xp * (0.5 * c.big_omega);
  // U_x p U_x^dagger = p - m alpha x.
  const SparseOperator kinetic = ops.p2 - ops.xp * (m * c.alpha) + ops.x2 * (m * m * c.alpha * c.alpha);
  const SparseOperator energy = kinetic * (1.0 / (2.0 * m)) + ops.x2 * (0.5 * m * c.omega * c.omega);
  cmat number = cmat(energy) / (s.hbar * c.omega);
  number.diagonal().array() -= 0.5;
  RotatedGenerators g;
  g.h = cmat(h) / s.hbar;
  g.gamma = (-0.5 * c.u_dot / c.u) * number;
  g.gamma.diagonal().array() += 0.5 * c.u_dot / (1.0 - c.u);
  return g;
}

std::vector<QslNode> qsl_nodes(const Spec& s, const FockOperators& ops, const PropagationRecord& record,
                               const Tolerances& tol) {
  std::vector<QslNode> nodes;
  nodes.reserve(record.states.size());
  for (int k = 0; k < record.grid.nodes(); ++k) {
    const double t = record.grid.node(k);
    RotatedGenerators g = rotated_generators(s, ops, t, tol);
    const DephasingControls d = fock_controls(s, ops, t, tol);
    const cmat& rho = record.states[static_cast<std::size_t>(k)];
    const cmat inner = d.position * rho - rho * d.position;
    const cmat outer = d.position * inner - inner * d.position;
    nodes.push_back({std::move(g.h), std::move(g.gamma), -d.strength * outer, cmat(d.hamiltonian)});
  }
  return nodes;
}

double position_variance(const cmat& rho, const FockOperators& ops) {
  const cmat xr = ops.x2 * rho;
  return std::real(xr.trace()) / std::real(rho.trace());
}

}  // namespace sta::osc
