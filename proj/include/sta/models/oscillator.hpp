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

// Fast thermalization of a driven oscillator, H0 = p^2/2m + m w_t^2 x^2 / 2,
// along rho(t) = e^{-beta_t H0} / Z. The run propagates the rotated state
// U_x rho U_x^dagger, U_x = exp(i m alpha_t x^2 / (2 hbar)), under
//   d rho/dt = -(i/hbar)[p^2/2m + m w_cd^2 x^2 / 2, rho] - gamma_t [x, [x, rho]]
// in a Fock basis of fixed frequency omega_ref.

#ifndef STA_MODELS_OSCILLATOR_HPP
#define STA_MODELS_OSCILLATOR_HPP

#include <vector>

#include "sta/propagator.hpp"
#include "sta/qsl.hpp"

namespace sta::osc {

struct Spec {
  Schedule omega = Schedule::constant(1.0);
  Schedule beta = Schedule::constant(1.0);
  double tf = 1.0;
  double mass = 1.0;
  double hbar = 1.0;
  int truncation = 60;
  double omega_ref = 0.0;  // 0 selects omega(0)
  double fd_step = 0.0;    // 0 selects 1e-5 tf

  double reference_frequency() const { return omega_ref > 0.0 ? omega_ref : omega.value(0.0); }
  double step() const { return fd_step > 0.0 ? fd_step : 1e-5 * tf; }
};

/// polynomial5 ramps omega0 -> omegaf and beta0 -> betaf over [0, tf].
Spec stroke(double omega0, double omegaf, double beta0, double betaf, double tf, int truncation = 60,
            double mass = 1.0, double hbar = 1.0);

/// Positive frequencies, temperatures, mass, hbar; truncation >= 2.
void validate(const Spec& spec);

/// Control scalars at one time.
struct Controls {
  double t = 0.0;
  double omega = 0.0, omega_dot = 0.0, omega_ddot = 0.0;
  double beta = 0.0, beta_dot = 0.0;
  double u = 0.0, u_dot = 0.0;            // u = exp(-beta hbar omega)
  double alpha = 0.0;                      // -omega_dot / (2 omega) + u_dot / (1 - u^2) = -dN/dt / N
  double big_omega = 0.0;                  // alpha + omega_dot / (2 omega) = u_dot / (1 - u^2)
  double big_omega_dot = 0.0;
  double alpha_dot = 0.0;
  double gamma = 0.0;                      // (m omega / hbar) u_dot / (1 - u)^2
  double omega_cd2 = 0.0;                  // omega^2 - alpha^2 - alpha_dot
  double omega_cd2_expanded = 0.0;         // bracket form, for cross-checks
  double omega_rot2 = 0.0;                 // omega^2 + alpha^2 + alpha omega_dot / omega - alpha_dot
};

/// Throws DegenerateU if u leaves (eps, 1 - eps). Derivatives of alpha and
/// big_omega are central differences (one-sided within the protocol window).
Controls controls(const Spec& spec, double t, const Tolerances& tol = default_tolerances());

/// Gaussian kernel rho(x, x') = N exp(-A (x^2 + x'^2) - 2 C x x').
struct Gaussian {
  double t = 0.0;
  double k = 0.0;  // sqrt(m omega / hbar)
  double u = 0.0;
  double a = 0.0;
  double c = 0.0;
  double n = 0.0;

  double position_variance() const { return 1.0 / (4.0 * (a + c)); }
};

Gaussian gaussian(double k, double u);
Gaussian gaussian(const Spec& spec, double t, const Tolerances& tol = default_tolerances());

struct GaussianCheck {
  double t = 0.0;
  double omega_from_norm = 0.0;   // -dN/dt / N
  double omega_closed = 0.0;      // -omega_dot / (2 omega) + u_dot / (1 - u^2)
  double gamma_from_a = 0.0;      // dA/dt - 2 (dN/dt / N) A
  double gamma_from_c = 0.0;      // -dC/dt + 2 (dN/dt / N) C
  double gamma_closed = 0.0;
};

struct GaussianEvolution {
  std::vector<Gaussian> states;
  std::vector<GaussianCheck> checks;
  double max_omega_error = 0.0;   // relative to max |Omega| + 1
  double max_gamma_error = 0.0;   // relative to max |gamma| + 1
};

/// Closed-form Gaussian parameters on the grid with both identities checked
/// by finite differences. Throws IdentityViolation above `identity_tol`.
GaussianEvolution gaussian_evolve(const Spec& spec, const TimeGrid& grid, double identity_tol = 1e-6,
                                  const Tolerances& tol = default_tolerances());

/// Second moments of a zero-mean Gaussian state: <x^2>, <p^2> and
/// <{x, p}>/2. They close under the dephasing equation,
///   d<x^2> = 2 s / m,  d<p^2> = -2 m w_cd^2 s + 2 hbar^2 gamma,
///   d s = <p^2> / m - m w_cd^2 <x^2>,
/// which stays well posed when gamma < 0, unlike a truncated Fock matrix.
struct Moments {
  double t = 0.0;
  double xx = 0.0;
  double pp = 0.0;
  double xp = 0.0;

  /// det(covariance) - hbar^2 / 4; non-negative for physical states.
  double uncertainty_margin(double hbar) const { return xx * pp - xp * xp - 0.25 * hbar * hbar; }
};

/// Moments of the kernel times exp(i chirp (x^2 - x'^2)).
Moments moments(const Gaussian& g, double chirp, double hbar);
/// Moments of the rotated target at t.
Moments target_moments(const Spec& spec, double t, const Tolerances& tol = default_tolerances());
/// RK4 on the moment equations from the rotated target at t0.
std::vector<Moments> propagate_moments(const Spec& spec, const TimeGrid& grid,
                                       const Tolerances& tol = default_tolerances());
/// Uhlmann root fidelity of two zero-mean single-mode Gaussian states.
double gaussian_fidelity(const Moments& a, const Moments& b, double hbar);

/// Truncated Fock-basis operators at frequency omega_ref. The squares and
/// {x, p} are projections of the exact operators, not products of
/// truncated matrices.
struct FockOperators {
  int n = 0;
  double mass = 1.0;
  double hbar = 1.0;
  double omega_ref = 1.0;
  SparseOperator x, p, x2, p2, xp;  // xp = {x, p}
};

FockOperators fock_operators(int n, double mass, double hbar, double omega_ref);
FockOperators fock_operators(const Spec& spec);

/// Thermal mass u^{N-1} above level N-2 for the hotter endpoint; throws
/// TruncationTooSmall above tol.truncation_tail.
double check_truncation(const Spec& spec, const Tolerances& tol = default_tolerances());

DephasingControls fock_controls(const Spec& spec, const FockOperators& ops, double t,
                                const Tolerances& tol = default_tolerances());

/// Fock matrix of the kernel times exp(i chirp (x^2 - x'^2)), by trapezoid
/// quadrature on Hermite functions.
cmat gaussian_to_fock(const Gaussian& g, double chirp, const FockOperators& ops);

/// Thermal state at (omega, beta), projected on the truncated basis.
cmat thermal_fock(double omega, double beta, const FockOperators& ops);
/// U_x rho(t) U_x^dagger, projected.
cmat rotated_target(const Spec& spec, const FockOperators& ops, double t,
                    const Tolerances& tol = default_tolerances());

/// Rotated-frame H/hbar and Gamma with d rho~/dt = -i[H, rho~] - {Gamma, rho~}.
struct RotatedGenerators {
  cmat h;
  cmat gamma;
};
RotatedGenerators rotated_generators(const Spec& spec, const FockOperators& ops, double t,
                                     const Tolerances& tol = default_tolerances());

/// Speed-limit data for a Fock run: the Fisher part uses the rotated
/// H and Gamma, the triangle split the dephasing form that was integrated.
std::vector<QslNode> qsl_nodes(const Spec& spec, const FockOperators& ops, const PropagationRecord& record,
                               const Tolerances& tol = default_tolerances());

/// Tr[rho x^2] / Tr[rho].
double position_variance(const cmat& rho, const FockOperators& ops);

}  // namespace sta::osc

#endif  // STA_MODELS_OSCILLATOR_HPP
