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


// Reference computations for the tests. Nothing here calls into the library;
// each helper restates the defining formula with plain Eigen.

#ifndef STA_TESTS_ORACLES_HPP
#define STA_TESTS_ORACLES_HPP

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <vector>

namespace oracle {

using cplx = std::complex<double>;
using cmat = Eigen::MatrixXcd;

inline cmat sigma_x() { return (cmat(2, 2) << 0, 1, 1, 0).finished(); }
inline cmat sigma_y() { return (cmat(2, 2) << 0, cplx(0, -1), cplx(0, 1), 0).finished(); }
inline cmat sigma_z() { return (cmat(2, 2) << 1, 0, 0, -1).finished(); }

/// Principal square root of a PSD matrix by eigendecomposition.
inline cmat sqrtm(const cmat& a) {
  Eigen::SelfAdjointEigenSolver<cmat> es(0.5 * (a + a.adjoint()));
  Eigen::VectorXd v = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * v.cast<cplx>().asDiagonal() * es.eigenvectors().adjoint();
}

/// Tr sqrt(sqrt(a) b sqrt(a)).
inline double fidelity(const cmat& a, const cmat& b) {
  const cmat s = sqrtm(a);
  const cmat m = s * b * s;
  return std::real(sqrtm(m).trace());
}

inline double trace_norm_hermitian(const cmat& a) {
  Eigen::SelfAdjointEigenSolver<cmat> es(0.5 * (a + a.adjoint()));
  return es.eigenvalues().cwiseAbs().sum();
}

/// e^{-beta h} / Tr e^{-beta h} through the matrix exponential.
inline cmat gibbs(const cmat& h, double beta) {
  const cmat e = (-beta * h).exp();
  return e / e.trace();
}

/// Minimum-jerk ramp and its first derivative.
inline double poly5(double a0, double af, double tf, double t) {
  const double s = std::clamp(t / tf, 0.0, 1.0);
  return a0 + (af - a0) * s * s * s * (10.0 - 15.0 * s + 6.0 * s * s);
}
inline double poly5_dot(double a0, double af, double tf, double t) {
  const double s = std::clamp(t / tf, 0.0, 1.0);
  return (af - a0) * 30.0 * s * s * (1.0 - s) * (1.0 - s) / tf;
}

/// Central difference of a scalar function.
inline double diff(const std::function<double(double)>& f, double t, double h) {
  return (f(t + h) - f(t - h)) / (2.0 * h);
}

/// Classical RK4 for y' = f(t, y), returning the state after each step.
template <class V, class F>
std::vector<V> rk4(F&& f, V y, double t0, double dt, int steps) {
  std::vector<V> out{y};
  for (int k = 0; k < steps; ++k) {
    const double t = t0 + k * dt;
    const V k1 = f(t, y);
    const V k2 = f(t + 0.5 * dt, V(y + 0.5 * dt * k1));
    const V k3 = f(t + 0.5 * dt, V(y + 0.5 * dt * k2));
    const V k4 = f(t + dt, V(y + dt * k3));
    y = y + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    out.push_back(y);
  }
  return out;
}

/// Thermal two-level state of H0 = (delta sigma_z + omega sigma_x)/2 in
/// closed form: (I - tanh(beta R / 2) n.sigma) / 2.
inline cmat tls_thermal(double delta, double omega, double beta) {
  const double r = std::hypot(delta, omega);
  const double t = std::tanh(0.5 * beta * r);
  return 0.5 * (cmat::Identity(2, 2) - t * (delta * sigma_z() + omega * sigma_x()) / r);
}

/// Position variance of the oscillator Gibbs state,
/// hbar / (2 m w) coth(beta hbar w / 2).
inline double thermal_position_variance(double m, double hbar, double w, double beta) {
  return hbar / (2.0 * m * w) / std::tanh(0.5 * beta * hbar * w);
}

}  // namespace oracle

#endif  // STA_TESTS_ORACLES_HPP
