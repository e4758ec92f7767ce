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

// Dense complex-matrix primitives and state-space metrics.
//
// Everything here is a free function over Eigen expressions, templated on the
// real scalar type. The rest of the library instantiates with double through
// the aliases at the bottom of the type section.

#ifndef STA_DM_CORE_HPP
#define STA_DM_CORE_HPP

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <string>

#include "sta/error.hpp"

namespace sta {

template <class Real>
using ComplexMatrix = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;
template <class Real>
using ComplexVector = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1>;
template <class Real>
using RealVector = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

using cplx = std::complex<double>;
using cmat = ComplexMatrix<double>;
using cvec = ComplexVector<double>;
using rvec = RealVector<double>;

/// Numerical tolerances shared by every module. One record, passed by
/// const reference; `default_tolerances()` returns the library defaults.
struct Tolerances {
  double hermitian = 1e-10;           // relative Frobenius defect
  double positivity = 1e-9;           // eigenvalues in [-positivity, 0) clamp to 0
  double trace = 1e-9;                // |Tr rho - target|
  double rank = 1e-12;                // eigenvalues at or below this are outside the support
  double gap = 1e-8;                  // minimal gap, relative to the spectral range
  double positivity_breach = 1e-6;    // propagation warning threshold
  double trace_preserving = 1e-6;     // |sum of eigenvalue rates|
  double richardson = 1e-4;           // relative change of rates under step doubling
  double truncation_tail = 1e-8;      // thermal mass allowed above level N-2
  double degenerate_u = 1e-12;        // Boltzmann factor must lie in (eps, 1-eps)
  double gap_closure = 1e-16;         // minimal Delta^2 + Omega^2
};

inline const Tolerances& default_tolerances() {
  static const Tolerances tol{};
  return tol;
}

template <class Real>
struct EigenSystem {
  RealVector<Real> values;         // ascending
  ComplexMatrix<Real> vectors;     // orthonormal columns
};

/// A state together with the trace it is expected to carry. Validation is
/// explicit (`check_state`) because propagated states may be mildly
/// non-positive and the propagator reports rather than rejects them.
template <class Real>
struct DensityMatrix {
  ComplexMatrix<Real> matrix;
  Real trace_target = Real(1);

  Eigen::Index dim() const { return matrix.rows(); }
};

using State = DensityMatrix<double>;

// ---------------------------------------------------------------------------
// Elementary operations

template <class Derived>
typename Eigen::NumTraits<typename Derived::Scalar>::Real hermiticity_defect(
    const Eigen::MatrixBase<Derived>& a) {
  return (a - a.adjoint()).norm();
}

template <class DA, class DB>
auto commutator(const Eigen::MatrixBase<DA>& a, const Eigen::MatrixBase<DB>& b) {
  using M = Eigen::Matrix<typename DA::Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  M out = a * b;
  out.noalias() -= b * a;
  return out;
}

template <class DA, class DB>
auto anticommutator(const Eigen::MatrixBase<DA>& a, const Eigen::MatrixBase<DB>& b) {
  using M = Eigen::Matrix<typename DA::Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  M out = a * b;
  out.noalias() += b * a;
  return out;
}

/// Projector |v><v| for a single column.
template <class Derived>
auto projector(const Eigen::MatrixBase<Derived>& v) {
  using M = Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  M out = v * v.adjoint();
  return out;
}

template <class Derived>
bool is_hermitian(const Eigen::MatrixBase<Derived>& a, double rel_tol) {
  if (a.rows() != a.cols()) return false;
  const double scale = static_cast<double>(a.norm());
  return static_cast<double>(hermiticity_defect(a)) <= rel_tol * scale;
}

template <class Derived>
void require_hermitian(const Eigen::MatrixBase<Derived>& a, double rel_tol,
                       const char* what) {
  if (a.rows() != a.cols()) {
    throw Error(ErrorCode::ShapeMismatch, std::string(what) + " is not square");
  }
  if (!is_hermitian(a, rel_tol)) {
    throw Error(ErrorCode::NotHermitian,
                std::string(what) + " Hermiticity defect " +
                    std::to_string(static_cast<double>(hermiticity_defect(a))));
  }
}

// ---------------------------------------------------------------------------
// Spectral tools

template <class Derived>
EigenSystem<typename Eigen::NumTraits<typename Derived::Scalar>::Real> spectral_decompose(
    const Eigen::MatrixBase<Derived>& a, const Tolerances& tol = default_tolerances()) {
  using Real = typename Eigen::NumTraits<typename Derived::Scalar>::Real;
  require_hermitian(a, tol.hermitian, "spectral_decompose input");
  ComplexMatrix<Real> m = a.template cast<std::complex<Real>>();
  Eigen::SelfAdjointEigenSolver<ComplexMatrix<Real>> solver(m);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::NotHermitian, "eigensolver did not converge");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

/// V f(L) V^dagger for a decomposed Hermitian matrix.
template <class Real, class F>
ComplexMatrix<Real> apply_function(const EigenSystem<Real>& es, F&& f) {
  ComplexVector<Real> fv(es.values.size());
  for (Eigen::Index i = 0; i < es.values.size(); ++i) fv(i) = f(es.values(i));
  return es.vectors * fv.asDiagonal() * es.vectors.adjoint();
}

/// Smallest eigenvalue of the Hermitian part.
template <class Derived>
double min_eigenvalue(const Eigen::MatrixBase<Derived>& a) {
  cmat h = 0.5 * (a + a.adjoint());
  Eigen::SelfAdjointEigenSolver<cmat> solver(h, Eigen::EigenvaluesOnly);
  return solver.eigenvalues()(0);
}

/// Square root of a positive semidefinite matrix. Eigenvalues in
/// [-tol.positivity, 0) are clamped to zero; anything lower is an error.
template <class Derived>
cmat sqrt_psd(const Eigen::MatrixBase<Derived>& a, const Tolerances& tol = default_tolerances()) {
  const auto es = spectral_decompose(a, tol);
  if (es.values(0) < -tol.positivity) {
    throw Error(ErrorCode::InvalidState,
                "negative eigenvalue " + std::to_string(es.values(0)));
  }
  return apply_function(es, [](double x) { return std::sqrt(std::max(x, 0.0)); });
}

/// Throws InvalidState unless `rho` is Hermitian, positive within tolerance,
/// and carries its trace target.
template <class Real>
void check_state(const DensityMatrix<Real>& rho, const Tolerances& tol = default_tolerances()) {
  const auto& m = rho.matrix;
  if (m.rows() == 0 || m.rows() != m.cols()) {
    throw Error(ErrorCode::InvalidState, "state is not a non-empty square matrix");
  }
  if (!m.allFinite()) throw Error(ErrorCode::InvalidState, "non-finite entries");
  if (!is_hermitian(m, tol.hermitian)) {
    throw Error(ErrorCode::InvalidState, "state is not Hermitian");
  }
  const double tr = std::real(m.trace());
  if (std::abs(tr - static_cast<double>(rho.trace_target)) > tol.trace) {
    throw Error(ErrorCode::InvalidState, "trace " + std::to_string(tr) + " off target");
  }
  if (min_eigenvalue(m) < -tol.positivity) {
    throw Error(ErrorCode::InvalidState, "state is not positive semidefinite");
  }
}

// ---------------------------------------------------------------------------
// Metrics

/// Sum of singular values; equals the trace norm for normal matrices.
template <class Derived>
double nuclear_norm(const Eigen::MatrixBase<Derived>& a) {
  cmat m = a;
  return Eigen::JacobiSVD<cmat>(m).singularValues().sum();
}

/// Trace norm of a Hermitian matrix: sum of absolute eigenvalues.
template <class Derived>
double trace_norm(const Eigen::MatrixBase<Derived>& a, const Tolerances& tol = default_tolerances()) {
  const auto es = spectral_decompose(a, tol);
  return es.values.cwiseAbs().sum();
}

template <class DA, class DB>
double trace_distance(const Eigen::MatrixBase<DA>& a, const Eigen::MatrixBase<DB>& b) {
  return 0.5 * nuclear_norm(a - b);
}

/// Uhlmann root fidelity Tr sqrt(sqrt(r1) r2 sqrt(r1)), evaluated as the
/// nuclear norm of sqrt(r1) sqrt(r2). The two forms agree identically; the
/// singular-value route keeps absolute accuracy near rank-deficient states.
template <class Real>
double fidelity(const DensityMatrix<Real>& r1, const DensityMatrix<Real>& r2,
                const Tolerances& tol = default_tolerances()) {
  if (r1.dim() != r2.dim()) throw Error(ErrorCode::ShapeMismatch, "fidelity: dimension mismatch");
  if (std::abs(static_cast<double>(r1.trace_target) - 1.0) > tol.trace ||
      std::abs(static_cast<double>(r2.trace_target) - 1.0) > tol.trace) {
    throw Error(ErrorCode::InvalidState, "fidelity requires unit-trace states");
  }
  check_state(r1, tol);
  check_state(r2, tol);
  const cmat s1 = sqrt_psd(r1.matrix, tol);
  const cmat s2 = sqrt_psd(r2.matrix, tol);
  const double f = nuclear_norm(s1 * s2);
  return std::clamp(f, 0.0, 1.0);
}

template <class Real>
double bures_distance(const DensityMatrix<Real>& r1, const DensityMatrix<Real>& r2,
                      const Tolerances& tol = default_tolerances()) {
  const double f = fidelity(r1, r2, tol);
  return std::sqrt(std::max(0.0, 2.0 * (1.0 - f)));
}

/// Fidelity for diagnostics of propagated states: normalizes both inputs by
/// their traces and clamps every negative eigenvalue instead of throwing.
double diagnostic_fidelity(const cmat& a, const cmat& b);

// ---------------------------------------------------------------------------
// Pauli matrices and seeded random objects

namespace pauli {
cmat x();
cmat y();
cmat z();
}  // namespace pauli

/// d x k matrix of i.i.d. standard complex Gaussians (real and imaginary
/// parts each of variance 1/2).
cmat random_ginibre(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng);
/// G G^dagger / Tr(G G^dagger) with G of shape d x rank.
cmat random_state(Eigen::Index dim, Eigen::Index rank, std::mt19937_64& rng);
cmat random_hermitian(Eigen::Index dim, std::mt19937_64& rng);
/// Haar-distributed unitary from a phase-corrected QR of a Ginibre matrix.
cmat random_unitary(Eigen::Index dim, std::mt19937_64& rng);

}  // namespace sta

#endif  // STA_DM_CORE_HPP
