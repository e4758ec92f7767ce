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

#include "sta/dm_core.hpp"

namespace sta {

namespace {

cmat clamped_sqrt(const cmat& a) {
  cmat h = 0.5 * (a + a.adjoint());
  Eigen::SelfAdjointEigenSolver<cmat> solver(h);
  cvec root(solver.eigenvalues().size());
  for (Eigen::Index i = 0; i < root.size(); ++i) {
    root(i) = std::sqrt(std::max(solver.eigenvalues()(i), 0.0));
  }
  return solver.eigenvectors() * root.asDiagonal() * solver.eigenvectors().adjoint();
}

}  // namespace

double diagnostic_fidelity(const cmat& a, const cmat& b) {
  const double ta = std::real(a.trace());
  const double tb = std::real(b.trace());
  if (!(ta > 0.0) || !(tb > 0.0)) return 0.0;
  const double f = nuclear_norm(clamped_sqrt(a / ta) * clamped_sqrt(b / tb));
  return std::clamp(f, 0.0, 1.0);
}

namespace pauli {
cmat x() {
  cmat m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}
cmat y() {
  cmat m(2, 2);
  m << 0, cplx(0, -1), cplx(0, 1), 0;
  return m;
}
cmat z() {
  cmat m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}
}  // namespace pauli

cmat random_ginibre(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  cmat g(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(i, j) = cplx(re, im);
    }
  }
  return g;
}

cmat random_state(Eigen::Index dim, Eigen::Index rank, std::mt19937_64& rng) {
  if (dim < 1 || rank < 1 || rank > dim) {
    throw Error(ErrorCode::InvalidArgument, "random_state: need 1 <= rank <= dim");
  }
  const cmat g = random_ginibre(dim, rank, rng);
  cmat rho = g * g.adjoint();
  rho /= rho.trace();
  return 0.5 * (rho + rho.adjoint());
}

cmat random_hermitian(Eigen::Index dim, std::mt19937_64& rng) {
  const cmat g = random_ginibre(dim, dim, rng);
  return 0.5 * (g + g.adjoint());
}

cmat random_unitary(Eigen::Index dim, std::mt19937_64& rng) {
  const cmat g = random_ginibre(dim, dim, rng);
  Eigen::HouseholderQR<cmat> qr(g);
  cmat q = qr.householderQ();
  const cmat r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < dim; ++j) {
    const double mag = std::abs(r(j, j));
    if (mag > 0.0) q.col(j) *= r(j, j) / mag;
  }
  return q;
}

}  // namespace sta
