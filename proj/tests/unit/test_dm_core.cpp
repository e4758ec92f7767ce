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


#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "sta/dm_core.hpp"

using namespace sta;

namespace {

State st(const cmat& m) { return {m, 1.0}; }

cmat ket_proj(int i, int d) {
  cmat p = cmat::Zero(d, d);
  p(i, i) = 1.0;
  return p;
}

}  // namespace

TEST_SUITE("spectral_decompose") {
  TEST_CASE("identity has a double unit eigenvalue and an orthonormal basis") {
    const auto es = spectral_decompose(cmat::Identity(2, 2));
    CHECK(es.values(0) == doctest::Approx(1.0));
    CHECK(es.values(1) == doctest::Approx(1.0));
    CHECK((es.vectors.adjoint() * es.vectors - cmat::Identity(2, 2)).norm() < 1e-12);
  }

  TEST_CASE("sigma_z gives -1 on |1> and +1 on |0>") {
    const auto es = spectral_decompose(pauli::z());
    CHECK(es.values(0) == doctest::Approx(-1.0));
    CHECK(es.values(1) == doctest::Approx(1.0));
    CHECK(std::abs(es.vectors(1, 0)) == doctest::Approx(1.0));
    CHECK(std::abs(es.vectors(0, 1)) == doctest::Approx(1.0));
  }

  TEST_CASE("half of sigma_z plus sigma_x has eigenvalues +-sqrt(2)/2") {
    const cmat a = 0.5 * (pauli::z() + pauli::x());
    // 2x2 closed form: trace/2 +- sqrt((a00-a11)^2/4 + |a01|^2)
    const double half_gap = std::sqrt(std::norm(a(0, 0) - a(1, 1)) / 4.0 + std::norm(a(0, 1)));
    const auto es = spectral_decompose(a);
    CHECK(es.values(0) == doctest::Approx(-half_gap).epsilon(1e-12));
    CHECK(es.values(1) == doctest::Approx(half_gap).epsilon(1e-12));
    CHECK(half_gap == doctest::Approx(0.70711).epsilon(1e-5));
  }

  TEST_CASE("non-Hermitian input is rejected") {
    cmat a = pauli::x();
    a(0, 1) = 2.0;
    try {
      spectral_decompose(a);
      FAIL("expected NotHermitian");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::NotHermitian);
    }
  }

  TEST_CASE("reconstruction is exact to 1e-9 relative on random Hermitian matrices") {
    std::mt19937_64 rng(7);
    for (int d : {2, 3, 5, 8, 16}) {
      for (int rep = 0; rep < 20; ++rep) {
        const cmat a = random_hermitian(d, rng);
        const auto es = spectral_decompose(a);
        const cmat back = es.vectors * es.values.cast<cplx>().asDiagonal() * es.vectors.adjoint();
        CHECK((back - a).norm() <= 1e-9 * a.norm());
        CHECK((es.vectors.adjoint() * es.vectors - cmat::Identity(d, d)).norm() <= 1e-10);
        for (Eigen::Index i = 1; i < d; ++i) CHECK(es.values(i) >= es.values(i - 1));
      }
    }
  }
}

TEST_SUITE("fidelity") {
  TEST_CASE("identical states have unit fidelity") {
    std::mt19937_64 rng(1);
    const cmat r = random_state(3, 3, rng);
    CHECK(fidelity(st(r), st(r)) == doctest::Approx(1.0).epsilon(1e-10));
  }

  TEST_CASE("orthogonal pure states have zero fidelity") {
    CHECK(fidelity(st(ket_proj(0, 2)), st(ket_proj(1, 2))) == doctest::Approx(0.0));
  }

  TEST_CASE("maximally mixed against a pure state matches the matrix-function oracle") {
    const cmat mixed = cmat::Identity(2, 2) / 2.0;
    const double expect = oracle::fidelity(mixed, ket_proj(0, 2));
    CHECK(expect == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
    CHECK(fidelity(st(mixed), st(ket_proj(0, 2))) == doctest::Approx(expect).epsilon(1e-12));
  }

  TEST_CASE("symmetric and equal to the oracle on random pairs") {
    std::mt19937_64 rng(2024);
    for (int d : {2, 3, 4, 8}) {
      double worst_swap = 0.0, worst_oracle = 0.0;
      for (int rep = 0; rep < 100; ++rep) {
        const cmat a = random_state(d, 1 + rep % d, rng);
        const cmat b = random_state(d, d, rng);
        const double fab = fidelity(st(a), st(b));
        worst_swap = std::max(worst_swap, std::abs(fab - fidelity(st(b), st(a))));
        // sqrt of round-off eigenvalues limits the oracle to ~1e-8 on rank-deficient pairs
        const cmat c = random_state(d, d, rng);
        worst_oracle = std::max(worst_oracle, std::abs(fidelity(st(c), st(b)) - oracle::fidelity(c, b)));
      }
      CAPTURE(d);
      CHECK(worst_swap <= 1e-10);
      CHECK(worst_oracle <= 1e-10);
    }
  }

  TEST_CASE("commuting diagonal states reduce to the Bhattacharyya coefficient") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.01, 1.0);
    for (int d : {2, 3, 4, 8}) {
      Eigen::VectorXd p(d), q(d);
      for (int i = 0; i < d; ++i) {
        p(i) = u(rng);
        q(i) = u(rng);
      }
      p /= p.sum();
      q /= q.sum();
      const double bc = (p.array() * q.array()).sqrt().sum();
      const cmat a = p.cast<cplx>().asDiagonal();
      const cmat b = q.cast<cplx>().asDiagonal();
      CHECK(fidelity(st(a), st(b)) == doctest::Approx(bc).epsilon(1e-10));
    }
  }

  TEST_CASE("states off their trace target are rejected") {
    const cmat r = 0.7 * cmat::Identity(2, 2);
    CHECK_THROWS_AS(fidelity(st(r), st(ket_proj(0, 2))), Error);
  }

  TEST_CASE("indefinite matrices are rejected") {
    cmat r = ket_proj(0, 2) * 1.1;
    r(1, 1) = -0.1;
    try {
      fidelity(st(r), st(ket_proj(0, 2)));
      FAIL("expected InvalidState");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::InvalidState);
    }
  }

  TEST_CASE("diagnostic fidelity normalizes traces and tolerates tiny negatives") {
    std::mt19937_64 rng(5);
    const cmat a = random_state(3, 3, rng);
    const cmat b = random_state(3, 3, rng);
    const double f = fidelity(st(a), st(b));
    CHECK(diagnostic_fidelity(2.5 * a, 0.5 * b) == doctest::Approx(f).epsilon(1e-10));
    cmat c = b;
    c(0, 0) -= 1e-7;  // a small breach
    CHECK(std::isfinite(diagnostic_fidelity(a, c)));
  }
}

TEST_SUITE("bures_distance") {
  TEST_CASE("zero for identical states") {
    std::mt19937_64 rng(9);
    const cmat r = random_state(4, 4, rng);
    CHECK(bures_distance(st(r), st(r)) == doctest::Approx(0.0).epsilon(1e-5));
  }

  TEST_CASE("sqrt(2) for orthogonal pure states") {
    CHECK(bures_distance(st(ket_proj(0, 3)), st(ket_proj(2, 3))) == doctest::Approx(std::sqrt(2.0)));
  }

  TEST_CASE("maximally mixed against a pure state") {
    const double f = oracle::fidelity(cmat::Identity(2, 2) / 2.0, ket_proj(0, 2));
    const double expect = std::sqrt(2.0 * (1.0 - f));
    CHECK(expect == doctest::Approx(0.76537).epsilon(1e-5));
    CHECK(bures_distance(st(cmat::Identity(2, 2) / 2.0), st(ket_proj(0, 2))) ==
          doctest::Approx(expect).epsilon(1e-12));
  }

  TEST_CASE("triangle inequality on random triples") {
    std::mt19937_64 rng(11);
    for (int rep = 0; rep < 200; ++rep) {
      const int d = 2 + rep % 4;
      const State a = st(random_state(d, d, rng));
      const State b = st(random_state(d, 1 + rep % d, rng));
      const State c = st(random_state(d, d, rng));
      CHECK(bures_distance(a, c) <= bures_distance(a, b) + bures_distance(b, c) + 1e-10);
    }
  }
}

TEST_SUITE("trace_norm") {
  TEST_CASE("zero matrix") { CHECK(trace_norm(cmat::Zero(3, 3)) == 0.0); }
  TEST_CASE("sigma_z") { CHECK(trace_norm(pauli::z()) == doctest::Approx(2.0)); }
  TEST_CASE("diagonal with mixed signs") {
    Eigen::Vector3d v(3.0, -1.0, 0.5);
    CHECK(trace_norm(cmat(v.cast<cplx>().asDiagonal())) == doctest::Approx(4.5));
  }
  TEST_CASE("agrees with the nuclear norm and the oracle on Hermitian matrices") {
    std::mt19937_64 rng(13);
    for (int rep = 0; rep < 30; ++rep) {
      const cmat a = random_hermitian(2 + rep % 6, rng);
      CHECK(trace_norm(a) == doctest::Approx(oracle::trace_norm_hermitian(a)).epsilon(1e-12));
      CHECK(nuclear_norm(a) == doctest::Approx(trace_norm(a)).epsilon(1e-10));
    }
  }
  TEST_CASE("non-Hermitian input is rejected") {
    CHECK_THROWS_AS(trace_norm(pauli::x() * pauli::z()), Error);
  }
  TEST_CASE("trace distance of qubits is half the Bloch-vector distance") {
    std::mt19937_64 rng(17);
    for (int rep = 0; rep < 20; ++rep) {
      const cmat a = random_state(2, 2, rng);
      const cmat b = random_state(2, 1, rng);
      auto bloch = [](const cmat& r) {
        return Eigen::Vector3d(2 * std::real(r(0, 1)), -2 * std::imag(r(0, 1)), std::real(r(0, 0) - r(1, 1)));
      };
      CHECK(trace_distance(a, b) == doctest::Approx(0.5 * (bloch(a) - bloch(b)).norm()).epsilon(1e-12));
    }
  }
}

TEST_SUITE("state helpers") {
  TEST_CASE("sqrt_psd clamps eigenvalues inside the positivity tolerance") {
    cmat a = ket_proj(0, 2);
    a(1, 1) = -5e-10;
    const cmat s = sqrt_psd(a);
    CHECK(std::abs(s(1, 1)) == 0.0);
    a(1, 1) = -1e-6;
    CHECK_THROWS_AS(sqrt_psd(a), Error);
  }

  TEST_CASE("check_state accepts valid states and rejects bad ones") {
    std::mt19937_64 rng(19);
    CHECK_NOTHROW(check_state(st(random_state(4, 2, rng))));
    CHECK_THROWS_AS(check_state(st(cmat::Zero(2, 3))), Error);
    cmat nan = ket_proj(0, 2);
    nan(0, 0) = std::nan("");
    CHECK_THROWS_AS(check_state(st(nan)), Error);
    CHECK_THROWS_AS(check_state(st(pauli::x() * cplx(0, 1) + ket_proj(0, 2))), Error);
    CHECK_NOTHROW(check_state(State{2.0 * ket_proj(0, 2), 2.0}));
  }

  TEST_CASE("random states carry unit trace and the requested rank") {
    std::mt19937_64 rng(23);
    for (int d : {2, 4, 6}) {
      for (int r = 1; r <= d; ++r) {
        const cmat s = random_state(d, r, rng);
        CHECK(std::abs(s.trace() - 1.0) < 1e-12);
        Eigen::SelfAdjointEigenSolver<cmat> es(s);
        int positive = 0;
        for (int i = 0; i < d; ++i) positive += es.eigenvalues()(i) > 1e-12;
        CHECK(positive == r);
        CHECK(es.eigenvalues().minCoeff() > -1e-14);
      }
    }
  }

  TEST_CASE("random unitaries are unitary and seeding is reproducible") {
    std::mt19937_64 a(29), b(29);
    const cmat u = random_unitary(5, a);
    CHECK((u.adjoint() * u - cmat::Identity(5, 5)).norm() < 1e-12);
    CHECK((random_unitary(5, b) - u).norm() == 0.0);
  }

  TEST_CASE("Pauli algebra") {
    CHECK((pauli::x() * pauli::y() - cplx(0, 1) * pauli::z()).norm() < 1e-15);
    CHECK((commutator(pauli::x(), pauli::y()) - cplx(0, 2) * pauli::z()).norm() < 1e-15);
    CHECK(anticommutator(pauli::x(), pauli::z()).norm() < 1e-15);
    CHECK((pauli::y() - oracle::sigma_y()).norm() == 0.0);
  }
}
