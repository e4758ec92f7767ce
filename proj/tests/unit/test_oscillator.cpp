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

#include "oracles.hpp"
#include "sta/models/oscillator.hpp"

using namespace sta;

namespace {

template <class F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no sta::Error thrown");
  return ErrorCode::InvalidArgument;
}

osc::Spec constant_spec(double omega, double beta, int n = 30) {
  osc::Spec s;
  s.omega = Schedule::constant(omega);
  s.beta = Schedule::constant(beta);
  s.tf = 1.0;
  s.truncation = n;
  return s;
}

// Fidelity of two commuting oscillator thermal states with Boltzmann factors u, v.
double thermal_pair_fidelity(double u, double v) {
  return std::sqrt((1.0 - u) * (1.0 - v)) / (1.0 - std::sqrt(u * v));
}

}  // namespace

TEST_SUITE("controls") {
  TEST_CASE("static thermal state") {
    const auto c = osc::controls(constant_spec(1.3, 0.7), 0.4);
    CHECK(c.big_omega == 0.0);
    CHECK(c.gamma == 0.0);
    CHECK(c.alpha == 0.0);
    CHECK(c.omega_cd2 == doctest::Approx(1.3 * 1.3).epsilon(1e-12));
  }

  TEST_CASE("constant Boltzmann factor is the unitary case") {
    osc::Spec s;
    s.tf = 1.0;
    s.omega = Schedule::polynomial5(1.0, 2.0, 1.0);
    s.beta = Schedule::callable([](double t) { return 1.0 / oracle::poly5(1.0, 2.0, 1.0, t); });
    for (double t : {0.2, 0.5, 0.8}) {
      const auto c = osc::controls(s, t);
      const double w = oracle::poly5(1.0, 2.0, 1.0, t);
      const double wd = oracle::poly5_dot(1.0, 2.0, 1.0, t);
      const double wdd = oracle::diff([](double x) { return oracle::poly5_dot(1.0, 2.0, 1.0, x); }, t, 1e-5);
      CHECK(std::abs(c.big_omega) <= 1e-6);
      CHECK(std::abs(c.gamma) <= 1e-6);
      CHECK(c.omega_cd2 == doctest::Approx(w * w - 0.75 * (wd / w) * (wd / w) + wdd / (2.0 * w)).epsilon(1e-6));
    }
  }

  TEST_CASE("closed forms on the heating stroke") {
    const auto s = osc::stroke(1.0, 2.0, 1.0, 0.1, 2.0);
    for (double t : {0.0, 0.3, 1.0, 1.7, 2.0}) {
      const auto c = osc::controls(s, t);
      const double w = oracle::poly5(1.0, 2.0, 2.0, t), wd = oracle::poly5_dot(1.0, 2.0, 2.0, t);
      const double b = oracle::poly5(1.0, 0.1, 2.0, t), bd = oracle::poly5_dot(1.0, 0.1, 2.0, t);
      const double u = std::exp(-b * w), ud = -(bd * w + b * wd) * u;
      CHECK(c.u == doctest::Approx(u).epsilon(1e-12));
      CHECK(c.u_dot == doctest::Approx(ud).epsilon(1e-9).scale(1.0));
      CHECK(c.alpha == doctest::Approx(-0.5 * wd / w + ud / (1.0 - u * u)).epsilon(1e-9).scale(1.0));
      CHECK(c.big_omega == doctest::Approx(ud / (1.0 - u * u)).epsilon(1e-9).scale(1.0));
      CHECK(c.gamma == doctest::Approx(w * ud / ((1.0 - u) * (1.0 - u))).epsilon(1e-9).scale(1.0));
      CHECK(c.omega_cd2 == doctest::Approx(c.omega_cd2_expanded).epsilon(1e-6).scale(1.0));
    }
    // endpoints: the rotated frame is the lab frame
    CHECK(std::abs(osc::controls(s, 0.0).alpha) <= 1e-8);
    CHECK(std::abs(osc::controls(s, 2.0).alpha) <= 1e-8);
  }

  TEST_CASE("cooling stroke inverts the trap for a short protocol") {
    const auto s = osc::stroke(1.0, 0.5, 1.0, 10.0, 2.0);
    double lowest = 1e300;
    for (int k = 0; k <= 200; ++k) lowest = std::min(lowest, osc::controls(s, 0.01 * k).omega_cd2);
    CHECK(lowest < 0.0);
  }

  TEST_CASE("degenerate Boltzmann factor") {
    CHECK(code_of([&] { osc::controls(constant_spec(1.0, 100.0), 0.5); }) == ErrorCode::DegenerateU);
  }

  TEST_CASE("validation") {
    auto s = constant_spec(1.0, 1.0);
    s.truncation = 1;
    CHECK(code_of([&] { osc::validate(s); }) == ErrorCode::InvalidArgument);
    s = constant_spec(-1.0, 1.0);
    CHECK(code_of([&] { osc::validate(s); }) == ErrorCode::InvalidArgument);
    s = constant_spec(1.0, 1.0);
    s.mass = 0.0;
    CHECK(code_of([&] { osc::validate(s); }) == ErrorCode::InvalidArgument);
    CHECK_NOTHROW(osc::validate(osc::stroke(1.0, 2.0, 1.0, 0.1, 2.0)));
  }
}

TEST_SUITE("gaussian") {
  TEST_CASE("zero-temperature limit is the ground-state projector") {
    const double k = 1.4;
    const auto g = osc::gaussian(k, 1e-10);
    CHECK(g.a == doctest::Approx(0.5 * k * k).epsilon(1e-8));
    CHECK(std::abs(g.c) <= 1e-8);
    CHECK(g.n == doctest::Approx(k / std::sqrt(M_PI)).epsilon(1e-8));
  }

  TEST_CASE("thermal position variance") {
    for (double beta : {0.1, 1.0, 5.0}) {
      for (double w : {0.5, 1.0, 2.0}) {
        const auto g = osc::gaussian(constant_spec(w, beta), 0.0);
        CHECK(g.position_variance() == doctest::Approx(oracle::thermal_position_variance(1.0, 1.0, w, beta)).epsilon(1e-12));
      }
    }
  }

  TEST_CASE("both identities hold on the strokes") {
    for (const auto& s : {osc::stroke(1.0, 2.0, 1.0, 0.1, 2.0), osc::stroke(1.0, 0.5, 1.0, 10.0, 2.0)}) {
      const auto ev = osc::gaussian_evolve(s, TimeGrid(0.0, 2.0, 400));
      CHECK(ev.states.size() == 401);
      CHECK(ev.max_omega_error <= 1e-6);
      CHECK(ev.max_gamma_error <= 1e-6);
      for (const auto& c : ev.checks) {
        CHECK(c.omega_from_norm == doctest::Approx(c.omega_closed).epsilon(1e-6).scale(1.0));
        CHECK(c.gamma_from_a == doctest::Approx(c.gamma_closed).epsilon(1e-6).scale(1.0));
        CHECK(c.gamma_from_c == doctest::Approx(c.gamma_closed).epsilon(1e-6).scale(1.0));
      }
    }
    CHECK(code_of([&] { osc::gaussian_evolve(osc::stroke(1.0, 2.0, 1.0, 0.1, 2.0), TimeGrid(0.0, 2.0, 40), 1e-30); }) ==
          ErrorCode::IdentityViolation);
  }

  TEST_CASE("fidelity of thermal pairs") {
    for (double b1 : {0.3, 1.0}) {
      for (double b2 : {0.5, 2.0}) {
        const auto m1 = osc::moments(osc::gaussian(1.0, std::exp(-b1)), 0.0, 1.0);
        const auto m2 = osc::moments(osc::gaussian(1.0, std::exp(-b2)), 0.0, 1.0);
        CHECK(osc::gaussian_fidelity(m1, m2, 1.0) ==
              doctest::Approx(thermal_pair_fidelity(std::exp(-b1), std::exp(-b2))).epsilon(1e-10));
      }
    }
    const auto m = osc::moments(osc::gaussian(1.0, 0.3), 0.4, 1.0);
    CHECK(osc::gaussian_fidelity(m, m, 1.0) == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_SUITE("fock") {
  TEST_CASE("operator matrix elements") {
    const auto ops = osc::fock_operators(8, 2.0, 0.5, 1.5);
    const cmat x = ops.x, p = ops.p, x2 = ops.x2, p2 = ops.p2;
    const double sx = std::sqrt(0.5 / (2.0 * 2.0 * 1.5)), sp = std::sqrt(0.5 * 2.0 * 1.5 / 2.0);
    for (int n = 0; n + 1 < 8; ++n) {
      CHECK(std::abs(x(n, n + 1) - sx * std::sqrt(n + 1.0)) < 1e-14);
      CHECK(std::abs(p(n + 1, n) - cplx(0, sp * std::sqrt(n + 1.0))) < 1e-14);
    }
    // projections of the exact squares: <n|x^2|n> = (hbar / 2 m w)(2n + 1) including the last level
    for (int n = 0; n < 8; ++n) CHECK(std::real(x2(n, n)) == doctest::Approx(sx * sx * (2 * n + 1)));
    const cmat xx = x * x, pp = p * p;
    CHECK((x2 - xx).topLeftCorner(7, 7).cwiseAbs().maxCoeff() < 1e-13);
    CHECK((p2 - pp).topLeftCorner(7, 7).cwiseAbs().maxCoeff() < 1e-13);
    const cmat comm = x * p - p * x;
    CHECK((comm - cplx(0, 0.5) * cmat::Identity(8, 8)).topLeftCorner(7, 7).cwiseAbs().maxCoeff() < 1e-13);
  }

  TEST_CASE("double commutator is Hermitian and traceless") {
    const auto ops = osc::fock_operators(12, 1.0, 1.0, 1.0);
    DephasingControls c;
    c.hamiltonian = cmat(cmat::Zero(12, 12)).sparseView();
    c.position = ops.x;
    c.strength = 1.0;
    std::mt19937_64 rng(51);
    for (int rep = 0; rep < 10; ++rep) {
      const cmat d = rhs(c, random_state(12, 12, rng));
      CHECK(hermiticity_defect(d) <= 1e-12);
      CHECK(std::abs(d.trace()) <= 1e-12);
    }
  }

  TEST_CASE("thermal state is stationary without driving") {
    const auto s = constant_spec(1.0, 1.0, 40);
    const auto ops = osc::fock_operators(s);
    const cmat rho = osc::thermal_fock(1.0, 1.0, ops);
    CHECK(rhs(osc::fock_controls(s, ops, 0.5), rho).cwiseAbs().maxCoeff() <= 1e-8);
    CHECK(std::real(rho.trace()) == doctest::Approx(1.0).epsilon(1e-10));
  }

  TEST_CASE("truncation guard") {
    auto hot = osc::stroke(1.0, 2.0, 1.0, 0.1, 2.0, 60);
    CHECK(code_of([&] { osc::check_truncation(hot); }) == ErrorCode::TruncationTooSmall);
    Tolerances loose;
    loose.truncation_tail = 1e-5;
    CHECK(osc::check_truncation(hot, loose) == doctest::Approx(std::pow(std::exp(-0.2), 59)).epsilon(1e-10));
    CHECK(osc::check_truncation(osc::stroke(1.0, 0.5, 1.0, 10.0, 2.0, 60)) < 1e-8);
  }

  TEST_CASE("moments match the Fock projection of the kernel") {
    const auto ops = osc::fock_operators(60, 1.0, 1.0, 1.0);
    for (double chirp : {0.0, 0.3, -0.6}) {
      const auto g = osc::gaussian(1.2, 0.2);
      const auto m = osc::moments(g, chirp, 1.0);
      const cmat rho = osc::gaussian_to_fock(g, chirp, ops);
      const cmat x2 = ops.x2, p2 = ops.p2, xp = ops.xp;
      CHECK(std::real(rho.trace()) == doctest::Approx(1.0).epsilon(1e-8));
      CHECK(osc::position_variance(rho, ops) == doctest::Approx(m.xx).epsilon(1e-8));
      CHECK(std::real((rho * p2).trace()) == doctest::Approx(m.pp).epsilon(1e-8));
      CHECK(0.5 * std::real((rho * xp).trace()) == doctest::Approx(m.xp).epsilon(1e-8).scale(1.0));
      CHECK(m.uncertainty_margin(1.0) >= -1e-12);
    }
    const cmat th = osc::thermal_fock(1.0, 2.0, ops);
    CHECK(osc::position_variance(th, ops) == doctest::Approx(oracle::thermal_position_variance(1.0, 1.0, 1.0, 2.0)).epsilon(1e-10));
  }

  TEST_CASE("Gaussian fidelity agrees with the Fock fidelity") {
    const auto ops = osc::fock_operators(60, 1.0, 1.0, 1.0);
    const auto g1 = osc::gaussian(1.0, 0.3), g2 = osc::gaussian(1.3, 0.1);
    const double f_fock = oracle::fidelity(osc::gaussian_to_fock(g1, 0.2, ops), osc::gaussian_to_fock(g2, -0.1, ops));
    const double f_gauss = osc::gaussian_fidelity(osc::moments(g1, 0.2, 1.0), osc::moments(g2, -0.1, 1.0), 1.0);
    CHECK(f_gauss == doctest::Approx(f_fock).epsilon(1e-7));
  }

  TEST_CASE("Fock propagation follows the moment equations on a mild stroke") {
    const auto s = osc::stroke(1.0, 1.5, 2.0, 1.0, 2.0, 30);  // gamma > 0 throughout
    const auto ops = osc::fock_operators(s);
    const TimeGrid g(0.0, 2.0, 2000);
    const auto rec = integrate_rhs(GeneratorKind::OscillatorDephasing,
                                   [&](double t, const cmat& r) -> cmat { return rhs(osc::fock_controls(s, ops, t), r); }, g,
                                   osc::rotated_target(s, ops, 0.0));
    const auto mom = osc::propagate_moments(s, g);
    double worst = 0.0;
    for (int k = 0; k <= g.steps(); k += 100) {
      const auto i = static_cast<std::size_t>(k);
      worst = std::max(worst, std::abs(osc::position_variance(rec.states[i], ops) / mom[i].xx - 1.0));
    }
    CHECK(worst <= 1e-3);
    CHECK(oracle::fidelity(rec.states.back(), osc::thermal_fock(1.5, 1.0, ops)) >= 0.999);
  }
}

TEST_SUITE("moments") {
  TEST_CASE("moment propagation tracks the rotated target on both strokes") {
    for (const auto& s : {osc::stroke(1.0, 2.0, 1.0, 0.1, 2.0), osc::stroke(1.0, 0.5, 1.0, 10.0, 2.0)}) {
      const TimeGrid g(0.0, 2.0, 4000);
      const auto mom = osc::propagate_moments(s, g);
      double fid = 1.0, margin = 1e300;
      for (int k = 0; k <= g.steps(); k += 200) {
        const auto& m = mom[static_cast<std::size_t>(k)];
        fid = std::min(fid, osc::gaussian_fidelity(m, osc::target_moments(s, g.node(k)), 1.0));
        margin = std::min(margin, m.uncertainty_margin(1.0));
      }
      CHECK(fid >= 1.0 - 1e-6);
      CHECK(margin >= 0.0);
      // the final target is the lab-frame thermal state
      const auto end = osc::target_moments(s, 2.0);
      CHECK(end.xx == doctest::Approx(oracle::thermal_position_variance(1.0, 1.0, s.omega.end_value(), s.beta.end_value())).epsilon(1e-8));
      CHECK(std::abs(end.xp) <= 1e-8);
    }
  }
}
