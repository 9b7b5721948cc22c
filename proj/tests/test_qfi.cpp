// Copyright 2026 The gyroqfi Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <doctest.h>

#include <cmath>
#include <numbers>

#include "gyroqfi/errors.hpp"
#include "gyroqfi/loss.hpp"
#include "gyroqfi/qfi.hpp"
#include "gyroqfi/states.hpp"

using namespace gyroqfi;

namespace {

TwoModeState at_N(Family f, double n, Truncation t = Truncation::adaptive()) {
  return build_state({f, n, std::nullopt, 0.0, t});
}

}  // namespace

TEST_CASE("number-state QFI") {
  CHECK(qfi_pure(at_N(Family::NOON, 2.0), PhaseChoice::PhiMinus) == doctest::Approx(4.0));
  CHECK(qfi_pure(at_N(Family::BAT, 4.0), PhaseChoice::PhiMinus) == doctest::Approx(12.0));
  CHECK(qfi_pure(at_N(Family::Uncorrelated, 4.0), PhaseChoice::PhiMinus) == doctest::Approx(4.0));
  CHECK(qfi_pure(at_N(Family::MaxEntangledM, 2.0), PhaseChoice::PhiPlus) == doctest::Approx(4.0));
  CHECK(qfi_pure(TwoModeState::vacuum(FockBasis::paired(4)), PhaseChoice::Phi1) == 0.0);
}

TEST_CASE("lossless QFI at N = 2") {
  CHECK(qfi_pure(at_N(Family::SES, 2.0), PhaseChoice::Phi1) == doctest::Approx(40.0).epsilon(1e-8));
  CHECK(qfi_pure(at_N(Family::ECS, 2.0), PhaseChoice::Phi1) == doctest::Approx(8.87086).epsilon(1e-5));
  CHECK(qfi_pure(at_N(Family::EESS, 2.0), PhaseChoice::Phi1) == doctest::Approx(59.75).epsilon(1e-3));
  // Var(n1) of the SES is exactly 10 at N = 2.
  const auto ses = at_N(Family::SES, 2.0);
  CHECK(variance(ses, DiagonalObservable::number1(ses.basis())) == doctest::Approx(10.0).epsilon(1e-8));
}

TEST_CASE("Mandel Q") {
  CHECK(mandel_q(at_N(Family::SES, 2.0), 1) == doctest::Approx(9.0).epsilon(1e-8));
  CHECK(mandel_q(at_N(Family::EESS, 2.0), 1) == doctest::Approx(13.94).epsilon(1e-3));
  const auto coherent = embed_mode1(coherent_amplitudes(3.0, 0.0, 120));
  CHECK(std::abs(mandel_q(coherent, 1)) < 1e-10);
  CHECK_THROWS_AS(mandel_q(coherent, 2), UndefinedQError);
  for (Family f : {Family::NOON, Family::ECS, Family::SES, Family::EESS})
    for (double n : {1.0, 2.0, 4.0}) {
      const auto s = at_N(f, n);
      const double fq = qfi_pure(s, PhaseChoice::Phi1);
      CHECK(std::abs(fq - 2.0 * n * (mandel_q(s, 1) + 1.0)) < 1e-9 * fq);
    }
}

TEST_CASE("relative-phase QFI of path-symmetric states is Var(n1 - n2)") {
  const auto s = at_N(Family::ECS, 3.0);
  CHECK(qfi_pure(s, PhaseChoice::PhiMinus) ==
        doctest::Approx(variance(s, DiagonalObservable::linear(s.basis(), 1.0, -1.0))));
}

TEST_CASE("theta-direct QFI matches the chain rule for number-conserving probes") {
  GyroParams p;
  p.theta = 0.8;
  const auto s = at_N(Family::NOON, 3.0);
  const auto d = phase_derivatives(p);
  // Total number is fixed, so the phi0 term drops and F = 4 Var(phi1' n1 + phi2' n2).
  const double expected =
      4.0 * variance(s, DiagonalObservable::linear(s.basis(), d.phi1, d.phi2));
  CHECK(qfi_pure(s, PhaseChoice::ThetaDirect, p) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("mixed QFI reductions") {
  const auto s = at_N(Family::SES, 2.0);
  const auto n1 = DiagonalObservable::number1(s.basis());
  CHECK(qfi_mixed(projector(s), n1) == doctest::Approx(qfi_pure(s, PhaseChoice::Phi1)).epsilon(1e-10));

  // Diagonal mixture commutes with the generator.
  const auto b = FockBasis::paired(2);
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(5, 5);
  rho(0, 0) = 0.5;
  rho(2, 2) = 0.5;
  CHECK(std::abs(qfi_mixed(HermitianMatrix(b, rho), DiagonalObservable::number1(b))) < 1e-12);

  rho(0, 0) = 1.2;
  rho(2, 2) = -0.2;
  CHECK_THROWS_AS(qfi_mixed(HermitianMatrix(b, rho), DiagonalObservable::number1(b)),
                  InvalidDensityError);
}

TEST_CASE("lossy NOON keeps only its two-particle coherence") {
  // rho = eta^2 |NOON><NOON| + eta(1-eta)(|1,0><1,0| + |0,1><0,1|) + (1-eta)^2 |0,0><0,0|.
  // The number states commute with n1, so F = eta^2 * 4 Var_NOON(n1) = 4 eta^2.
  const auto s = at_N(Family::NOON, 2.0);
  for (double eta : {0.2, 0.6, 0.9}) {
    const auto rho = kraus_apply(s, LossChannel(eta));
    CHECK(qfi_mixed(rho, DiagonalObservable::number1(s.basis())) ==
          doctest::Approx(4.0 * eta * eta).epsilon(1e-12));
  }
}

TEST_CASE("mixed QFI is stable under truncation doubling") {
  const auto s = at_N(Family::SES, 2.0);
  const auto wide = at_N(Family::SES, 2.0, Truncation::fixed(2 * s.n_max()));
  const LossChannel ch(0.8);
  const double a = qfi_mixed(kraus_apply(s, ch), DiagonalObservable::number1(s.basis()));
  const double b = qfi_mixed(kraus_apply(wide, ch), DiagonalObservable::number1(wide.basis()));
  CHECK(std::abs(a - b) < 1e-8 * b);
}

TEST_CASE("closed forms") {
  CHECK(qfi_analytic(Family::NOON, 6.0, PhaseChoice::PhiMinus).value == 36.0);
  CHECK(qfi_analytic(Family::BAT, 4.0, PhaseChoice::PhiMinus).value == 12.0);
  const auto ses = qfi_analytic(Family::SES, 10.0, PhaseChoice::Phi1);
  CHECK(ses.asymptotic);
  CHECK(ses.value == 540.0);
  CHECK_THROWS_AS(qfi_analytic(Family::EESS_M, 2.0, PhaseChoice::Phi1), NoFormulaError);
  CHECK_THROWS_AS(qfi_analytic(Family::NOON, 2.0, PhaseChoice::Phi1), NoFormulaError);

  for (double r : {0.3, 0.8, 1.3, 2.0}) {
    const auto s = build_state({Family::EESS, 1.0, r, 0.0, Truncation::adaptive()});
    const double f = qfi_pure(s, PhaseChoice::Phi1);
    CHECK(eess_qfi_closed_form(r) == doctest::Approx(f).epsilon(1e-8));
    CHECK(eess_qfi_moment_form(r) == doctest::Approx(f).epsilon(1e-8));
  }
  const auto eess = qfi_analytic(Family::EESS, 2.0, PhaseChoice::Phi1);
  CHECK_FALSE(eess.asymptotic);
  CHECK(eess.value == doctest::Approx(qfi_pure(at_N(Family::EESS, 2.0), PhaseChoice::Phi1)).epsilon(1e-8));
}

TEST_CASE("precision report") {
  GyroParams p;
  const auto r1 = phase_uncertainty(16.0, p, PhaseChoice::Phi1);
  CHECK(r1.delta_phase == doctest::Approx(0.25));
  p.mu = 4;
  CHECK(phase_uncertainty(16.0, p, PhaseChoice::Phi1).delta_phase == doctest::Approx(0.125));
  p.mu = 1;

  // M-state with phi+: 1/(2 N J t).
  const double n = 3.0;
  CHECK(phase_uncertainty(n * n, p, PhaseChoice::PhiPlus).delta_theta_min ==
        doctest::Approx(1.0 / (2.0 * n)));
  // ECS asymptote with phi1: sqrt3 / (2 sqrt(N(N+2))).
  CHECK(phase_uncertainty(n * (n + 2), p, PhaseChoice::Phi1).delta_theta_min ==
        doctest::Approx(std::sqrt(3.0) / (2.0 * std::sqrt(n * (n + 2)))));
  // At theta = 0 the phi1 slope is already maximal.
  CHECK(r1.delta_theta == doctest::Approx(r1.delta_theta_min));
  CHECK_THROWS_AS(phase_uncertainty(0.0, p, PhaseChoice::Phi1), NoInformationError);
}

TEST_CASE("rotation rate") {
  const double w = rotation_rate(1e-3, 1e-4, 1.44e-25);
  CHECK(w == doctest::Approx(4.6014e-4).epsilon(1e-4));
  CHECK(rotation_rate(2e-3, 1e-4, 1.44e-25) == doctest::Approx(2 * w));
  CHECK(rotation_rate(1e-3, 2e-4, 1.44e-25) == doctest::Approx(w / 4));
  CHECK_THROWS_AS(rotation_rate(1e-3, 0.0, 1.0), DomainError);
  GyroParams p;
  const auto r = phase_uncertainty(4.0, p, PhaseChoice::Phi1, Geometry{1e-4, 1.44e-25});
  CHECK(*r.delta_omega == doctest::Approx(rotation_rate(r.delta_theta_min, 1e-4, 1.44e-25)));
}

TEST_CASE("phase choice names") {
  for (auto c : {PhaseChoice::Phi1, PhaseChoice::Phi2, PhaseChoice::PhiPlus, PhaseChoice::PhiMinus,
                 PhaseChoice::ThetaDirect})
    CHECK(*parse_phase_choice(phase_choice_name(c)) == c);
  CHECK_FALSE(parse_phase_choice("phi3").has_value());
}
