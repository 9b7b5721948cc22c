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
#include "gyroqfi/protocol.hpp"
#include "gyroqfi/states.hpp"

using namespace gyroqfi;
using std::numbers::pi;

namespace {

GyroParams at(double theta, double J = 1.0, double t = 1.0) {
  GyroParams p;
  p.theta = theta;
  p.J = J;
  p.t_omega = t;
  return p;
}

}  // namespace

TEST_CASE("phase derivatives match central differences") {
  for (double theta : {-2.0, 0.0, 0.4, 1.9, 5.0}) {
    const auto p = at(theta, 1.3, 0.7);
    const double h = 1e-6;
    const auto hi = phase_set(at(theta + h, 1.3, 0.7));
    const auto lo = phase_set(at(theta - h, 1.3, 0.7));
    const auto d = phase_derivatives(p);
    CHECK(d.phi0 == doctest::Approx((hi.phi0 - lo.phi0) / (2 * h)).epsilon(1e-8));
    CHECK(d.phi1 == doctest::Approx((hi.phi1 - lo.phi1) / (2 * h)).epsilon(1e-8));
    CHECK(d.phi2 == doctest::Approx((hi.phi2 - lo.phi2) / (2 * h)).epsilon(1e-8));
    CHECK(d.phi_plus == doctest::Approx((hi.phi_plus - lo.phi_plus) / (2 * h)).epsilon(1e-8));
    CHECK(d.phi_minus == doctest::Approx((hi.phi_minus - lo.phi_minus) / (2 * h)).epsilon(1e-8));
  }
}

TEST_CASE("sum and difference slopes reduce to single cosines") {
  for (double theta : {0.0, 0.8, 2.5}) {
    const auto d = phase_derivatives(at(theta, 2.0, 1.5));
    const double jt = 3.0;
    CHECK(d.phi_plus == doctest::Approx(2.0 * jt * std::cos(theta / 3 + pi / 6)));
    CHECK(d.phi_minus ==
          doctest::Approx(2.0 / std::sqrt(3.0) * jt * std::cos(theta / 3 - pi / 3)));
  }
}

TEST_CASE("generator weights on sites 1 and 2 combine the phase slopes") {
  for (double theta : {0.0, 1.1, 3.7}) {
    const auto p = at(theta, 0.9, 1.2);
    const auto d = phase_derivatives(p);
    const auto w = generator_coefficients(p);
    CHECK(w[0] == doctest::Approx(d.phi0));
    CHECK(w[1] == doctest::Approx(d.phi0 + d.phi1));
    CHECK(w[2] == doctest::Approx(d.phi0 + d.phi2));
  }
}

TEST_CASE("flow transform is unitary and diagonalizes the ring") {
  const auto f = flow_transform();
  CHECK((f * f.adjoint() - ModeMatrix3::Identity()).cwiseAbs().maxCoeff() < 1e-15);
  const ModeMatrix3 d = f * ring_hopping() * f.adjoint();
  CHECK((d - ModeMatrix3(d.diagonal().asDiagonal())).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("two forms of the rotation generator agree") {
  for (double theta : {0.0, 0.6, 2.0, 4.4}) {
    const auto p = at(theta, 1.1, 0.8);
    CHECK((rotation_generator_flow(p) - rotation_generator_sites(p)).cwiseAbs().maxCoeff() <
          1e-14);
  }
}

TEST_CASE("conjugated generator is diagonal") {
  for (int k = 0; k < 8; ++k) CHECK(verify_appendix_a(at(2.0 * pi * k / 8.0)) < 1e-12);
}

TEST_CASE("three-mode basis") {
  CHECK(ThreeModeState::basis().size() == 35);
  CHECK_THROWS_AS(ThreeModeState::fock(3, 2, 0), SizeError);
  const auto noon6 = build_state({Family::NOON, 6.0, std::nullopt, 0.0, Truncation::adaptive()});
  CHECK_THROWS_AS(ThreeModeState::from_two_mode(noon6), SizeError);
}

TEST_CASE("many-body operator reproduces particle counting") {
  ModeMatrix3 n1 = ModeMatrix3::Zero();
  n1(1, 1) = 1.0;
  const auto op = many_body_operator(n1);
  const auto& b = ThreeModeState::basis();
  for (std::size_t i = 0; i < b.size(); ++i) CHECK(op(i, i).real() == doctest::Approx(b[i][1]).epsilon(1e-15));
  CHECK((op - Eigen::MatrixXcd(op.diagonal().asDiagonal())).cwiseAbs().maxCoeff() < 1e-15);
  const auto hop = many_body_operator(ring_hopping());
  CHECK((hop - hop.adjoint()).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("simulated protocol QFI equals the generator QFI") {
  for (double theta : {0.3, 1.7}) {
    const auto p = at(theta, 1.0, 1.0);
    for (int n = 1; n <= 4; ++n) {
      const auto s = ThreeModeState::from_two_mode(
          build_state({Family::NOON, double(n), std::nullopt, 0.0, Truncation::adaptive()}));
      const double gen = generator_qfi(s, p);
      CHECK(simulate_protocol(s, p) == doctest::Approx(gen).epsilon(1e-6));
      CHECK(simulate_protocol(s, p, false) == doctest::Approx(gen).epsilon(1e-6));
    }
    const auto mixed_sites = ThreeModeState::fock(1, 2, 1);
    CHECK(simulate_protocol(mixed_sites, p) ==
          doctest::Approx(generator_qfi(mixed_sites, p)).epsilon(1e-6));
  }
}

TEST_CASE("generator observable for two-mode probes") {
  const auto p = at(0.9);
  const auto noon = build_state({Family::NOON, 2.0, std::nullopt, 0.0, Truncation::adaptive()});
  const auto obs = generator_observable(p, noon.basis());
  const auto w = generator_coefficients(p);
  CHECK(obs.weights()(*noon.basis().index_of(2, 0)) == doctest::Approx(2.0 * w[1]));
  CHECK(obs.weights()(*noon.basis().index_of(0, 2)) == doctest::Approx(2.0 * w[2]));
}
