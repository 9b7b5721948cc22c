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

#include "gyroqfi/protocol.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "gyroqfi/errors.hpp"

namespace gyroqfi {

namespace {

using std::numbers::pi;
constexpr double kSqrt3 = std::numbers::sqrt3;
constexpr Complex kI{0.0, 1.0};

// Flow-mode energies -2J cos(theta/3 - 2 pi j/3), j = -1, 0, 1.
Eigen::Vector3d rotation_energies(const GyroParams& p) {
  Eigen::Vector3d e;
  for (int j = -1; j <= 1; ++j) e(j + 1) = -2.0 * p.J * std::cos(p.theta / 3.0 - 2.0 * pi * j / 3.0);
  return e;
}

Eigen::MatrixXcd hermitian_exp(const Eigen::MatrixXcd& h, Complex factor) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h);
  const Eigen::VectorXcd phases =
      (factor * solver.eigenvalues().cast<Complex>()).array().exp().matrix();
  return solver.eigenvectors() * phases.asDiagonal() * solver.eigenvectors().adjoint();
}

}  // namespace

PhaseSet phase_set(const GyroParams& p) {
  const double jt = p.coupling_time();
  PhaseSet s;
  s.phi0 = 2.0 * jt * std::cos(p.theta / 3.0 + 2.0 * pi / 3.0);
  s.phi1 = 2.0 * kSqrt3 * jt * std::sin(p.theta / 3.0);
  s.phi2 = 2.0 * kSqrt3 * jt * std::sin(p.theta / 3.0 + pi / 3.0);
  s.phi_plus = s.phi1 + s.phi2;
  s.phi_minus = s.phi1 - s.phi2;
  return s;
}

PhaseSet phase_derivatives(const GyroParams& p) {
  const double jt = p.coupling_time();
  PhaseSet d;
  d.phi0 = -2.0 * jt / 3.0 * std::sin(p.theta / 3.0 + 2.0 * pi / 3.0);
  d.phi1 = 2.0 / kSqrt3 * jt * std::cos(p.theta / 3.0);
  d.phi2 = 2.0 / kSqrt3 * jt * std::cos(p.theta / 3.0 + pi / 3.0);
  d.phi_plus = d.phi1 + d.phi2;
  d.phi_minus = d.phi1 - d.phi2;
  return d;
}

std::array<double, 3> generator_coefficients(const GyroParams& p) {
  const double pre = -2.0 * p.coupling_time() / 3.0;
  return {pre * std::sin((p.theta + 2.0 * pi) / 3.0), pre * std::sin((p.theta - 2.0 * pi) / 3.0),
          pre * std::sin(p.theta / 3.0)};
}

DiagonalObservable generator_observable(const GyroParams& params, const FockBasis& basis) {
  const auto w = generator_coefficients(params);
  return DiagonalObservable::linear(basis, w[1], w[2]);
}

ModeMatrix3 flow_transform() {
  const Complex w = std::polar(1.0, 2.0 * pi / 3.0);
  ModeMatrix3 f;
  f << 1.0, std::conj(w), w,
       1.0, 1.0, 1.0,
       1.0, w, std::conj(w);
  return f / kSqrt3;
}

ModeMatrix3 ring_hopping() {
  ModeMatrix3 t;
  t << 0.0, 1.0, 1.0,
       1.0, 0.0, 1.0,
       1.0, 1.0, 0.0;
  return t;
}

ModeMatrix3 mode_unitary(const ModeMatrix3& hermitian, double angle) {
  return hermitian_exp(hermitian, kI * angle);
}

ModeMatrix3 tritter(double angle) { return mode_unitary(ring_hopping(), angle); }

ModeMatrix3 site2_phase(double angle) {
  ModeMatrix3 d = ModeMatrix3::Identity();
  d(2, 2) = std::polar(1.0, angle);
  return d;
}

ModeMatrix3 rotation_hamiltonian(const GyroParams& p) {
  const ModeMatrix3 f = flow_transform();
  return f.adjoint() * rotation_energies(p).cast<Complex>().asDiagonal() * f;
}

ModeMatrix3 rotation_generator_flow(const GyroParams& p) {
  // -d/dtheta of -2J cos(theta/3 - 2 pi j/3), times t_omega
  Eigen::Vector3cd g;
  for (int j = -1; j <= 1; ++j)
    g(j + 1) = -2.0 * p.coupling_time() / 3.0 * std::sin(p.theta / 3.0 - 2.0 * pi * j / 3.0);
  const ModeMatrix3 f = flow_transform();
  return f.adjoint() * g.asDiagonal() * f;
}

ModeMatrix3 rotation_generator_sites(const GyroParams& p) {
  const Complex hop = kI * p.coupling_time() / 3.0 * std::polar(1.0, p.theta / 3.0);
  ModeMatrix3 h = ModeMatrix3::Zero();
  h(0, 1) = hop;
  h(1, 2) = hop;
  h(2, 0) = hop;
  return h + h.adjoint().eval();
}

double verify_appendix_a(const GyroParams& params) {
  const ModeMatrix3 w2 = tritter(2.0 * pi / 9.0);
  const ModeMatrix3 w3 = site2_phase(2.0 * pi / 3.0);
  const ModeMatrix3 h4 = rotation_generator_sites(params);
  const ModeMatrix3 m = w2.adjoint() * w3.adjoint() * h4 * w3 * w2;
  const auto w = generator_coefficients(params);
  ModeMatrix3 expected = ModeMatrix3::Zero();
  for (int i = 0; i < 3; ++i) expected(i, i) = w[static_cast<std::size_t>(i)];
  return (m - expected).cwiseAbs().maxCoeff();
}

// ---------------------------------------------------------------------------
// ThreeModeState

const std::vector<ThreeModeState::Occupation3>& ThreeModeState::basis() {
  static const std::vector<Occupation3> states = [] {
    std::vector<Occupation3> out;
    for (int total = 0; total <= kMaxParticles; ++total)
      for (int n0 = total; n0 >= 0; --n0)
        for (int n1 = total - n0; n1 >= 0; --n1) out.push_back({n0, n1, total - n0 - n1});
    return out;
  }();
  return states;
}

std::size_t ThreeModeState::index_of(const Occupation3& occ) {
  const auto& b = basis();
  for (std::size_t i = 0; i < b.size(); ++i)
    if (b[i] == occ) return i;
  throw SizeError("occupation (" + std::to_string(occ[0]) + "," + std::to_string(occ[1]) + "," +
                  std::to_string(occ[2]) + ") exceeds the " + std::to_string(kMaxParticles) +
                  "-particle simulation space");
}

ThreeModeState ThreeModeState::fock(int n0, int n1, int n2) {
  if (n0 < 0 || n1 < 0 || n2 < 0) throw DomainError("negative occupation");
  Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(basis().size()));
  amps(static_cast<Eigen::Index>(index_of({n0, n1, n2}))) = 1.0;
  return ThreeModeState(std::move(amps));
}

ThreeModeState ThreeModeState::from_two_mode(const TwoModeState& state) {
  Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(basis().size()));
  const auto& b = state.basis();
  for (std::size_t i = 0; i < b.size(); ++i) {
    const Complex a = state.amplitudes()(static_cast<Eigen::Index>(i));
    if (a == Complex{}) continue;
    const auto occ = b.occupation(i);
    amps(static_cast<Eigen::Index>(index_of({0, occ.n1, occ.n2}))) = a;
  }
  return ThreeModeState(std::move(amps));
}

Eigen::MatrixXcd many_body_operator(const ModeMatrix3& h) {
  const auto& b = ThreeModeState::basis();
  const auto dim = static_cast<Eigen::Index>(b.size());
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim, dim);
  for (std::size_t s = 0; s < b.size(); ++s) {
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        const Complex hij = h(i, j);
        if (hij == Complex{} || b[s][static_cast<std::size_t>(j)] == 0) continue;
        auto t = b[s];
        double amp = std::sqrt(static_cast<double>(t[static_cast<std::size_t>(j)]--));
        amp *= std::sqrt(static_cast<double>(++t[static_cast<std::size_t>(i)]));
        out(static_cast<Eigen::Index>(ThreeModeState::index_of(t)), static_cast<Eigen::Index>(s)) +=
            hij * amp;
      }
    }
  }
  return out;
}

namespace {

Eigen::VectorXcd evolve(const Eigen::VectorXcd& input, const GyroParams& params,
                        bool include_readout) {
  const Eigen::MatrixXcd hop = many_body_operator(ring_hopping());
  ModeMatrix3 site2 = ModeMatrix3::Zero();
  site2(2, 2) = 1.0;
  const Eigen::MatrixXcd n2 = many_body_operator(site2);
  const Eigen::MatrixXcd hr = many_body_operator(rotation_hamiltonian(params));

  Eigen::VectorXcd psi = hermitian_exp(hop, kI * (2.0 * pi / 9.0)) * input;        // (ii)
  psi = hermitian_exp(n2, kI * (2.0 * pi / 3.0)) * psi;                            // (iii)
  psi = hermitian_exp(hr, -kI * params.t_omega) * psi;                             // (iv)
  if (include_readout) {
    psi = hermitian_exp(n2, -kI * (2.0 * pi / 3.0)) * psi;                         // (v)
    psi = hermitian_exp(hop, kI * (4.0 * pi / 9.0)) * psi;                         // (vi)
  }
  return psi;
}

double overlap_qfi(const Eigen::VectorXcd& psi, const Eigen::VectorXcd& dpsi) {
  const double f = 4.0 * (dpsi.squaredNorm() - std::norm(psi.dot(dpsi)));
  return std::max(f, 0.0);
}

}  // namespace

double simulate_protocol(const ThreeModeState& input, const GyroParams& params,
                         bool include_readout) {
  constexpr double kStep = 1e-5;
  const Eigen::VectorXcd& in = input.amplitudes();
  auto at = [&](double theta) {
    GyroParams p = params;
    p.theta = theta;
    return evolve(in, p, include_readout);
  };
  auto central = [&](double h) {
    return Eigen::VectorXcd((at(params.theta + h) - at(params.theta - h)) / (2.0 * h));
  };

  const Eigen::VectorXcd psi = at(params.theta);
  const Eigen::VectorXcd d_full = central(kStep);
  const Eigen::VectorXcd d_half = central(0.5 * kStep);
  const double f_full = overlap_qfi(psi, d_full);
  const double f_half = overlap_qfi(psi, d_half);
  if (std::abs(f_full - f_half) <= 1e-7) return f_half;
  // Richardson: the central difference error is O(h^2).
  return overlap_qfi(psi, (4.0 * d_half - d_full) / 3.0);
}

double generator_qfi(const ThreeModeState& input, const GyroParams& params) {
  const auto w = generator_coefficients(params);
  const auto& b = ThreeModeState::basis();
  double mean = 0.0;
  double second = 0.0;
  for (std::size_t i = 0; i < b.size(); ++i) {
    const double p = std::norm(input.amplitudes()(static_cast<Eigen::Index>(i)));
    const double g = w[0] * b[i][0] + w[1] * b[i][1] + w[2] * b[i][2];
    mean += p * g;
    second += p * g * g;
  }
  return std::max(0.0, 4.0 * (second - mean * mean));
}

}  // namespace gyroqfi
