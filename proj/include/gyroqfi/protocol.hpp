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

// Three-site ring gyroscope: phase parametrization, the diagonal generator
// of the rotation step, and two independent checks of that generator.

#ifndef GYROQFI_PROTOCOL_HPP
#define GYROQFI_PROTOCOL_HPP

#include <Eigen/Dense>

#include <array>
#include <vector>

#include "gyroqfi/fock.hpp"

namespace gyroqfi {

struct GyroParams {
  double theta = 0.0;    // rotation-induced phase [rad]
  double J = 1.0;        // coupling [rad/s]
  double t_omega = 1.0;  // rotation time [s]
  int mu = 1;            // independent repeats

  double coupling_time() const { return J * t_omega; }
};

/// Phases of the equivalent parametrization
///   exp(i phi0 n) exp(i phi1 n1) exp(i phi2 n2).
struct PhaseSet {
  double phi0 = 0.0;
  double phi1 = 0.0;
  double phi2 = 0.0;
  double phi_plus = 0.0;   // phi1 + phi2
  double phi_minus = 0.0;  // phi1 - phi2
};

PhaseSet phase_set(const GyroParams& params);

/// d/dtheta of every phase, evaluated analytically.
PhaseSet phase_derivatives(const GyroParams& params);

/// Weights of n0, n1, n2 in the rotation generator.
std::array<double, 3> generator_coefficients(const GyroParams& params);

/// Generator restricted to two-mode probes (site 0 empty, acting as the
/// phase reference): w1 n1 + w2 n2.
DiagonalObservable generator_observable(const GyroParams& params, const FockBasis& basis);

// -- single-particle (3x3) mode algebra ------------------------------------

/// Matrix h of the quadratic operator sum_ij h_ij a_i^+ a_j on modes
/// (a0, a1, a2).
using ModeMatrix3 = Eigen::Matrix3cd;

/// Rows map (a0, a1, a2) to the flow modes (alpha_-1, alpha_0, alpha_1).
ModeMatrix3 flow_transform();

/// Nearest-neighbour hopping on the ring, a0+a1 + a1+a2 + a2+a0 + h.c.
ModeMatrix3 ring_hopping();

/// exp(i * angle * h) for Hermitian h.
ModeMatrix3 mode_unitary(const ModeMatrix3& hermitian, double angle);

/// Single-particle matrix of the tritter exp(i angle (ring hopping)).
ModeMatrix3 tritter(double angle);

/// Single-particle matrix of exp(i angle n2).
ModeMatrix3 site2_phase(double angle);

/// Rotation Hamiltonian H_r / hbar (flow-diagonal).
ModeMatrix3 rotation_hamiltonian(const GyroParams& params);

/// -dH_r/dtheta t_omega, built from its flow-diagonal form.
ModeMatrix3 rotation_generator_flow(const GyroParams& params);

/// The same operator written as i Jt/3 e^{i theta/3}(a0+a1 + a1+a2 + a2+a0) + h.c.
ModeMatrix3 rotation_generator_sites(const GyroParams& params);

/// Conjugates the rotation generator back through the phase step and the
/// tritter (W2^+ W3^+ h4 W3 W2) and returns the largest entry deviation from
/// diag(generator_coefficients).
double verify_appendix_a(const GyroParams& params);

// -- many-body cross-check ---------------------------------------------------

/// State of three sites holding at most kMaxParticles atoms in total.
class ThreeModeState {
 public:
  static constexpr int kMaxParticles = 4;

  using Occupation3 = std::array<int, 3>;

  static ThreeModeState fock(int n0, int n1, int n2);
  /// Places a two-mode probe on sites 1 and 2 with site 0 empty.
  static ThreeModeState from_two_mode(const TwoModeState& state);

  static const std::vector<Occupation3>& basis();
  static std::size_t index_of(const Occupation3& occ);

  const Eigen::VectorXcd& amplitudes() const { return amplitudes_; }

 private:
  explicit ThreeModeState(Eigen::VectorXcd amplitudes) : amplitudes_(std::move(amplitudes)) {}
  Eigen::VectorXcd amplitudes_;
};

/// Many-body matrix of a quadratic mode operator on ThreeModeState::basis().
Eigen::MatrixXcd many_body_operator(const ModeMatrix3& h);

/// Runs the protocol in the many-body space and returns the pure-state QFI
/// 4(<d psi|d psi> - |<psi|d psi>|^2) from a central difference in theta.
/// Steps (v)-(vii) are applied unless `include_readout` is false.
double simulate_protocol(const ThreeModeState& input, const GyroParams& params,
                         bool include_readout = true);

/// 4 Var(w0 n0 + w1 n1 + w2 n2) on the input state.
double generator_qfi(const ThreeModeState& input, const GyroParams& params);

}  // namespace gyroqfi

#endif  // GYROQFI_PROTOCOL_HPP
