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


// Quantum Fisher information of pure and mixed probes, closed forms, and the
// conversion from phase to rotation uncertainty.

#ifndef GYROQFI_QFI_HPP
#define GYROQFI_QFI_HPP

#include <optional>
#include <string_view>

#include "gyroqfi/fock.hpp"
#include "gyroqfi/protocol.hpp"
#include "gyroqfi/states.hpp"

namespace gyroqfi {

/// Which phase is estimated. Fixes the generator and the conversion to theta.
enum class PhaseChoice { Phi1, Phi2, PhiPlus, PhiMinus, ThetaDirect };

std::string_view phase_choice_name(PhaseChoice choice);
std::optional<PhaseChoice> parse_phase_choice(std::string_view name);

/// n1, n2, (n1+n2)/2, (n1-n2)/2, or the rotation generator at `params`.
DiagonalObservable generator_for(PhaseChoice choice, const FockBasis& basis,
                                 const GyroParams& params = {});

/// 4 Var(generator).
double qfi_pure(const TwoModeState& state, PhaseChoice choice, const GyroParams& params = {});

/// Spectral QFI of rho for a diagonal generator:
///   4 sum l_m <m|G^2|m> - sum 8 l_m l_m' / (l_m + l_m') |<m|G|m'>|^2.
/// Eigenpairs with l <= cutoff * l_max are dropped; their terms vanish up to
/// truncation noise. Throws InvalidDensityError below -1e-8.
double qfi_mixed(const HermitianMatrix& rho, const DiagonalObservable& generator,
                 double cutoff = 1e-12);

/// Var(n_mode) / <n_mode> - 1. Throws UndefinedQError for an empty mode.
double mandel_q(const TwoModeState& state, int mode);

struct AnalyticQfi {
  double value = 0.0;
  bool asymptotic = false;  // large-N approximation rather than exact
};

/// Closed-form QFI where one is known; NoFormulaError otherwise.
AnalyticQfi qfi_analytic(Family family, double N, PhaseChoice choice);

/// F(phi1) of the EESS at squeezing r, as a ratio of moments.
double eess_qfi_moment_form(double r);
/// The same quantity rearranged as a polynomial-like form in cosh 2r.
double eess_qfi_closed_form(double r);

struct Geometry {
  double ring_length = 0.0;  // L [m]
  double mass = 0.0;         // atomic mass [kg]
};

struct PrecisionReport {
  double qfi = 0.0;
  double delta_phase = 0.0;
  /// At the working point theta; infinite where d phi / d theta vanishes.
  double delta_theta = 0.0;
  /// At the theta maximizing |d phi / d theta|.
  double delta_theta_min = 0.0;
  std::optional<double> delta_omega;  // from delta_theta_min
  int mu = 1;
};

/// d phi / d theta for `choice` at params.theta (1 for ThetaDirect).
double phase_slope(PhaseChoice choice, const GyroParams& params);
/// max over theta of |d phi / d theta|.
double max_phase_slope(PhaseChoice choice, const GyroParams& params);

/// Throws NoInformationError when qfi <= 0.
PrecisionReport phase_uncertainty(double qfi, const GyroParams& params, PhaseChoice choice,
                                  std::optional<Geometry> geometry = std::nullopt);

inline constexpr double kPlanck = 6.62607015e-34;  // J s

/// delta_theta * h / (L^2 m).
double rotation_rate(double delta_theta, double ring_length, double mass);

}  // namespace gyroqfi

#endif  // GYROQFI_QFI_HPP
