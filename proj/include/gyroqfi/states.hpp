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

// Probe-state families at fixed mean particle number.

#ifndef GYROQFI_STATES_HPP
#define GYROQFI_STATES_HPP

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gyroqfi/fock.hpp"

namespace gyroqfi {

enum class Family {
  Uncorrelated,   // 50:50 beam-split |N,0>
  BAT,            // 50:50 beam-split twin Fock |N/2,N/2>
  NOON,           // (|N,0> + |0,N>)/sqrt2
  MaxEntangledM,  // (|N,N> + |0,0>)/sqrt2
  ECS,            // N_a (|a,0> + |0,a>)
  ECS_M,          // N_a (|a,a> + |0,0>)
  SES,            // N_xi (|xi,0> + |0,xi>)
  SES_M,          // N_xi (|xi,xi> + |0,0>)
  EESS,           // N_Phi (|Phi,0> + |0,Phi>), |Phi> ~ |xi> + |-xi>
  EESS_M,         // N_Phi (|Phi,Phi> + |0,0>)
};

inline constexpr Family kAllFamilies[] = {
    Family::Uncorrelated, Family::BAT,  Family::NOON,  Family::MaxEntangledM, Family::ECS,
    Family::ECS_M,        Family::SES,  Family::SES_M, Family::EESS,          Family::EESS_M,
};

/// CLI spelling: uncorrelated, bat, noon, m, ecs, ecs-m, ses, ses-m, eess, eess-m.
std::string_view family_name(Family family);
std::optional<Family> parse_family(std::string_view name);

bool is_number_state(Family family);
/// Support restricted to {(k,0), (0,k)} and invariant under mode swap.
bool is_paired(Family family);
bool is_squeezed(Family family);

/// How many occupations to keep per mode.
struct Truncation {
  enum class Mode { Adaptive, Fixed };

  static constexpr double kTailTolerance = 1e-12;
  static constexpr int kDefaultCap = 4096;
  /// Occupation cap matching the reference loss calculation at N = 2: the
  /// squeezed expansion sum_n C_2n |2n,0> cut after n = 56.
  static constexpr int kReferenceNmax = 112;

  Mode mode = Mode::Adaptive;
  int n_max = kDefaultCap;  // cap when adaptive
  /// Fixed mode only: renormalize instead of failing on tail >= kTailTolerance.
  bool allow_tail = false;

  static Truncation adaptive(int cap = kDefaultCap) { return {Mode::Adaptive, cap, false}; }
  static Truncation fixed(int n_max, bool allow_tail = false) {
    return {Mode::Fixed, n_max, allow_tail};
  }
  static Truncation reference() { return fixed(kReferenceNmax, true); }
};

struct StateSpec {
  Family family = Family::NOON;
  double target_N = 2.0;
  /// alpha (coherent families) or r (squeezed families); calibrated from
  /// target_N when empty.
  std::optional<double> param;
  /// arg(alpha) or arg(xi).
  double arg_param = 0.0;
  Truncation truncation;
};

/// Normalization constants of the coherent and squeezed families.
struct NormalizationSet {
  double coherent;      // N_alpha = (2 + 2 e^{-|a|^2})^{-1/2}
  double squeezed;      // N_xi = (2/cosh r + 2)^{-1/2}
  double even;          // N = (2 + 2 (cosh 2r)^{-1/2})^{-1/2}, for |xi> + |-xi>
  double even_entangled;  // N_Phi
  double even_product;  // N_{xi,-xi} = N_Phi N
};

/// Constants at coherent amplitude `alpha` and squeezing `r`.
NormalizationSet normalization_set(double alpha, double r);

/// Closed-form mean particle number of a calibrated family at parameter x.
double family_mean(Family family, double x);

/// Parameter giving mean particle number target_N; empty for number states.
/// Throws CalibrationError when target_N is out of reach on [0, 20].
std::optional<double> calibrate(Family family, double target_N);

TwoModeState build_state(const StateSpec& spec);

double mean_particle_number(const TwoModeState& state);

/// Single-mode amplitudes, index = occupation, exact up to n_max.
std::vector<Complex> coherent_amplitudes(double alpha, double phase, int n_max);
std::vector<Complex> squeezed_amplitudes(double r, double phase, int n_max);
/// N (|xi> + |-xi>).
std::vector<Complex> even_squeezed_amplitudes(double r, double phase, int n_max);

/// |phi, 0> on the paired basis; `amplitudes` must be normalized over the
/// infinite space up to the truncated tail.
TwoModeState embed_mode1(std::span<const Complex> amplitudes);

}  // namespace gyroqfi

#endif  // GYROQFI_STATES_HPP
