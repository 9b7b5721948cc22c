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


// Command implementations behind the qfi-gyro tool: parameter sweeps, the
// verification suite and state inspection. Kept in the library so tests can
// drive them without a process boundary.

#ifndef GYROQFI_APP_HPP
#define GYROQFI_APP_HPP

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gyroqfi/fock.hpp"
#include "gyroqfi/qfi.hpp"
#include "gyroqfi/states.hpp"

namespace gyroqfi::app {

/// Parses "start:stop:step" (inclusive, tolerant to rounding) or a comma
/// list. Throws DomainError unless the result is non-empty and strictly
/// increasing.
std::vector<double> parse_grid(std::string_view text);

struct SweepConfig {
  std::vector<Family> families;
  std::vector<double> grid;  // N values or eta values
  double fixed_N = 2.0;      // eta sweeps only
  PhaseChoice phase = PhaseChoice::Phi1;
  std::optional<int> n_max;  // fixed, renormalized truncation
  int mu = 1;
};

struct SweepRow {
  Family family = Family::NOON;
  double x = 0.0;  // N or eta
  std::optional<double> param;
  double qfi = 0.0;
  double delta_phase = 0.0;
  std::string error;  // non-empty when the row could not be computed

  bool ok() const { return error.empty(); }
};

enum class SweepKind { N, Eta };

struct SweepTable {
  SweepKind kind = SweepKind::N;
  std::vector<SweepRow> rows;  // family order as configured, then grid order

  bool ok() const;
};

/// Truncation used by the sweeps: the n_max override when present, else
/// adaptive. Eta sweeps at N = 2 default to the reference cap.
Truncation sweep_truncation(const SweepConfig& config, SweepKind kind);

/// Lossless QFI per (family, N).
SweepTable sweep_n(const SweepConfig& config);

/// QFI of the lossy probe per (family, eta).
SweepTable sweep_eta(const SweepConfig& config);

/// QFI of the state after loss at each eta.
std::vector<double> lossy_qfi(const TwoModeState& state, std::span<const double> etas,
                              PhaseChoice phase, const GyroParams& params = {});

/// Every numeric field printed with 12 significant digits.
std::string format_number(double value);
std::string to_csv(const SweepTable& table);
std::string to_json(const SweepTable& table);

struct Check {
  std::string name;
  double deviation = 0.0;
  double tolerance = 0.0;

  bool passed() const { return deviation <= tolerance; }
};

/// |F(phi1) - 2N(Q+1)| / F for a path-symmetric state of nominal mean N.
Check check_mandel_identity(const TwoModeState& state, double nominal_N, std::string name);

/// Largest entrywise gap between the branch mixture and the Kraus map.
Check check_branch_equivalence(const TwoModeState& state, double eta, std::string name);

/// Full invariant suite.
std::vector<Check> run_verify();

std::string format_checks(const std::vector<Check>& checks);

/// Human-readable summary of a built state.
std::string inspect_state(const StateSpec& spec);

}  // namespace gyroqfi::app

#endif  // GYROQFI_APP_HPP
