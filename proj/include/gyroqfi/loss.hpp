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


// Equal particle loss on both modes: the generic Kraus map and the branch
// decomposition of path-symmetric probes.

#ifndef GYROQFI_LOSS_HPP
#define GYROQFI_LOSS_HPP

#include "gyroqfi/fock.hpp"
#include "gyroqfi/states.hpp"

namespace gyroqfi {

/// Transmission eta in [0, 1] applied to both modes.
class LossChannel {
 public:
  explicit LossChannel(double eta);
  double eta() const { return eta_; }

 private:
  double eta_;
};

/// Binomial damping with Kraus operators
///   K_{la,lb} = sqrt(C) (1-eta)^{l/2} eta^{n/2 - l/2} a^la b^lb
/// on each mode. Damping never raises occupations, so the output lives on
/// the input basis.
HermitianMatrix kraus_apply(const TwoModeState& state, const LossChannel& channel);
HermitianMatrix kraus_apply(const HermitianMatrix& rho, const LossChannel& channel);
/// Unequal transmissions per mode.
HermitianMatrix kraus_apply(const HermitianMatrix& rho, double eta_a, double eta_b);

/// Pure branches of a state supported on {(0,0), (k,0), (0,k)}. Branches are
/// ordered (0,0), (1,0), (0,1), (2,0), ... and those below 1e-15 dropped.
/// Throws UnsupportedStructureError for any other support.
BranchEnsemble branch_decompose(const TwoModeState& state, const LossChannel& channel);

struct BranchProbabilities {
  double no_loss = 0.0;  // p_{0,0}
  double sum_a = 0.0;    // sum over l >= 1 of p_{l,0}
  double sum_b = 0.0;    // sum over l >= 1 of p_{0,l}

  double total() const { return no_loss + sum_a + sum_b; }
};

/// arctanh(eta tanh r): squeezing of the no-loss branch.
double damped_squeezing(double r, double eta);

/// Closed-form branch weights for SES and EESS. Other families throw
/// DomainError.
BranchProbabilities analytic_branch_probabilities(Family family, double r, double eta);

}  // namespace gyroqfi

#endif  // GYROQFI_LOSS_HPP
