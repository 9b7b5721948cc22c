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


#include "gyroqfi/loss.hpp"

#include <cmath>
#include <string>

#include "gyroqfi/errors.hpp"
#include "gyroqfi/kernels.hpp"

namespace gyroqfi {

namespace {

constexpr double kPruneBelow = 1e-15;

void check_eta(double eta) {
  if (!(eta >= 0.0 && eta <= 1.0))
    throw DomainError("transmission must lie in [0, 1], got " + std::to_string(eta));
}

}  // namespace

LossChannel::LossChannel(double eta) : eta_(eta) { check_eta(eta); }

HermitianMatrix kraus_apply(const HermitianMatrix& rho, double eta_a, double eta_b) {
  check_eta(eta_a);
  check_eta(eta_b);
  Eigen::MatrixXcd out = kernels::omp::apply_loss(rho.basis(), rho.entries(), eta_a, eta_b);
  // Restore exact Hermiticity lost to rounding.
  out = 0.5 * (out + out.adjoint().eval());
  return HermitianMatrix(rho.basis(), std::move(out));
}

HermitianMatrix kraus_apply(const HermitianMatrix& rho, const LossChannel& channel) {
  return kraus_apply(rho, channel.eta(), channel.eta());
}

HermitianMatrix kraus_apply(const TwoModeState& state, const LossChannel& channel) {
  return kraus_apply(projector(state), channel);
}

BranchEnsemble branch_decompose(const TwoModeState& state, const LossChannel& channel) {
  const FockBasis& basis = state.basis();
  const Eigen::VectorXcd& psi = state.amplitudes();
  int k_max = 0;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (psi(static_cast<Eigen::Index>(i)) == Complex{}) continue;
    const Occupation o = basis.occupation(i);
    if (o.n1 > 0 && o.n2 > 0)
      throw UnsupportedStructureError(
          "branch decomposition needs support on |k,0> and |0,k> only; use kraus_apply");
    k_max = std::max(k_max, o.n1 + o.n2);
  }

  const double eta = channel.eta();
  const kernels::SqrtBinomialTable table(k_max, eta);
  const auto dim = static_cast<Eigen::Index>(basis.size());
  auto at = [&](int n1, int n2) { return static_cast<Eigen::Index>(*basis.index_of(n1, n2)); };

  BranchEnsemble out;
  out.eta = eta;
  auto push = [&](Eigen::VectorXcd v, LossRecord record) {
    const double p = v.squaredNorm();
    if (p < kPruneBelow) return;
    out.branches.push_back({p, record, TwoModeState(basis, v / std::sqrt(p))});
  };

  Eigen::VectorXcd none = Eigen::VectorXcd::Zero(dim);
  none(at(0, 0)) = state.amplitude(0, 0);
  for (int k = 1; k <= k_max; ++k) {
    none(at(k, 0)) = state.amplitude(k, 0) * table(k, 0);
    none(at(0, k)) = state.amplitude(0, k) * table(k, 0);
  }
  push(std::move(none), {0, 0});

  for (int l = 1; l <= k_max; ++l) {
    Eigen::VectorXcd a = Eigen::VectorXcd::Zero(dim);
    Eigen::VectorXcd b = Eigen::VectorXcd::Zero(dim);
    for (int k = l; k <= k_max; ++k) {
      a(at(k - l, 0)) = state.amplitude(k, 0) * table(k, l);
      b(at(0, k - l)) = state.amplitude(0, k) * table(k, l);
    }
    push(std::move(a), {l, 0});
    push(std::move(b), {0, l});
  }
  return out;
}

double damped_squeezing(double r, double eta) { return std::atanh(eta * std::tanh(r)); }

BranchProbabilities analytic_branch_probabilities(Family family, double r, double eta) {
  check_eta(eta);
  const double rt = damped_squeezing(r, eta);
  const double ch = std::cosh(r);
  const double cht = std::cosh(rt);
  BranchProbabilities p;
  switch (family) {
    case Family::SES:
      p.no_loss = (1.0 + cht) / (1.0 + ch);
      p.sum_a = (ch - cht) / (2.0 * (1.0 + ch));
      break;
    case Family::EESS: {
      const NormalizationSet n = normalization_set(0.0, r);
      const NormalizationSet nt = normalization_set(0.0, rt);
      const double ratio = (n.even * n.even) / (nt.even * nt.even) * (cht / ch);
      p.no_loss = ratio * (n.even_entangled * n.even_entangled) /
                  (nt.even_entangled * nt.even_entangled);
      p.sum_a = n.even_entangled * n.even_entangled * (1.0 - ratio);
      break;
    }
    default:
      throw DomainError("closed-form branch weights exist for ses and eess only, not " +
                        std::string(family_name(family)));
  }
  p.sum_b = p.sum_a;
  return p;
}

}  // namespace gyroqfi
