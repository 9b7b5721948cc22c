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

// Data-parallel inner loops. Every kernel has an OpenMP version, used by the
// library, and a serial reference with a different loop structure that the
// tests and benchmarks compare against.

#ifndef GYROQFI_KERNELS_HPP
#define GYROQFI_KERNELS_HPP

#include <Eigen/Dense>

#include <vector>

#include "gyroqfi/fock.hpp"

namespace gyroqfi::kernels {

/// sqrt(C(k,l) eta^(k-l) (1-eta)^l) for 0 <= l <= k <= n_max.
class SqrtBinomialTable {
 public:
  SqrtBinomialTable(int n_max, double eta);

  double operator()(int k, int l) const {
    return values_[static_cast<std::size_t>(k) * stride_ + static_cast<std::size_t>(l)];
  }
  int n_max() const { return n_max_; }
  double eta() const { return eta_; }

 private:
  int n_max_;
  double eta_;
  std::size_t stride_;
  std::vector<double> values_;
};

namespace serial {

/// Two-mode binomial particle loss applied to rho. Loops over source
/// elements and scatters into the damped targets.
Eigen::MatrixXcd apply_loss(const FockBasis& basis, const Eigen::MatrixXcd& rho, double eta_a,
                            double eta_b);

/// Mixed-state QFI double sum
///   4 sum_m l_m G2_mm - sum_{m,m'} 8 l_m l_m' / (l_m + l_m') |G_mm'|^2
/// over the retained eigenpairs; `g` is the generator in the eigenbasis and
/// `g2_diag` the diagonal of its square.
double mixed_qfi_sum(const Eigen::VectorXd& lambda, const Eigen::MatrixXcd& g,
                     const Eigen::VectorXd& g2_diag);

}  // namespace serial

namespace omp {

/// Same map as serial::apply_loss, gathered per output row so rows are
/// independent.
Eigen::MatrixXcd apply_loss(const FockBasis& basis, const Eigen::MatrixXcd& rho, double eta_a,
                            double eta_b);

double mixed_qfi_sum(const Eigen::VectorXd& lambda, const Eigen::MatrixXcd& g,
                     const Eigen::VectorXd& g2_diag);

}  // namespace omp

/// Worker count: QFI_GYRO_THREADS when set to a positive integer, else the
/// OpenMP default.
int thread_count();

}  // namespace gyroqfi::kernels

#endif  // GYROQFI_KERNELS_HPP
