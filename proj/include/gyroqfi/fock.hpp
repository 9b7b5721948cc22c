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

// Truncated two-mode Fock space: bases, states, diagonal observables and
// dense density matrices.

#ifndef GYROQFI_FOCK_HPP
#define GYROQFI_FOCK_HPP

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace gyroqfi {

using Complex = std::complex<double>;

struct Occupation {
  int n1 = 0;
  int n2 = 0;
  friend bool operator==(const Occupation&, const Occupation&) = default;
};

/// Ordered set of two-mode occupations.
///
/// Two layouts exist. The paired layout holds |0,0>, |k,0> and |0,k> for
/// 1 <= k <= n_max (dimension 2 n_max + 1) and carries every path-symmetric
/// probe state and all of its loss branches. The grid layout holds the full
/// square 0 <= n1, n2 <= n_max and is used for |N,N>-type states and
/// beam-split number states. Both layouts are closed under particle loss.
class FockBasis {
 public:
  enum class Layout { Paired, Grid };

  static FockBasis paired(int n_max);
  static FockBasis grid(int n_max);

  Layout layout() const { return layout_; }
  int n_max() const { return n_max_; }
  std::size_t size() const;

  Occupation occupation(std::size_t index) const;
  std::optional<std::size_t> index_of(int n1, int n2) const;

  friend bool operator==(const FockBasis&, const FockBasis&) = default;

 private:
  FockBasis(Layout layout, int n_max) : layout_(layout), n_max_(n_max) {}

  Layout layout_;
  int n_max_;
};

/// Normalized amplitude table over a FockBasis.
class TwoModeState {
 public:
  /// Takes ownership of amplitudes that are already normalized to 1e-12.
  TwoModeState(FockBasis basis, Eigen::VectorXcd amplitudes, double tail_mass = 0.0);

  /// Rescales arbitrary (nonzero) amplitudes to unit norm.
  static TwoModeState normalized(FockBasis basis, Eigen::VectorXcd amplitudes,
                                 double tail_mass = 0.0);

  static TwoModeState vacuum(const FockBasis& basis);

  const FockBasis& basis() const { return basis_; }
  const Eigen::VectorXcd& amplitudes() const { return amplitudes_; }
  int n_max() const { return basis_.n_max(); }

  /// Zero for occupations outside the basis.
  Complex amplitude(int n1, int n2) const;

  /// Norm lying beyond n_max, estimated when the state was built.
  double tail_mass() const { return tail_mass_; }

 private:
  FockBasis basis_;
  Eigen::VectorXcd amplitudes_;
  double tail_mass_;
};

/// Observable diagonal in the occupation basis.
class DiagonalObservable {
 public:
  DiagonalObservable(FockBasis basis, Eigen::VectorXd weights);

  static DiagonalObservable from_function(const FockBasis& basis,
                                          const std::function<double(int, int)>& weight);
  /// c1 n1 + c2 n2.
  static DiagonalObservable linear(const FockBasis& basis, double c1, double c2);
  static DiagonalObservable number1(const FockBasis& basis) { return linear(basis, 1.0, 0.0); }
  static DiagonalObservable number2(const FockBasis& basis) { return linear(basis, 0.0, 1.0); }
  static DiagonalObservable total_number(const FockBasis& basis) { return linear(basis, 1.0, 1.0); }

  const FockBasis& basis() const { return basis_; }
  const Eigen::VectorXd& weights() const { return weights_; }

  DiagonalObservable squared() const;

  /// Weights re-indexed onto another basis. Throws DomainError if an
  /// occupation of `target` is missing here.
  Eigen::VectorXd weights_on(const FockBasis& target) const;

 private:
  FockBasis basis_;
  Eigen::VectorXd weights_;
};

/// Dense Hermitian matrix over a FockBasis (density matrices).
class HermitianMatrix {
 public:
  static constexpr double kTolerance = 1e-10;

  /// Throws DomainError when `entries` is not Hermitian within kTolerance.
  HermitianMatrix(FockBasis basis, Eigen::MatrixXcd entries);

  const FockBasis& basis() const { return basis_; }
  const Eigen::MatrixXcd& entries() const { return entries_; }
  std::size_t dim() const { return basis_.size(); }

  double trace() const { return entries_.trace().real(); }
  double purity() const;

  /// True when every imaginary part vanishes exactly.
  bool is_real() const;

 private:
  FockBasis basis_;
  Eigen::MatrixXcd entries_;
};

struct EigenDecomposition {
  Eigen::VectorXd eigenvalues;    // descending
  Eigen::MatrixXcd eigenvectors;  // columns, orthonormal
};

/// Which side particles were lost from.
struct LossRecord {
  int lost_a = 0;
  int lost_b = 0;
  friend bool operator==(const LossRecord&, const LossRecord&) = default;
};

struct PureBranch {
  double probability = 0.0;
  LossRecord record;
  TwoModeState state;
};

struct BranchEnsemble {
  std::vector<PureBranch> branches;
  double eta = 1.0;

  double total_probability() const;
};

double expectation(const TwoModeState& state, const DiagonalObservable& obs);

/// <obs^2> - <obs>^2, clamped at zero.
double variance(const TwoModeState& state, const DiagonalObservable& obs);

double covariance(const TwoModeState& state, const DiagonalObservable& a,
                  const DiagonalObservable& b);

/// Sum_k p_k |psi_k><psi_k|.
HermitianMatrix mix(std::span<const PureBranch> branches);
HermitianMatrix mix(const BranchEnsemble& ensemble);

HermitianMatrix projector(const TwoModeState& state);

/// Expectation tr(rho obs).
double expectation(const HermitianMatrix& rho, const DiagonalObservable& obs);

/// Spectral decomposition with descending eigenvalues. Each eigenvector is
/// phased so that its first component above 1e-12 in magnitude is real and
/// positive; exact ties keep that component's index order.
EigenDecomposition eig_hermitian(const HermitianMatrix& matrix);
EigenDecomposition eig_hermitian(const Eigen::MatrixXcd& matrix);

}  // namespace gyroqfi

#endif  // GYROQFI_FOCK_HPP
