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

#include "gyroqfi/fock.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "gyroqfi/errors.hpp"

namespace gyroqfi {

// ---------------------------------------------------------------------------
// FockBasis

FockBasis FockBasis::paired(int n_max) {
  if (n_max < 0) throw DomainError("paired basis needs n_max >= 0");
  return FockBasis(Layout::Paired, n_max);
}

FockBasis FockBasis::grid(int n_max) {
  if (n_max < 0) throw DomainError("grid basis needs n_max >= 0");
  return FockBasis(Layout::Grid, n_max);
}

std::size_t FockBasis::size() const {
  const auto k = static_cast<std::size_t>(n_max_);
  return layout_ == Layout::Paired ? 2 * k + 1 : (k + 1) * (k + 1);
}

Occupation FockBasis::occupation(std::size_t index) const {
  if (index >= size()) throw DomainError("basis index out of range");
  const int i = static_cast<int>(index);
  if (layout_ == Layout::Grid) return {i / (n_max_ + 1), i % (n_max_ + 1)};
  if (i == 0) return {0, 0};
  if (i <= n_max_) return {i, 0};
  return {0, i - n_max_};
}

std::optional<std::size_t> FockBasis::index_of(int n1, int n2) const {
  if (n1 < 0 || n2 < 0 || n1 > n_max_ || n2 > n_max_) return std::nullopt;
  if (layout_ == Layout::Grid)
    return static_cast<std::size_t>(n1) * static_cast<std::size_t>(n_max_ + 1) +
           static_cast<std::size_t>(n2);
  if (n1 == 0 && n2 == 0) return 0;
  if (n2 == 0) return static_cast<std::size_t>(n1);
  if (n1 == 0) return static_cast<std::size_t>(n_max_ + n2);
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// TwoModeState

TwoModeState::TwoModeState(FockBasis basis, Eigen::VectorXcd amplitudes, double tail_mass)
    : basis_(std::move(basis)), amplitudes_(std::move(amplitudes)), tail_mass_(tail_mass) {
  if (static_cast<std::size_t>(amplitudes_.size()) != basis_.size())
    throw DomainError("amplitude vector does not match basis dimension");
  const double norm2 = amplitudes_.squaredNorm();
  if (std::abs(norm2 - 1.0) > 1e-12)
    throw DomainError("state is not normalized (norm^2 = " + std::to_string(norm2) + ")");
}

TwoModeState TwoModeState::normalized(FockBasis basis, Eigen::VectorXcd amplitudes,
                                      double tail_mass) {
  const double norm = amplitudes.norm();
  if (!(norm > 0.0)) throw DomainError("cannot normalize a zero vector");
  amplitudes /= norm;
  return TwoModeState(std::move(basis), std::move(amplitudes), tail_mass);
}

TwoModeState TwoModeState::vacuum(const FockBasis& basis) {
  Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(basis.size()));
  amps(static_cast<Eigen::Index>(*basis.index_of(0, 0))) = 1.0;
  return TwoModeState(basis, std::move(amps));
}

Complex TwoModeState::amplitude(int n1, int n2) const {
  const auto idx = basis_.index_of(n1, n2);
  return idx ? amplitudes_(static_cast<Eigen::Index>(*idx)) : Complex{};
}

// ---------------------------------------------------------------------------
// DiagonalObservable

DiagonalObservable::DiagonalObservable(FockBasis basis, Eigen::VectorXd weights)
    : basis_(std::move(basis)), weights_(std::move(weights)) {
  if (static_cast<std::size_t>(weights_.size()) != basis_.size())
    throw DomainError("observable weights do not match basis dimension");
}

DiagonalObservable DiagonalObservable::from_function(
    const FockBasis& basis, const std::function<double(int, int)>& weight) {
  Eigen::VectorXd w(static_cast<Eigen::Index>(basis.size()));
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const auto occ = basis.occupation(i);
    w(static_cast<Eigen::Index>(i)) = weight(occ.n1, occ.n2);
  }
  return DiagonalObservable(basis, std::move(w));
}

DiagonalObservable DiagonalObservable::linear(const FockBasis& basis, double c1, double c2) {
  return from_function(basis, [c1, c2](int n1, int n2) { return c1 * n1 + c2 * n2; });
}

DiagonalObservable DiagonalObservable::squared() const {
  return DiagonalObservable(basis_, weights_.array().square().matrix());
}

Eigen::VectorXd DiagonalObservable::weights_on(const FockBasis& target) const {
  if (target == basis_) return weights_;
  Eigen::VectorXd w(static_cast<Eigen::Index>(target.size()));
  for (std::size_t i = 0; i < target.size(); ++i) {
    const auto occ = target.occupation(i);
    const auto idx = basis_.index_of(occ.n1, occ.n2);
    if (!idx)
      throw DomainError("observable undefined at occupation (" + std::to_string(occ.n1) + "," +
                        std::to_string(occ.n2) + ")");
    w(static_cast<Eigen::Index>(i)) = weights_(static_cast<Eigen::Index>(*idx));
  }
  return w;
}

namespace {

// Observable weights aligned with the state's basis; occupations the
// observable does not cover are only an error where the state has weight.
Eigen::VectorXd aligned_weights(const TwoModeState& state, const DiagonalObservable& obs) {
  if (state.basis() == obs.basis()) return obs.weights();
  const auto& basis = state.basis();
  Eigen::VectorXd w = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(basis.size()));
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const auto occ = basis.occupation(i);
    const auto idx = obs.basis().index_of(occ.n1, occ.n2);
    if (idx) {
      w(static_cast<Eigen::Index>(i)) = obs.weights()(static_cast<Eigen::Index>(*idx));
    } else if (std::norm(state.amplitudes()(static_cast<Eigen::Index>(i))) > 0.0) {
      throw DomainError("state has support at (" + std::to_string(occ.n1) + "," +
                        std::to_string(occ.n2) + ") outside the observable's basis");
    }
  }
  return w;
}

}  // namespace

double expectation(const TwoModeState& state, const DiagonalObservable& obs) {
  const Eigen::VectorXd w = aligned_weights(state, obs);
  return (state.amplitudes().cwiseAbs2().array() * w.array()).sum();
}

double variance(const TwoModeState& state, const DiagonalObservable& obs) {
  const Eigen::VectorXd w = aligned_weights(state, obs);
  const Eigen::ArrayXd p = state.amplitudes().cwiseAbs2().array();
  const double mean = (p * w.array()).sum();
  const double var = (p * (w.array() - mean).square()).sum();
  return std::max(var, 0.0);
}

double covariance(const TwoModeState& state, const DiagonalObservable& a,
                  const DiagonalObservable& b) {
  const Eigen::ArrayXd wa = aligned_weights(state, a).array();
  const Eigen::ArrayXd wb = aligned_weights(state, b).array();
  const Eigen::ArrayXd p = state.amplitudes().cwiseAbs2().array();
  const double ma = (p * wa).sum();
  const double mb = (p * wb).sum();
  return (p * (wa - ma) * (wb - mb)).sum();
}

// ---------------------------------------------------------------------------
// HermitianMatrix

namespace {

void require_hermitian(const Eigen::MatrixXcd& m, double tol) {
  if (m.rows() != m.cols()) throw DomainError("matrix is not square");
  const double dev = (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (dev > tol)
    throw DomainError("matrix is not Hermitian (max deviation " + std::to_string(dev) + ")");
}

}  // namespace

HermitianMatrix::HermitianMatrix(FockBasis basis, Eigen::MatrixXcd entries)
    : basis_(std::move(basis)), entries_(std::move(entries)) {
  if (static_cast<std::size_t>(entries_.rows()) != basis_.size())
    throw DomainError("matrix dimension does not match basis");
  require_hermitian(entries_, kTolerance);
}

double HermitianMatrix::purity() const {
  // tr(rho^2) = sum |rho_ij|^2 for Hermitian rho
  return entries_.cwiseAbs2().sum();
}

bool HermitianMatrix::is_real() const {
  return entries_.imag().cwiseAbs().maxCoeff() == 0.0;
}

double BranchEnsemble::total_probability() const {
  double total = 0.0;
  for (const auto& b : branches) total += b.probability;
  return total;
}

HermitianMatrix mix(std::span<const PureBranch> branches) {
  if (branches.empty()) throw InconsistencyError("empty branch ensemble");
  const FockBasis& basis = branches.front().state.basis();
  double total = 0.0;
  for (const auto& b : branches) {
    if (b.probability < 0.0) throw InconsistencyError("negative branch probability");
    if (!(b.state.basis() == basis)) throw DomainError("branches do not share one basis");
    total += b.probability;
  }
  if (std::abs(total - 1.0) > 1e-6)
    throw InconsistencyError("branch probabilities sum to " + std::to_string(total));

  const auto dim = static_cast<Eigen::Index>(basis.size());
  // rho = B B^+ with columns sqrt(p_k) psi_k.
  Eigen::MatrixXcd weighted(dim, static_cast<Eigen::Index>(branches.size()));
  for (std::size_t k = 0; k < branches.size(); ++k)
    weighted.col(static_cast<Eigen::Index>(k)) =
        std::sqrt(branches[k].probability) * branches[k].state.amplitudes();
  Eigen::MatrixXcd rho = weighted * weighted.adjoint();
  rho = 0.5 * (rho + rho.adjoint().eval());
  return HermitianMatrix(basis, std::move(rho));
}

HermitianMatrix mix(const BranchEnsemble& ensemble) { return mix(std::span(ensemble.branches)); }

HermitianMatrix projector(const TwoModeState& state) {
  return HermitianMatrix(state.basis(), state.amplitudes() * state.amplitudes().adjoint());
}

double expectation(const HermitianMatrix& rho, const DiagonalObservable& obs) {
  const Eigen::VectorXd w = obs.weights_on(rho.basis());
  return (rho.entries().diagonal().real().array() * w.array()).sum();
}

// ---------------------------------------------------------------------------
// Eigendecomposition

namespace {

constexpr double kPhaseThreshold = 1e-12;

Eigen::Index first_significant(const Eigen::VectorXcd& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (std::abs(v(i)) > kPhaseThreshold) return i;
  return 0;
}

EigenDecomposition canonicalize(const Eigen::VectorXd& ascending_values,
                                const Eigen::MatrixXcd& ascending_vectors) {
  const Eigen::Index n = ascending_values.size();
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::vector<Eigen::Index> lead(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    order[static_cast<std::size_t>(i)] = i;
    lead[static_cast<std::size_t>(i)] = first_significant(ascending_vectors.col(i));
  }
  const double scale = std::max(1.0, ascending_values.cwiseAbs().maxCoeff());
  const double tie = 1e-12 * scale;
  // Descending eigenvalue; within a tie, ascending leading index.
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    const double la = ascending_values(a);
    const double lb = ascending_values(b);
    if (std::abs(la - lb) > tie) return la > lb;
    return lead[static_cast<std::size_t>(a)] < lead[static_cast<std::size_t>(b)];
  });

  EigenDecomposition out;
  out.eigenvalues.resize(n);
  out.eigenvectors.resize(ascending_vectors.rows(), n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const Eigen::Index src = order[static_cast<std::size_t>(k)];
    out.eigenvalues(k) = ascending_values(src);
    Eigen::VectorXcd v = ascending_vectors.col(src);
    const Complex pivot = v(lead[static_cast<std::size_t>(src)]);
    if (std::abs(pivot) > 0.0) v *= std::conj(pivot) / std::abs(pivot);
    out.eigenvectors.col(k) = v;
  }
  return out;
}

}  // namespace

EigenDecomposition eig_hermitian(const Eigen::MatrixXcd& matrix) {
  require_hermitian(matrix, HermitianMatrix::kTolerance);
  if (matrix.imag().cwiseAbs().maxCoeff() == 0.0) {
    const Eigen::MatrixXd sym = 0.5 * (matrix.real() + matrix.real().transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sym);
    if (solver.info() != Eigen::Success) throw DomainError("eigensolver did not converge");
    return canonicalize(solver.eigenvalues(), solver.eigenvectors().cast<Complex>());
  }
  const Eigen::MatrixXcd herm = 0.5 * (matrix + matrix.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(herm);
  if (solver.info() != Eigen::Success) throw DomainError("eigensolver did not converge");
  return canonicalize(solver.eigenvalues(), solver.eigenvectors());
}

EigenDecomposition eig_hermitian(const HermitianMatrix& matrix) {
  return eig_hermitian(matrix.entries());
}

}  // namespace gyroqfi
