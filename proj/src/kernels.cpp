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

#include "gyroqfi/kernels.hpp"

#include <omp.h>

#include <cmath>
#include <cstdlib>
#include <string>

#include "gyroqfi/errors.hpp"

namespace gyroqfi::kernels {

SqrtBinomialTable::SqrtBinomialTable(int n_max, double eta)
    : n_max_(n_max), eta_(eta), stride_(static_cast<std::size_t>(n_max) + 1) {
  if (!(eta >= 0.0 && eta <= 1.0)) throw DomainError("transmission must lie in [0,1]");
  values_.assign(stride_ * stride_, 0.0);
  const long double log_eta = std::log(static_cast<long double>(eta));
  const long double log_loss = std::log1p(-static_cast<long double>(eta));
  for (int k = 0; k <= n_max; ++k) {
    const long double lgk = std::lgamma(static_cast<long double>(k) + 1.0L);
    for (int l = 0; l <= k; ++l) {
      double v;
      if (eta == 1.0) {
        v = l == 0 ? 1.0 : 0.0;
      } else if (eta == 0.0) {
        v = l == k ? 1.0 : 0.0;
      } else {
        const long double log_b = lgk - std::lgamma(static_cast<long double>(l) + 1.0L) -
                                  std::lgamma(static_cast<long double>(k - l) + 1.0L) +
                                  static_cast<long double>(k - l) * log_eta +
                                  static_cast<long double>(l) * log_loss;
        v = static_cast<double>(std::exp(0.5L * log_b));
      }
      values_[static_cast<std::size_t>(k) * stride_ + static_cast<std::size_t>(l)] = v;
    }
  }
}

namespace serial {

Eigen::MatrixXcd apply_loss(const FockBasis& basis, const Eigen::MatrixXcd& rho, double eta_a,
                            double eta_b) {
  const SqrtBinomialTable sa(basis.n_max(), eta_a);
  const SqrtBinomialTable sb(basis.n_max(), eta_b);
  const auto dim = basis.size();
  std::vector<Occupation> occ(dim);
  for (std::size_t i = 0; i < dim; ++i) occ[i] = basis.occupation(i);

  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(rho.rows(), rho.cols());
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < dim; ++j) {
      const Complex value = rho(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
      if (value == Complex{}) continue;
      const auto [ai, bi] = occ[i];
      const auto [aj, bj] = occ[j];
      for (int la = 0; la <= std::min(ai, aj); ++la) {
        const double wa = sa(ai, la) * sa(aj, la);
        for (int lb = 0; lb <= std::min(bi, bj); ++lb) {
          const double w = wa * sb(bi, lb) * sb(bj, lb);
          const auto p = *basis.index_of(ai - la, bi - lb);
          const auto q = *basis.index_of(aj - la, bj - lb);
          out(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(q)) += w * value;
        }
      }
    }
  }
  return out;
}

double mixed_qfi_sum(const Eigen::VectorXd& lambda, const Eigen::MatrixXcd& g,
                     const Eigen::VectorXd& g2_diag) {
  double first = 0.0;
  double second = 0.0;
  for (Eigen::Index m = 0; m < lambda.size(); ++m) {
    first += lambda(m) * g2_diag(m);
    for (Eigen::Index k = 0; k < lambda.size(); ++k) {
      const double s = lambda(m) + lambda(k);
      if (s <= 0.0) continue;
      second += 8.0 * lambda(m) * lambda(k) / s * std::norm(g(m, k));
    }
  }
  return 4.0 * first - second;
}

}  // namespace serial

namespace omp {

Eigen::MatrixXcd apply_loss(const FockBasis& basis, const Eigen::MatrixXcd& rho, double eta_a,
                            double eta_b) {
  const int n_max = basis.n_max();
  const SqrtBinomialTable sa(n_max, eta_a);
  const SqrtBinomialTable sb(n_max, eta_b);
  const auto dim = static_cast<long>(basis.size());
  const auto side = static_cast<long>(n_max) + 1;
  std::vector<Occupation> occ(static_cast<std::size_t>(dim));
  // Dense (n1, n2) -> index map; -1 marks occupations outside the basis.
  std::vector<long> index(static_cast<std::size_t>(side * side), -1);
  for (long i = 0; i < dim; ++i) {
    const Occupation o = basis.occupation(static_cast<std::size_t>(i));
    occ[static_cast<std::size_t>(i)] = o;
    index[static_cast<std::size_t>(o.n1 * side + o.n2)] = i;
  }
  auto at = [&](int n1, int n2) { return index[static_cast<std::size_t>(n1 * side + n2)]; };

  Eigen::MatrixXcd out(rho.rows(), rho.cols());
  // Column-parallel so each thread writes contiguous storage.
#pragma omp parallel for schedule(dynamic, 4) num_threads(thread_count())
  for (long q = 0; q < dim; ++q) {
    const auto [c, d] = occ[static_cast<std::size_t>(q)];
    for (long p = 0; p < dim; ++p) {
      const auto [a, b] = occ[static_cast<std::size_t>(p)];
      Complex acc{};
      for (int lb = 0; b + lb <= n_max && d + lb <= n_max; ++lb) {
        const double wb = sb(b + lb, lb) * sb(d + lb, lb);
        int la = 0;
        for (; a + la <= n_max && c + la <= n_max; ++la) {
          const long i = at(a + la, b + lb);
          const long j = at(c + la, d + lb);
          // Absent sources stay absent as la (or lb, at la = 0) grows.
          if (i < 0 || j < 0) break;
          acc += wb * sa(a + la, la) * sa(c + la, la) * rho(i, j);
        }
        if (la == 0 && lb > 0) break;
      }
      out(p, q) = acc;
    }
  }
  return out;
}

double mixed_qfi_sum(const Eigen::VectorXd& lambda, const Eigen::MatrixXcd& g,
                     const Eigen::VectorXd& g2_diag) {
  const Eigen::Index n = lambda.size();
  // Per-row partials summed in index order keep the result independent of
  // the thread count.
  Eigen::VectorXd rows(n);
#pragma omp parallel for schedule(static) num_threads(thread_count())
  for (Eigen::Index m = 0; m < n; ++m) {
    double row = 4.0 * lambda(m) * g2_diag(m);
    for (Eigen::Index k = 0; k < n; ++k) {
      const double s = lambda(m) + lambda(k);
      if (s > 0.0) row -= 8.0 * lambda(m) * lambda(k) / s * std::norm(g(m, k));
    }
    rows(m) = row;
  }
  double total = 0.0;
  for (Eigen::Index m = 0; m < n; ++m) total += rows(m);
  return total;
}

}  // namespace omp

int thread_count() {
  if (const char* env = std::getenv("QFI_GYRO_THREADS")) {
    char* end = nullptr;
    const long n = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && n > 0) return static_cast<int>(n);
  }
  return omp_get_max_threads();
}

}  // namespace gyroqfi::kernels
