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

#include "gyroqfi/states.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "gyroqfi/errors.hpp"

namespace gyroqfi {

namespace {

constexpr double kBracketHi = 20.0;

struct FamilyInfo {
  Family family;
  std::string_view name;
};

constexpr FamilyInfo kFamilyNames[] = {
    {Family::Uncorrelated, "uncorrelated"}, {Family::BAT, "bat"},       {Family::NOON, "noon"},
    {Family::MaxEntangledM, "m"},           {Family::ECS, "ecs"},       {Family::ECS_M, "ecs-m"},
    {Family::SES, "ses"},                   {Family::SES_M, "ses-m"},   {Family::EESS, "eess"},
    {Family::EESS_M, "eess-m"},
};

bool is_m_variant(Family f) {
  return f == Family::MaxEntangledM || f == Family::ECS_M || f == Family::SES_M ||
         f == Family::EESS_M;
}

int integer_count(double target_N, Family family) {
  const double rounded = std::round(target_N);
  if (target_N < 1.0 || std::abs(target_N - rounded) > 1e-9)
    throw DomainError(std::string(family_name(family)) + " needs a positive integer N");
  const int n = static_cast<int>(rounded);
  if (family == Family::BAT && n % 2 != 0)
    throw DomainError("bat needs an even N so that N/2 particles sit in each mode");
  return n;
}

int number_state_nmax(const Truncation& t, int n) {
  if (t.mode == Truncation::Mode::Adaptive) return n;
  if (t.n_max < n)
    throw TruncationError("n_max " + std::to_string(t.n_max) + " cannot hold " +
                          std::to_string(n) + " particles");
  return t.n_max;
}

// 50:50 beam splitter a+ -> (a+ + b+)/sqrt2, b+ -> (a+ - b+)/sqrt2 applied
// to |n,m>, written on the (n+m)-particle line of a grid basis.
TwoModeState beam_split(int n, int m, const FockBasis& basis) {
  const int total = n + m;
  Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(basis.size()));
  auto lf = [](int k) { return std::lgamma(static_cast<long double>(k) + 1.0L); };
  auto lbinom = [&](int a, int b) { return lf(a) - lf(b) - lf(a - b); };
  for (int k = 0; k <= total; ++k) {
    long double sum = 0.0L;
    for (int j = std::max(0, k - m); j <= std::min(n, k); ++j) {
      const int i = k - j;
      const long double mag =
          std::exp(lbinom(n, j) + lbinom(m, i) +
                   0.5L * (lf(k) + lf(total - k) - lf(n) - lf(m)) -
                   0.5L * total * std::log(2.0L));
      sum += ((m - i) % 2 == 0) ? mag : -mag;
    }
    amps(static_cast<Eigen::Index>(*basis.index_of(k, total - k))) = static_cast<double>(sum);
  }
  return TwoModeState::normalized(basis, std::move(amps));
}

// Single-mode amplitudes of a calibrated family, normalized over the
// untruncated space.
std::vector<Complex> mode_amplitudes(Family family, double x, double phase, int n_max) {
  switch (family) {
    case Family::ECS:
    case Family::ECS_M:
      return coherent_amplitudes(x, phase, n_max);
    case Family::SES:
    case Family::SES_M:
      return squeezed_amplitudes(x, phase, n_max);
    case Family::EESS:
    case Family::EESS_M:
      return even_squeezed_amplitudes(x, phase, n_max);
    default:
      throw DomainError("family has no continuous parameter");
  }
}

// Norm of the truncated two-mode state relative to its untruncated norm,
// given the single-mode prefix mass.
long double tail_fraction(bool m_variant, Complex c0, long double prefix) {
  if (m_variant) {
    const long double total = 2.0L + 2.0L * static_cast<long double>((c0 * c0).real());
    return (1.0L - prefix * prefix) / total;
  }
  const long double total = 2.0L + 2.0L * static_cast<long double>(std::norm(c0));
  return 2.0L * (1.0L - prefix) / total;
}

TwoModeState assemble(const std::vector<Complex>& c, int n_max, bool m_variant,
                      double tail, bool renormalize) {
  const Complex c0 = c[0];
  if (m_variant) {
    const FockBasis basis = FockBasis::grid(n_max);
    Eigen::VectorXcd amps(static_cast<Eigen::Index>(basis.size()));
    for (int j = 0; j <= n_max; ++j)
      for (int k = 0; k <= n_max; ++k)
        amps(static_cast<Eigen::Index>(*basis.index_of(j, k))) =
            c[static_cast<std::size_t>(j)] * c[static_cast<std::size_t>(k)];
    amps(0) += 1.0;
    if (renormalize) return TwoModeState::normalized(basis, std::move(amps), tail);
    amps /= std::sqrt(2.0 + 2.0 * (c0 * c0).real());
    return TwoModeState(basis, std::move(amps), tail);
  }
  const FockBasis basis = FockBasis::paired(n_max);
  Eigen::VectorXcd amps(static_cast<Eigen::Index>(basis.size()));
  amps(0) = 2.0 * c0;
  for (int k = 1; k <= n_max; ++k) {
    amps(k) = c[static_cast<std::size_t>(k)];
    amps(n_max + k) = c[static_cast<std::size_t>(k)];
  }
  if (renormalize) return TwoModeState::normalized(basis, std::move(amps), tail);
  amps /= std::sqrt(2.0 + 2.0 * std::norm(c0));
  return TwoModeState(basis, std::move(amps), tail);
}

TwoModeState build_continuous(const StateSpec& spec, double x) {
  const bool m_variant = is_m_variant(spec.family);
  const Truncation& t = spec.truncation;
  if (t.n_max < 0) throw DomainError("negative truncation");

  const auto c = mode_amplitudes(spec.family, x, spec.arg_param, t.n_max);
  long double prefix = 0.0L;
  if (t.mode == Truncation::Mode::Fixed) {
    for (const auto& v : c) prefix += static_cast<long double>(std::norm(v));
    const double tail = std::max(0.0, static_cast<double>(tail_fraction(m_variant, c[0], prefix)));
    if (tail >= Truncation::kTailTolerance && !t.allow_tail)
      throw TruncationError("tail mass " + std::to_string(tail) + " at n_max " +
                            std::to_string(t.n_max) + "; use a larger n_max");
    return assemble(c, t.n_max, m_variant, tail, tail >= Truncation::kTailTolerance);
  }

  // Adaptive: smallest n_max leaving less than the tolerance outside, with a
  // factor-two margin so analytic normalization stays within 1e-12.
  for (int k = 0; k <= t.n_max; ++k) {
    prefix += static_cast<long double>(std::norm(c[static_cast<std::size_t>(k)]));
    const long double tail = tail_fraction(m_variant, c[0], prefix);
    if (tail < 0.5L * Truncation::kTailTolerance) {
      std::vector<Complex> kept(c.begin(), c.begin() + k + 1);
      return assemble(kept, k, m_variant, std::max(0.0, static_cast<double>(tail)), false);
    }
  }
  throw TruncationError(std::string(family_name(spec.family)) + " at parameter " +
                        std::to_string(x) + " needs more than " + std::to_string(t.n_max) +
                        " occupations; raise the cap or pass an explicit n_max");
}

}  // namespace

std::string_view family_name(Family family) {
  for (const auto& info : kFamilyNames)
    if (info.family == family) return info.name;
  return "unknown";
}

std::optional<Family> parse_family(std::string_view name) {
  for (const auto& info : kFamilyNames)
    if (info.name == name) return info.family;
  return std::nullopt;
}

bool is_number_state(Family family) {
  return family == Family::Uncorrelated || family == Family::BAT || family == Family::NOON ||
         family == Family::MaxEntangledM;
}

bool is_paired(Family family) {
  return family == Family::NOON || family == Family::ECS || family == Family::SES ||
         family == Family::EESS;
}

bool is_squeezed(Family family) {
  return family == Family::SES || family == Family::SES_M || family == Family::EESS ||
         family == Family::EESS_M;
}

NormalizationSet normalization_set(double alpha, double r) {
  NormalizationSet n{};
  n.coherent = 1.0 / std::sqrt(2.0 + 2.0 * std::exp(-alpha * alpha));
  n.squeezed = 1.0 / std::sqrt(2.0 / std::cosh(r) + 2.0);
  const double s = 1.0 / std::sqrt(std::cosh(2.0 * r));
  n.even = 1.0 / std::sqrt(2.0 + 2.0 * s);
  n.even_entangled = std::sqrt(1.0 + s) / std::sqrt(2.0 + 2.0 * s + 4.0 / std::cosh(r));
  n.even_product = 0.5 / std::sqrt(1.0 + s + 2.0 / std::cosh(r));
  return n;
}

double family_mean(Family family, double x) {
  switch (family) {
    case Family::ECS:
    case Family::ECS_M: {
      const double a2 = x * x;
      return a2 / (1.0 + std::exp(-a2));
    }
    case Family::SES:
    case Family::SES_M: {
      const double ch = std::cosh(x);
      return ch * (ch - 1.0);
    }
    case Family::EESS:
    case Family::EESS_M: {
      const double c = std::cosh(2.0 * x);
      const double sh = std::sinh(x);
      return sh * sh * (1.0 - std::pow(c, -1.5)) /
             (1.0 + 1.0 / std::sqrt(c) + 2.0 / std::cosh(x));
    }
    default:
      throw DomainError("number-state families have no parameter");
  }
}

std::optional<double> calibrate(Family family, double target_N) {
  if (!(target_N > 0.0)) throw DomainError("target N must be positive");
  if (is_number_state(family)) {
    integer_count(target_N, family);
    return std::nullopt;
  }
  if (family == Family::SES || family == Family::SES_M) {
    // cosh r (cosh r - 1) = N
    const double ch = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * target_N));
    const double r = std::acosh(ch);
    if (r > kBracketHi) throw CalibrationError("target N beyond the squeezing bracket");
    return r;
  }
  if (family_mean(family, kBracketHi) < target_N)
    throw CalibrationError("target N " + std::to_string(target_N) + " is not reachable for " +
                           std::string(family_name(family)) + " on [0, 20]");
  double lo = 0.0;
  double hi = kBracketHi;
  for (int it = 0; it < 300 && hi - lo > 4.0 * std::numeric_limits<double>::epsilon() * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (family_mean(family, mid) < target_N ? lo : hi) = mid;
  }
  const double x = 0.5 * (lo + hi);
  if (std::abs(family_mean(family, x) - target_N) > 1e-10 * std::max(1.0, target_N))
    throw CalibrationError("bisection did not reach target N");
  return x;
}

TwoModeState build_state(const StateSpec& spec) {
  if (is_number_state(spec.family)) {
    const int n = integer_count(spec.target_N, spec.family);
    const int n_max = number_state_nmax(spec.truncation, n);
    switch (spec.family) {
      case Family::NOON: {
        const FockBasis basis = FockBasis::paired(n_max);
        Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(basis.size()));
        amps(static_cast<Eigen::Index>(*basis.index_of(n, 0))) = std::numbers::sqrt2 / 2.0;
        amps(static_cast<Eigen::Index>(*basis.index_of(0, n))) = std::numbers::sqrt2 / 2.0;
        return TwoModeState::normalized(basis, std::move(amps));
      }
      case Family::MaxEntangledM: {
        const FockBasis basis = FockBasis::grid(n_max);
        Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(basis.size()));
        amps(static_cast<Eigen::Index>(*basis.index_of(n, n))) = std::numbers::sqrt2 / 2.0;
        amps(static_cast<Eigen::Index>(*basis.index_of(0, 0))) = std::numbers::sqrt2 / 2.0;
        return TwoModeState::normalized(basis, std::move(amps));
      }
      case Family::Uncorrelated:
        return beam_split(n, 0, FockBasis::grid(n_max));
      case Family::BAT:
        return beam_split(n / 2, n / 2, FockBasis::grid(n_max));
      default:
        break;
    }
  }
  const double x = spec.param ? *spec.param : *calibrate(spec.family, spec.target_N);
  if (!(x >= 0.0)) throw DomainError("state parameter must be non-negative");
  return build_continuous(spec, x);
}

double mean_particle_number(const TwoModeState& state) {
  return expectation(state, DiagonalObservable::total_number(state.basis()));
}

std::vector<Complex> coherent_amplitudes(double alpha, double phase, int n_max) {
  std::vector<Complex> c(static_cast<std::size_t>(n_max) + 1, Complex{});
  if (alpha == 0.0) {
    c[0] = 1.0;
    return c;
  }
  const double log_alpha = std::log(alpha);
  for (int k = 0; k <= n_max; ++k) {
    const double mag =
        std::exp(-0.5 * alpha * alpha + k * log_alpha - 0.5 * std::lgamma(k + 1.0));
    c[static_cast<std::size_t>(k)] = std::polar(mag, k * phase);
  }
  return c;
}

std::vector<Complex> squeezed_amplitudes(double r, double phase, int n_max) {
  std::vector<Complex> c(static_cast<std::size_t>(n_max) + 1, Complex{});
  c[0] = 1.0 / std::sqrt(std::cosh(r));
  const Complex ratio = -std::polar(std::tanh(r), phase);
  for (int n = 0; 2 * n + 2 <= n_max; ++n) {
    c[static_cast<std::size_t>(2 * n + 2)] =
        c[static_cast<std::size_t>(2 * n)] * ratio * std::sqrt((2.0 * n + 1.0) / (2.0 * n + 2.0));
  }
  return c;
}

std::vector<Complex> even_squeezed_amplitudes(double r, double phase, int n_max) {
  // |xi> and |-xi> agree on |4m> and cancel on |4m+2>.
  auto c = squeezed_amplitudes(r, phase, n_max);
  const double norm = normalization_set(0.0, r).even;
  for (std::size_t k = 0; k < c.size(); ++k) c[k] = (k % 4 == 0) ? 2.0 * norm * c[k] : Complex{};
  return c;
}

TwoModeState embed_mode1(std::span<const Complex> amplitudes) {
  if (amplitudes.empty()) throw DomainError("empty mode amplitudes");
  const int n_max = static_cast<int>(amplitudes.size()) - 1;
  const FockBasis basis = FockBasis::paired(n_max);
  Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(basis.size()));
  double mass = 0.0;
  for (int k = 0; k <= n_max; ++k) {
    amps(static_cast<Eigen::Index>(*basis.index_of(k, 0))) = amplitudes[static_cast<std::size_t>(k)];
    mass += std::norm(amplitudes[static_cast<std::size_t>(k)]);
  }
  return TwoModeState::normalized(basis, std::move(amps), std::max(0.0, 1.0 - mass));
}

}  // namespace gyroqfi
