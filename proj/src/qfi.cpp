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


#include "gyroqfi/qfi.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "gyroqfi/errors.hpp"
#include "gyroqfi/kernels.hpp"

namespace gyroqfi {

namespace {

constexpr std::array<std::string_view, 5> kChoiceNames = {"phi1", "phi2", "plus", "minus",
                                                          "theta"};

}  // namespace

std::string_view phase_choice_name(PhaseChoice choice) {
  return kChoiceNames[static_cast<std::size_t>(choice)];
}

std::optional<PhaseChoice> parse_phase_choice(std::string_view name) {
  for (std::size_t i = 0; i < kChoiceNames.size(); ++i)
    if (kChoiceNames[i] == name) return static_cast<PhaseChoice>(i);
  return std::nullopt;
}

DiagonalObservable generator_for(PhaseChoice choice, const FockBasis& basis,
                                 const GyroParams& params) {
  switch (choice) {
    case PhaseChoice::Phi1: return DiagonalObservable::number1(basis);
    case PhaseChoice::Phi2: return DiagonalObservable::number2(basis);
    case PhaseChoice::PhiPlus: return DiagonalObservable::linear(basis, 0.5, 0.5);
    case PhaseChoice::PhiMinus: return DiagonalObservable::linear(basis, 0.5, -0.5);
    case PhaseChoice::ThetaDirect: return generator_observable(params, basis);
  }
  throw DomainError("unknown phase choice");
}

double qfi_pure(const TwoModeState& state, PhaseChoice choice, const GyroParams& params) {
  return 4.0 * variance(state, generator_for(choice, state.basis(), params));
}

double qfi_mixed(const HermitianMatrix& rho, const DiagonalObservable& generator,
                 double cutoff) {
  const EigenDecomposition eig = eig_hermitian(rho);
  const Eigen::VectorXd& lambda = eig.eigenvalues;
  if (lambda.size() == 0) return 0.0;
  if (lambda.minCoeff() < -1e-8)
    throw InvalidDensityError("density matrix has eigenvalue " +
                              std::to_string(lambda.minCoeff()));
  const double floor = cutoff * lambda(0);
  Eigen::Index kept = 0;
  while (kept < lambda.size() && lambda(kept) > floor) ++kept;
  if (kept == 0) return 0.0;

  const Eigen::VectorXd w = generator.weights_on(rho.basis());
  const Eigen::MatrixXcd v = eig.eigenvectors.leftCols(kept);
  const Eigen::MatrixXcd g = v.adjoint() * w.asDiagonal() * v;
  const Eigen::VectorXd g2 = v.cwiseAbs2().transpose() * w.cwiseAbs2();
  return std::max(0.0, kernels::omp::mixed_qfi_sum(lambda.head(kept), g, g2));
}

double mandel_q(const TwoModeState& state, int mode) {
  if (mode != 1 && mode != 2) throw DomainError("mode must be 1 or 2");
  const auto n = mode == 1 ? DiagonalObservable::number1(state.basis())
                           : DiagonalObservable::number2(state.basis());
  const double mean = expectation(state, n);
  if (mean <= 0.0) throw UndefinedQError("Mandel Q is undefined for an empty mode");
  return variance(state, n) / mean - 1.0;
}

double eess_qfi_moment_form(double r) {
  const double n = family_mean(Family::EESS, r);
  const double c = std::cosh(2.0 * r);
  const double ch = std::cosh(r);
  const double sh = std::sinh(r);
  const double num = 2.0 * ch * ch + sh * sh - (3.0 + c) / (2.0 * std::pow(c, 2.5));
  return 2.0 * n * num / (1.0 - std::pow(c, -1.5)) - n * n;
}

double eess_qfi_closed_form(double r) {
  const double n = family_mean(Family::EESS, r);
  const double c = std::cosh(2.0 * r);
  const double s = std::sqrt(c);
  return n * ((3.0 + 3.0 * c * c + c) / c + 3.0 * s / (1.0 + s + c) - n);
}

AnalyticQfi qfi_analytic(Family family, double N, PhaseChoice choice) {
  if (!(N > 0.0)) throw DomainError("mean particle number must be positive");
  const bool single = choice == PhaseChoice::Phi1 || choice == PhaseChoice::Phi2;
  switch (family) {
    case Family::Uncorrelated:
      if (choice == PhaseChoice::PhiMinus) return {N, false};
      break;
    case Family::BAT:
      if (choice == PhaseChoice::PhiMinus) return {N * (N / 2.0 + 1.0), false};
      break;
    case Family::NOON:
      if (choice == PhaseChoice::PhiMinus) return {N * N, false};
      break;
    case Family::MaxEntangledM:
      if (choice == PhaseChoice::PhiPlus) return {N * N, false};
      break;
    case Family::ECS:
      if (single) return {N * (N + 2.0), true};
      if (choice == PhaseChoice::PhiMinus) return {N * (N + 1.0), true};
      break;
    case Family::ECS_M:
      if (choice == PhaseChoice::PhiPlus) return {N * (N + 1.0), true};
      break;
    case Family::SES:
      if (single) return {5.0 * N * N + 4.0 * N, true};
      if (choice == PhaseChoice::PhiMinus) return {3.0 * N * N + 2.0 * N, true};
      break;
    case Family::SES_M:
      if (choice == PhaseChoice::PhiPlus) return {N * (3.0 * N + 2.0), true};
      break;
    case Family::EESS:
      if (single) return {eess_qfi_closed_form(*calibrate(Family::EESS, N)), false};
      break;
    case Family::EESS_M:
      break;
  }
  throw NoFormulaError("no closed form for " + std::string(family_name(family)) + " with " +
                       std::string(phase_choice_name(choice)));
}

double phase_slope(PhaseChoice choice, const GyroParams& params) {
  const PhaseSet d = phase_derivatives(params);
  switch (choice) {
    case PhaseChoice::Phi1: return d.phi1;
    case PhaseChoice::Phi2: return d.phi2;
    case PhaseChoice::PhiPlus: return d.phi_plus;
    case PhaseChoice::PhiMinus: return d.phi_minus;
    case PhaseChoice::ThetaDirect: return 1.0;
  }
  return 0.0;
}

double max_phase_slope(PhaseChoice choice, const GyroParams& params) {
  const double jt = params.coupling_time();
  switch (choice) {
    case PhaseChoice::PhiPlus: return 2.0 * jt;
    case PhaseChoice::ThetaDirect: return 1.0;
    default: return 2.0 * jt / std::numbers::sqrt3;
  }
}

PrecisionReport phase_uncertainty(double qfi, const GyroParams& params, PhaseChoice choice,
                                  std::optional<Geometry> geometry) {
  if (!(qfi > 0.0)) throw NoInformationError("QFI is zero: the probe carries no phase information");
  if (params.mu < 1) throw DomainError("repeat count must be at least 1");
  PrecisionReport out;
  out.qfi = qfi;
  out.mu = params.mu;
  out.delta_phase = 1.0 / std::sqrt(params.mu * qfi);
  const double slope = std::abs(phase_slope(choice, params));
  out.delta_theta =
      slope > 0.0 ? out.delta_phase / slope : std::numeric_limits<double>::infinity();
  out.delta_theta_min = out.delta_phase / max_phase_slope(choice, params);
  if (geometry)
    out.delta_omega = rotation_rate(out.delta_theta_min, geometry->ring_length, geometry->mass);
  return out;
}

double rotation_rate(double delta_theta, double ring_length, double mass) {
  if (!(ring_length > 0.0) || !(mass > 0.0))
    throw DomainError("ring length and mass must be positive");
  return delta_theta * kPlanck / (ring_length * ring_length * mass);
}

}  // namespace gyroqfi
