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


// Acceptance suite: one [PASS]/[FAIL] line per criterion, nonzero exit when
// any criterion fails.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>
#include <vector>

#include "gyroqfi/app.hpp"
#include "gyroqfi/errors.hpp"
#include "gyroqfi/loss.hpp"
#include "gyroqfi/protocol.hpp"
#include "gyroqfi/qfi.hpp"
#include "gyroqfi/states.hpp"

using namespace gyroqfi;

namespace {

int failures = 0;

void report(int id, const std::string& title, bool passed, const std::string& detail) {
  std::printf("[%s] %2d %s: %s\n", passed ? "PASS" : "FAIL", id, title.c_str(), detail.c_str());
  if (!passed) ++failures;
}

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

std::string fmt(const char* f, double a, double b) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

TwoModeState at_N(Family f, double n, Truncation t = Truncation::adaptive()) {
  return build_state({f, n, std::nullopt, 0.0, t});
}

TwoModeState at_param(Family f, double x) {
  return build_state({f, 1.0, x, 0.0, Truncation::adaptive()});
}

template <class Fn>
void guarded(int id, const std::string& title, Fn&& fn) {
  try {
    fn();
  } catch (const std::exception& e) {
    report(id, title, false, std::string("exception: ") + e.what());
  }
}

void number_states() {
  double worst = 0.0;
  for (double n : {2.0, 4.0, 8.0}) {
    auto rel = [&](Family f, PhaseChoice c, double expected) {
      worst = std::max(worst, std::abs(qfi_pure(at_N(f, n), c) - expected) / expected);
    };
    rel(Family::Uncorrelated, PhaseChoice::PhiMinus, n);
    rel(Family::BAT, PhaseChoice::PhiMinus, n * (n / 2 + 1));
    rel(Family::NOON, PhaseChoice::PhiMinus, n * n);
    rel(Family::MaxEntangledM, PhaseChoice::PhiPlus, n * n);
  }
  report(1, "number-state QFI", worst < 1e-12, fmt("max relative error %.2e", worst));
}

void ecs_asymptote() {
  const double n = 20.0;
  const double ratio = qfi_pure(at_N(Family::ECS, n), PhaseChoice::Phi1) / (n * (n + 2));
  report(2, "ECS asymptote N(N+2) at N=20", ratio >= 0.99 && ratio <= 1.01,
         fmt("ratio %.6f", ratio));
}

void ses_asymptote() {
  const double n = 50.0;
  const auto s = at_N(Family::SES, n);
  const double r1 = qfi_pure(s, PhaseChoice::Phi1) / (5 * n * n + 4 * n);
  const double rm = qfi_pure(s, PhaseChoice::PhiMinus) / (3 * n * n + 2 * n);
  const bool ok = r1 >= 0.95 && r1 <= 1.05 && rm >= 0.95 && rm <= 1.05;
  report(3, "SES asymptotes 5N^2+4N and 3N^2+2N at N=50", ok,
         fmt("phi1 ratio %.4f, ", r1) + fmt("phi- ratio %.4f", rm));
}

void eess_closed_form() {
  double worst = 0.0;
  for (double r : {0.3, 0.8, 1.3, 2.0}) {
    const double f = qfi_pure(at_param(Family::EESS, r), PhaseChoice::Phi1);
    worst = std::max({worst, std::abs(eess_qfi_closed_form(r) - f) / f,
                      std::abs(eess_qfi_moment_form(r) - f) / f});
  }
  report(4, "EESS closed-form QFI", worst < 1e-8, fmt("max relative error %.2e", worst));
}

void mandel() {
  const double q_ses = mandel_q(at_N(Family::SES, 2.0), 1);
  const double q_eess = mandel_q(at_N(Family::EESS, 2.0), 1);
  double identity = 0.0;
  for (Family f : {Family::NOON, Family::ECS, Family::SES, Family::EESS})
    for (double n : {1.0, 2.0, 4.0})
      identity = std::max(identity, app::check_mandel_identity(at_N(f, n), n, "").deviation);
  const bool ok = std::abs(q_ses - 9.0) <= 0.5 && std::abs(q_eess - 14.0) <= 0.5 && identity < 1e-9;
  report(5, "Mandel Q anchors and F = 2N(Q+1)", ok,
         fmt("Q_SES %.4f, ", q_ses) + fmt("Q_EESS %.4f, ", q_eess) +
             fmt("identity %.2e", identity));
}

void closures() {
  double worst = 0.0;
  double total = 0.0;
  for (Family f : {Family::SES, Family::EESS})
    for (double r : {0.5, 1.0, 1.5})
      for (double eta : {0.2, 0.5, 0.8}) {
        const auto a = analytic_branch_probabilities(f, r, eta);
        const auto e = branch_decompose(at_param(f, r), LossChannel(eta));
        double none = 0.0, side_a = 0.0, side_b = 0.0;
        for (const auto& b : e.branches)
          (b.record.lost_a ? side_a : b.record.lost_b ? side_b : none) += b.probability;
        worst = std::max({worst, std::abs(a.no_loss - none), std::abs(a.sum_a - side_a),
                          std::abs(a.sum_b - side_b)});
        total = std::max({total, std::abs(a.total() - 1.0), std::abs(e.total_probability() - 1.0)});
      }
  report(6, "loss-probability closures", worst < 1e-10 && total < 1e-10,
         fmt("closed form vs branches %.2e, ", worst) + fmt("total %.2e", total));
}

void oracle_equivalence() {
  double worst = 0.0;
  for (Family f : {Family::SES, Family::EESS}) {
    const auto s = at_N(f, 2.0);
    for (double eta : {0.3, 0.6, 0.9})
      worst = std::max(worst, app::check_branch_equivalence(s, eta, "").deviation);
  }
  report(7, "branch mixture equals Kraus map", worst < 1e-12, fmt("max entry gap %.2e", worst));
}

void figure3() {
  const std::vector<Family> families = {Family::NOON, Family::ECS, Family::SES, Family::EESS};
  const auto etas = app::parse_grid("0.05:1:0.01");
  std::vector<std::vector<double>> f(families.size());
  std::vector<double> lossless(families.size());
  for (std::size_t i = 0; i < families.size(); ++i) {
    const auto s = at_N(families[i], 2.0, Truncation::reference());
    f[i] = app::lossy_qfi(s, etas, PhaseChoice::Phi1);
    lossless[i] = qfi_pure(s, PhaseChoice::Phi1);
  }
  const std::size_t ecs = 1, ses = 2, eess = 3;

  bool smallest = true;
  double first_bad = -1.0;
  for (std::size_t k = 0; k < etas.size(); ++k) {
    if (etas[k] <= 0.53) continue;
    for (std::size_t i = 0; i < families.size(); ++i)
      if (i != eess && f[i][k] > f[eess][k]) {
        if (smallest) first_bad = etas[k];
        smallest = false;
      }
  }
  // Last sign change of F_EESS - F_ECS, interpolated linearly.
  double crossing = -1.0;
  for (std::size_t k = 1; k < etas.size(); ++k) {
    const double a = f[eess][k - 1] - f[ecs][k - 1];
    const double b = f[eess][k] - f[ecs][k];
    if (a < 0.0 && b >= 0.0) crossing = etas[k - 1] + (etas[k] - etas[k - 1]) * a / (a - b);
  }
  double ses_crossing = -1.0;
  for (std::size_t k = 1; k < etas.size(); ++k) {
    const double a = f[eess][k - 1] - f[ses][k - 1];
    const double b = f[eess][k] - f[ses][k];
    if (a < 0.0 && b >= 0.0) ses_crossing = etas[k - 1] + (etas[k] - etas[k - 1]) * a / (a - b);
  }
  double identity = 0.0;
  for (std::size_t i = 0; i < families.size(); ++i)
    identity = std::max(identity, std::abs(f[i].back() - lossless[i]));

  const bool crossing_ok = std::abs(crossing - 0.37) <= 0.03;
  std::string detail = smallest ? "EESS smallest above 0.53" : fmt("EESS not smallest from eta %.2f", first_bad);
  detail += fmt(" (EESS/SES crossing %.3f), ", ses_crossing);
  detail += fmt("EESS/ECS crossing %.3f, ", crossing);
  detail += fmt("eta=1 gap %.2e", identity);
  report(8, "loss sweep at N=2, occupation cap 112", smallest && crossing_ok && identity < 1e-9,
         detail);
}

void figure2() {
  bool ordered = true;
  std::string where;
  for (int n = 1; n <= 10; ++n) {
    auto d = [&](Family f) { return 1.0 / std::sqrt(qfi_pure(at_N(f, n), PhaseChoice::Phi1)); };
    const double noon = d(Family::NOON), ecs = d(Family::ECS), ses = d(Family::SES),
                 eess = d(Family::EESS);
    if (!(eess <= ses && ses <= ecs && noon >= ecs)) {
      ordered = false;
      where += " N=" + std::to_string(n);
    }
  }
  const double noon10 = 1.0 / std::sqrt(qfi_pure(at_N(Family::NOON, 10), PhaseChoice::Phi1));
  const double ecs10 = 1.0 / std::sqrt(qfi_pure(at_N(Family::ECS, 10), PhaseChoice::Phi1));
  const double gap = std::abs(noon10 - ecs10) / noon10;
  report(9, "lossless ordering over N = 1..10", ordered && gap <= 0.10,
         (ordered ? std::string("ordering holds") : "ordering broken at" + where) +
             fmt(", NOON/ECS gap at N=10 %.3f", gap));
}

void appendix() {
  double algebra = 0.0;
  for (int k = 0; k < 8; ++k) {
    GyroParams p;
    p.theta = 2.0 * std::numbers::pi * k / 8.0;
    algebra = std::max(algebra, verify_appendix_a(p));
  }
  double sim = 0.0;
  GyroParams p;
  p.theta = 1.1;
  std::vector<ThreeModeState> probes;
  for (int n = 1; n <= 4; ++n) probes.push_back(ThreeModeState::from_two_mode(at_N(Family::NOON, n)));
  probes.push_back(ThreeModeState::from_two_mode(at_N(Family::BAT, 4.0)));
  probes.push_back(ThreeModeState::from_two_mode(at_N(Family::Uncorrelated, 3.0)));
  probes.push_back(ThreeModeState::from_two_mode(at_N(Family::MaxEntangledM, 2.0)));
  for (const auto& s : probes)
    sim = std::max(sim, std::abs(simulate_protocol(s, p) - generator_qfi(s, p)));
  report(10, "generator derivation", algebra < 1e-12 && sim < 1e-6,
         fmt("mode algebra %.2e, ", algebra) + fmt("many-body %.2e", sim));
}

void property_suite() {
  const auto checks = app::run_verify();
  int failed = 0;
  std::string names;
  for (const auto& c : checks)
    if (!c.passed()) {
      ++failed;
      names += " [" + c.name + "]";
    }
  report(11, "verification suite", failed == 0,
         std::to_string(checks.size() - failed) + "/" + std::to_string(checks.size()) +
             " checks pass" + names);
}

}  // namespace

int main() {
  guarded(1, "number-state QFI", number_states);
  guarded(2, "ECS asymptote", ecs_asymptote);
  guarded(3, "SES asymptotes", ses_asymptote);
  guarded(4, "EESS closed-form QFI", eess_closed_form);
  guarded(5, "Mandel Q", mandel);
  guarded(6, "loss-probability closures", closures);
  guarded(7, "branch mixture equals Kraus map", oracle_equivalence);
  guarded(8, "loss sweep", figure3);
  guarded(9, "lossless ordering", figure2);
  guarded(10, "generator derivation", appendix);
  guarded(11, "verification suite", property_suite);
  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
