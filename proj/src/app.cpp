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


#include "gyroqfi/app.hpp"

#include "json.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

#include "gyroqfi/errors.hpp"
#include "gyroqfi/kernels.hpp"
#include "gyroqfi/loss.hpp"
#include "gyroqfi/protocol.hpp"

namespace gyroqfi::app {

namespace {

// Dense density matrices beyond this dimension are refused by eta sweeps.
constexpr std::size_t kMaxDensityDim = 2500;

double parse_double(std::string_view text) {
  std::string s(text);
  s.erase(0, s.find_first_not_of(" \t"));
  s.erase(s.find_last_not_of(" \t") + 1);
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (s.empty() || used != s.size()) throw DomainError("not a number: '" + s + "'");
  return value;
}

std::string csv_field(const std::optional<double>& v) { return v ? format_number(*v) : ""; }

// JSON carries the same 12 significant digits as CSV.
double printed(double v) { return std::stod(format_number(v)); }

}  // namespace

std::vector<double> parse_grid(std::string_view text) {
  std::vector<double> out;
  if (text.find(':') != std::string_view::npos) {
    std::vector<double> parts;
    std::size_t start = 0;
    while (true) {
      const std::size_t colon = text.find(':', start);
      parts.push_back(parse_double(text.substr(start, colon - start)));
      if (colon == std::string_view::npos) break;
      start = colon + 1;
    }
    if (parts.size() != 3) throw DomainError("range grid must be start:stop:step");
    const double lo = parts[0], hi = parts[1], step = parts[2];
    if (!(step > 0.0)) throw DomainError("grid step must be positive");
    const long count = std::lround(std::floor((hi - lo) / step + 1e-9)) + 1;
    // Rounded to the printed precision so 0.1 steps do not drift.
    for (long i = 0; i < count; ++i)
      out.push_back(std::stod(format_number(lo + static_cast<double>(i) * step)));
  } else {
    std::size_t start = 0;
    while (start <= text.size()) {
      const std::size_t comma = text.find(',', start);
      out.push_back(parse_double(text.substr(start, comma - start)));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
  }
  if (out.empty()) throw DomainError("empty grid");
  for (std::size_t i = 1; i < out.size(); ++i)
    if (!(out[i] > out[i - 1])) throw DomainError("grid must be strictly increasing");
  return out;
}

bool SweepTable::ok() const {
  return std::all_of(rows.begin(), rows.end(), [](const SweepRow& r) { return r.ok(); });
}

Truncation sweep_truncation(const SweepConfig& config, SweepKind kind) {
  if (config.n_max) return Truncation::fixed(*config.n_max, true);
  if (kind == SweepKind::Eta && config.fixed_N == 2.0) return Truncation::reference();
  return Truncation::adaptive();
}

SweepTable sweep_n(const SweepConfig& config) {
  SweepTable table{SweepKind::N, {}};
  for (Family f : config.families)
    for (double n : config.grid) table.rows.push_back({f, n, std::nullopt, 0.0, 0.0, {}});
  const Truncation truncation = sweep_truncation(config, SweepKind::N);
  const long count = static_cast<long>(table.rows.size());
#pragma omp parallel for schedule(dynamic) num_threads(kernels::thread_count())
  for (long i = 0; i < count; ++i) {
    SweepRow& row = table.rows[static_cast<std::size_t>(i)];
    try {
      StateSpec spec{row.family, row.x, calibrate(row.family, row.x), 0.0, truncation};
      row.param = spec.param;
      const TwoModeState state = build_state(spec);
      row.qfi = qfi_pure(state, config.phase);
      GyroParams params;
      params.mu = config.mu;
      row.delta_phase = phase_uncertainty(row.qfi, params, config.phase).delta_phase;
    } catch (const std::exception& e) {
      row.error = e.what();
    }
  }
  return table;
}

std::vector<double> lossy_qfi(const TwoModeState& state, std::span<const double> etas,
                              PhaseChoice phase, const GyroParams& params) {
  const DiagonalObservable gen = generator_for(phase, state.basis(), params);
  const HermitianMatrix rho = projector(state);
  std::vector<double> out;
  out.reserve(etas.size());
  for (double eta : etas) out.push_back(qfi_mixed(kraus_apply(rho, LossChannel(eta)), gen));
  return out;
}

SweepTable sweep_eta(const SweepConfig& config) {
  for (double eta : config.grid)
    if (!(eta >= 0.0 && eta <= 1.0)) throw DomainError("eta grid values must lie in [0, 1]");
  SweepTable table{SweepKind::Eta, {}};
  const Truncation truncation = sweep_truncation(config, SweepKind::Eta);

  std::vector<std::optional<TwoModeState>> states(config.families.size());
  std::vector<std::string> build_errors(config.families.size());
  for (std::size_t f = 0; f < config.families.size(); ++f) {
    const Family family = config.families[f];
    try {
      StateSpec spec{family, config.fixed_N, std::nullopt, 0.0, truncation};
      TwoModeState s = build_state(spec);
      if (s.basis().size() > kMaxDensityDim)
        throw UnsupportedStructureError(
            std::string(family_name(family)) + " needs a " + std::to_string(s.basis().size()) +
            "-dimensional density matrix; pass a smaller --nmax");
      states[f] = std::move(s);
    } catch (const std::exception& e) {
      build_errors[f] = e.what();
    }
    for (double eta : config.grid)
      table.rows.push_back({family, eta, std::nullopt, 0.0, 0.0, build_errors[f]});
  }

  GyroParams params;
  params.mu = config.mu;
  const std::size_t per_family = config.grid.size();
  const long count = static_cast<long>(table.rows.size());
#pragma omp parallel for schedule(dynamic) num_threads(kernels::thread_count())
  for (long i = 0; i < count; ++i) {
    SweepRow& row = table.rows[static_cast<std::size_t>(i)];
    const auto& state = states[static_cast<std::size_t>(i) / per_family];
    if (!state) continue;
    try {
      const double eta = row.x;
      row.qfi = lossy_qfi(*state, std::span(&eta, 1), config.phase, params).front();
      row.delta_phase = phase_uncertainty(row.qfi, params, config.phase).delta_phase;
    } catch (const std::exception& e) {
      row.error = e.what();
    }
  }
  return table;
}

std::string format_number(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

std::string to_csv(const SweepTable& table) {
  std::ostringstream out;
  const bool by_n = table.kind == SweepKind::N;
  out << (by_n ? "family,N,param,qfi,delta_phi1\n" : "family,eta,qfi,delta_phi1\n");
  for (const SweepRow& r : table.rows) {
    out << family_name(r.family) << ',' << format_number(r.x);
    if (by_n) out << ',' << csv_field(r.param);
    if (r.ok())
      out << ',' << format_number(r.qfi) << ',' << format_number(r.delta_phase);
    else
      out << ",,";
    out << '\n';
  }
  return out.str();
}

std::string to_json(const SweepTable& table) {
  using nlohmann::ordered_json;
  const bool by_n = table.kind == SweepKind::N;
  ordered_json rows = ordered_json::array();
  for (const SweepRow& r : table.rows) {
    ordered_json row;
    row["family"] = family_name(r.family);
    row[by_n ? "N" : "eta"] = printed(r.x);
    if (by_n) row["param"] = r.param ? ordered_json(printed(*r.param)) : ordered_json(nullptr);
    if (r.ok()) {
      row["qfi"] = printed(r.qfi);
      row["delta_phi1"] = printed(r.delta_phase);
    } else {
      row["qfi"] = nullptr;
      row["delta_phi1"] = nullptr;
      row["error"] = r.error;
    }
    rows.push_back(std::move(row));
  }
  ordered_json doc;
  doc["command"] = by_n ? "sweep-n" : "sweep-eta";
  doc["rows"] = std::move(rows);
  return doc.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// Verification suite

Check check_mandel_identity(const TwoModeState& state, double nominal_N, std::string name) {
  const double f = qfi_pure(state, PhaseChoice::Phi1);
  const double rhs = 2.0 * nominal_N * (mandel_q(state, 1) + 1.0);
  return {std::move(name), std::abs(f - rhs) / f, 1e-9};
}

Check check_branch_equivalence(const TwoModeState& state, double eta, std::string name) {
  const LossChannel channel(eta);
  const HermitianMatrix kraus = kraus_apply(state, channel);
  const HermitianMatrix mixed = mix(branch_decompose(state, channel));
  return {std::move(name), (kraus.entries() - mixed.entries()).cwiseAbs().maxCoeff(), 1e-12};
}

namespace {

std::string label(std::string_view base, Family f, double n) {
  return std::string(base) + " " + std::string(family_name(f)) + " N=" + format_number(n);
}

TwoModeState at_N(Family f, double n, Truncation t = Truncation::adaptive()) {
  return build_state({f, n, std::nullopt, 0.0, t});
}

TwoModeState at_param(Family f, double x) {
  return build_state({f, 1.0, x, 0.0, Truncation::adaptive()});
}

constexpr std::array kPathSymmetric = {Family::NOON, Family::ECS, Family::SES, Family::EESS};
constexpr std::array kLossyFamilies = {Family::Uncorrelated, Family::BAT, Family::NOON,
                                       Family::MaxEntangledM, Family::ECS, Family::SES,
                                       Family::EESS};

void verify_protocol(std::vector<Check>& out) {
  double algebra = 0.0;
  for (int k = 0; k < 8; ++k) {
    GyroParams p;
    p.theta = 2.0 * std::numbers::pi * k / 8.0;
    algebra = std::max(algebra, verify_appendix_a(p));
  }
  out.push_back({"mode algebra: conjugated rotation generator is diagonal", algebra, 1e-12});

  GyroParams p;
  p.theta = 0.7;
  std::vector<ThreeModeState> probes = {
      ThreeModeState::fock(1, 2, 1), ThreeModeState::fock(2, 1, 0),
      ThreeModeState::fock(0, 0, 4)};
  for (int n = 1; n <= 4; ++n) probes.push_back(ThreeModeState::from_two_mode(at_N(Family::NOON, n)));
  probes.push_back(ThreeModeState::from_two_mode(at_N(Family::BAT, 4)));
  probes.push_back(ThreeModeState::from_two_mode(at_N(Family::MaxEntangledM, 2)));
  probes.push_back(ThreeModeState::from_two_mode(at_N(Family::Uncorrelated, 3)));
  double worst = 0.0;
  for (const auto& s : probes)
    worst = std::max(worst, std::abs(simulate_protocol(s, p) - generator_qfi(s, p)));
  out.push_back({"many-body protocol QFI equals generator QFI (N <= 4)", worst, 1e-6});
}

void verify_states(std::vector<Check>& out) {
  for (Family f : kPathSymmetric)
    for (double n : {1.0, 2.0, 4.0})
      out.push_back(check_mandel_identity(at_N(f, n), n, label("F(phi1) = 2N(Q+1):", f, n)));

  double exact = 0.0;
  for (double n : {2.0, 4.0, 8.0}) {
    auto rel = [&](Family f, PhaseChoice c, double expected) {
      exact = std::max(exact, std::abs(qfi_pure(at_N(f, n), c) - expected) / expected);
    };
    rel(Family::Uncorrelated, PhaseChoice::PhiMinus, n);
    rel(Family::BAT, PhaseChoice::PhiMinus, n * (n / 2.0 + 1.0));
    rel(Family::NOON, PhaseChoice::PhiMinus, n * n);
    rel(Family::MaxEntangledM, PhaseChoice::PhiPlus, n * n);
  }
  out.push_back({"number-state QFI closed forms", exact, 1e-12});

  double b6 = 0.0;
  for (double r : {0.3, 0.8, 1.3, 2.0}) {
    const double f = qfi_pure(at_param(Family::EESS, r), PhaseChoice::Phi1);
    b6 = std::max({b6, std::abs(eess_qfi_closed_form(r) - f) / f,
                   std::abs(eess_qfi_moment_form(r) - f) / f});
  }
  out.push_back({"EESS closed-form QFI matches Fock sum", b6, 1e-8});
}

void verify_loss(std::vector<Check>& out) {
  for (Family f : kPathSymmetric)
    for (double n : {1.0, 2.0, 4.0}) {
      const TwoModeState s = at_N(f, n);
      Check worst{label("branch mixture equals Kraus map:", f, n), 0.0, 1e-12};
      for (double eta : {0.1, 0.3, 0.5, 0.7, 0.9})
        worst.deviation = std::max(worst.deviation, check_branch_equivalence(s, eta, "").deviation);
      out.push_back(worst);
    }

  double closure = 0.0;
  double total = 0.0;
  for (Family f : {Family::SES, Family::EESS})
    for (double r : {0.5, 1.0, 1.5})
      for (double eta : {0.2, 0.5, 0.8}) {
        const BranchProbabilities a = analytic_branch_probabilities(f, r, eta);
        const BranchEnsemble e = branch_decompose(at_param(f, r), LossChannel(eta));
        BranchProbabilities n;
        for (const PureBranch& b : e.branches) {
          if (b.record.lost_a > 0) n.sum_a += b.probability;
          else if (b.record.lost_b > 0) n.sum_b += b.probability;
          else n.no_loss += b.probability;
        }
        closure = std::max({closure, std::abs(a.no_loss - n.no_loss), std::abs(a.sum_a - n.sum_a),
                            std::abs(a.sum_b - n.sum_b)});
        total = std::max({total, std::abs(a.total() - 1.0), std::abs(e.total_probability() - 1.0)});
      }
  out.push_back({"closed-form branch probabilities match branch sums", closure, 1e-10});
  out.push_back({"branch probabilities sum to one", total, 1e-10});

  double relation = 0.0;
  for (double r = 0.25; r <= 3.0; r += 0.25)
    for (double eta : {0.2, 0.5, 0.8}) {
      const double rt = damped_squeezing(r, eta);
      const NormalizationSet n = normalization_set(0.0, r);
      const NormalizationSet nt = normalization_set(0.0, rt);
      const double a2 = nt.even_entangled * nt.even_entangled;
      const double b2 = n.even_entangled * n.even_entangled;
      const double lhs = n.even * n.even * std::cosh(rt) / (nt.even * nt.even * std::cosh(r)) *
                         (1.0 - 2.0 * a2) / a2;
      relation = std::max(relation, std::abs(lhs - (1.0 - 2.0 * b2) / b2));
    }
  out.push_back({"EESS normalization relation under loss", relation, 1e-12});

  double trace = 0.0;
  double damping = 0.0;
  double identity = 0.0;
  for (Family f : kLossyFamilies) {
    const TwoModeState s = at_N(f, 2.0);
    // Measured against the truncated input so the tail does not count.
    const auto total_n = DiagonalObservable::total_number(s.basis());
    const double norm2 = s.amplitudes().squaredNorm();
    const double mean = expectation(s, total_n);
    for (double eta : {0.3, 0.7}) {
      const HermitianMatrix rho = kraus_apply(s, LossChannel(eta));
      trace = std::max(trace, std::abs(rho.trace() - norm2));
      damping = std::max(damping, std::abs(expectation(rho, total_n) - eta * mean));
    }
    const double pure = qfi_pure(s, PhaseChoice::Phi1);
    const double mixed =
        qfi_mixed(kraus_apply(s, LossChannel(1.0)), DiagonalObservable::number1(s.basis()));
    identity = std::max(identity, std::abs(mixed - pure));
  }
  out.push_back({"loss channel preserves trace", trace, 1e-12});
  out.push_back({"loss damps the mean particle number by eta", damping, 1e-10});
  out.push_back({"mixed QFI at eta = 1 equals pure QFI", identity, 1e-9});
}

void verify_qfi(std::vector<Check>& out) {
  std::vector<double> etas;
  for (int k = 1; k <= 20; ++k) etas.push_back(0.05 * k);
  const long count = static_cast<long>(kLossyFamilies.size());
  std::vector<double> drops(kLossyFamilies.size(), 0.0);
#pragma omp parallel for schedule(dynamic) num_threads(kernels::thread_count())
  for (long i = 0; i < count; ++i) {
    const auto f = kLossyFamilies[static_cast<std::size_t>(i)];
    const auto values = lossy_qfi(at_N(f, 2.0), etas, PhaseChoice::Phi1);
    for (std::size_t k = 1; k < values.size(); ++k)
      drops[static_cast<std::size_t>(i)] =
          std::max(drops[static_cast<std::size_t>(i)], values[k - 1] - values[k]);
  }
  out.push_back({"lossy QFI is non-decreasing in eta (N=2)",
                 *std::max_element(drops.begin(), drops.end()), 1e-9});

  double doubling = 0.0;
  for (Family f : kAllFamilies) {
    const TwoModeState s = at_N(f, 2.0);
    const TwoModeState wide = at_N(f, 2.0, Truncation::fixed(2 * std::max(s.n_max(), 2)));
    for (PhaseChoice c : {PhaseChoice::Phi1, PhaseChoice::PhiMinus, PhaseChoice::PhiPlus}) {
      const double a = qfi_pure(s, c);
      const double b = qfi_pure(wide, c);
      doubling = std::max(doubling, std::abs(a - b) / std::max(b, 1e-300));
    }
  }
  {
    const TwoModeState s = at_N(Family::SES, 2.0);
    const TwoModeState wide = at_N(Family::SES, 2.0, Truncation::fixed(2 * s.n_max()));
    const double a = lossy_qfi(s, std::array{0.8}, PhaseChoice::Phi1).front();
    const double b = lossy_qfi(wide, std::array{0.8}, PhaseChoice::Phi1).front();
    doubling = std::max(doubling, std::abs(a - b) / b);
  }
  out.push_back({"doubling n_max leaves QFI unchanged", doubling, 1e-8});
}

}  // namespace

std::vector<Check> run_verify() {
  std::vector<Check> out;
  verify_protocol(out);
  verify_states(out);
  verify_loss(out);
  verify_qfi(out);
  return out;
}

std::string format_checks(const std::vector<Check>& checks) {
  std::ostringstream out;
  for (const Check& c : checks) {
    char dev[32];
    char tol[32];
    std::snprintf(dev, sizeof dev, "%.3e", c.deviation);
    std::snprintf(tol, sizeof tol, "%.1e", c.tolerance);
    out << (c.passed() ? "[PASS] " : "[FAIL] ") << c.name << "  deviation " << dev << " (tol "
        << tol << ")\n";
  }
  return out.str();
}

std::string inspect_state(const StateSpec& in) {
  StateSpec spec = in;
  if (!spec.param && !is_number_state(spec.family)) spec.param = calibrate(spec.family, spec.target_N);
  const TwoModeState state = build_state(spec);
  std::ostringstream out;
  out << "family   = " << family_name(spec.family) << '\n';
  out << "N        = " << format_number(spec.target_N) << '\n';
  if (spec.param)
    out << "param    = " << format_number(*spec.param)
        << (is_squeezed(spec.family) ? "  (r)" : "  (alpha)") << '\n';
  else
    out << "param    = none\n";
  out << "mean     = " << format_number(mean_particle_number(state)) << '\n';
  out << "n_max    = " << state.n_max() << '\n';
  out << "tail     = " << format_number(state.tail_mass()) << '\n';
  try {
    out << "mandel_q = " << format_number(mandel_q(state, 1)) << "  (mode 1)\n";
  } catch (const UndefinedQError&) {
    out << "mandel_q = undefined\n";
  }
  out << "amplitudes (leading):\n";
  int shown = 0;
  for (std::size_t i = 0; i < state.basis().size() && shown < 8; ++i) {
    const Complex a = state.amplitudes()(static_cast<Eigen::Index>(i));
    if (std::abs(a) < 1e-15) continue;
    const Occupation o = state.basis().occupation(i);
    out << "  |" << o.n1 << ',' << o.n2 << ">  " << format_number(a.real());
    if (a.imag() != 0.0) out << (a.imag() < 0 ? " - " : " + ") << format_number(std::abs(a.imag())) << "i";
    out << '\n';
    ++shown;
  }
  out << "qfi (lossless):\n";
  for (PhaseChoice c : {PhaseChoice::Phi1, PhaseChoice::Phi2, PhaseChoice::PhiPlus,
                        PhaseChoice::PhiMinus, PhaseChoice::ThetaDirect})
    out << "  " << phase_choice_name(c) << " = " << format_number(qfi_pure(state, c)) << '\n';
  return out.str();
}

}  // namespace gyroqfi::app
