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


// qfi-gyro: sweeps, verification and state inspection from the command line.
//
// Exit codes: 0 success, 1 computation failure, 2 usage error.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "gyroqfi/app.hpp"
#include "gyroqfi/errors.hpp"

namespace {

using namespace gyroqfi;

constexpr int kComputeFailure = 1;
constexpr int kUsageError = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// List-valued flags arrive split on commas, from the command line and from
// config files alike; they are joined again before parsing.
struct Options {
  std::vector<std::string> families;
  double n = 2.0;
  std::vector<std::string> n_grid{"1:10:1"};
  std::vector<std::string> eta_grid{"0.05:1:0.01"};
  std::string phase = "phi1";
  std::optional<int> n_max;
  int mu = 1;
  std::string out;
  std::string format = "csv";
};

std::string join(const std::vector<std::string>& parts) {
  std::string out;
  for (const auto& p : parts) out += (out.empty() ? "" : ",") + p;
  return out;
}

std::vector<Family> parse_families(const std::string& text) {
  std::vector<Family> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = text.find(',', start);
    const std::string name = text.substr(start, comma - start);
    const auto family = parse_family(name);
    if (!family) throw UsageError("unknown family '" + name + "'");
    out.push_back(*family);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

std::vector<double> grid_or_usage(const std::string& text) {
  try {
    return app::parse_grid(text);
  } catch (const DomainError& e) {
    throw UsageError(std::string("bad grid '") + text + "': " + e.what());
  }
}

app::SweepConfig sweep_config(const Options& o, const std::vector<std::string>& grid) {
  app::SweepConfig c;
  c.families = parse_families(o.families.empty() ? "noon,ecs,ses,eess" : join(o.families));
  c.grid = grid_or_usage(join(grid));
  c.fixed_N = o.n;
  const auto phase = parse_phase_choice(o.phase);
  if (!phase) throw UsageError("unknown phase '" + o.phase + "'");
  c.phase = *phase;
  c.n_max = o.n_max;
  c.mu = o.mu;
  return c;
}

void emit(const Options& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream file(o.out, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open " + o.out + " for writing");
  file << text;
}

int report_sweep(const Options& o, const app::SweepTable& table) {
  emit(o, o.format == "json" ? app::to_json(table) : app::to_csv(table));
  for (const auto& r : table.rows)
    if (!r.ok())
      std::cerr << "error: " << family_name(r.family) << " at " << app::format_number(r.x)
                << ": " << r.error << '\n';
  return table.ok() ? 0 : kComputeFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App cli{"Quantum Fisher information of probe states in a three-site ring gyroscope"};
  cli.set_config("--config", "", "Flat key=value file; flags override it");
  cli.require_subcommand(1);

  Options o;
  cli.add_option("--family", o.families, "Family, or comma list for sweeps")->delimiter(',');
  cli.add_option("--n", o.n, "Mean particle number");
  cli.add_option("--n-grid", o.n_grid, "N grid: start:stop:step or comma list")->delimiter(',');
  cli.add_option("--eta-grid", o.eta_grid, "Transmission grid: start:stop:step or comma list")
      ->delimiter(',');
  cli.add_option("--phase", o.phase, "Estimated phase")
      ->check(CLI::IsMember({"phi1", "phi2", "plus", "minus", "theta"}));
  cli.add_option("--nmax", o.n_max, "Fixed occupation cap (renormalized)")
      ->check(CLI::NonNegativeNumber);
  cli.add_option("--mu", o.mu, "Independent repeats")->check(CLI::PositiveNumber);
  cli.add_option("--out", o.out, "Output file (default stdout)");
  cli.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"csv", "json"}));

  auto* sweep_n = cli.add_subcommand("sweep-n", "Lossless QFI over an N grid")->fallthrough();
  auto* sweep_eta = cli.add_subcommand("sweep-eta", "Lossy QFI over a transmission grid")->fallthrough();
  auto* verify = cli.add_subcommand("verify", "Run the invariant suite")->fallthrough();
  auto* state = cli.add_subcommand("state", "Inspect one probe state")->fallthrough();

  try {
    cli.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = cli.exit(e);
    return code == 0 ? 0 : kUsageError;
  }

  try {
    if (*sweep_n) return report_sweep(o, app::sweep_n(sweep_config(o, o.n_grid)));
    if (*sweep_eta) {
      const auto config = sweep_config(o, o.eta_grid);
      for (double eta : config.grid)
        if (eta < 0.0 || eta > 1.0) throw UsageError("eta grid values must lie in [0, 1]");
      return report_sweep(o, app::sweep_eta(config));
    }
    if (*verify) {
      const auto checks = app::run_verify();
      emit(o, app::format_checks(checks));
      for (const auto& c : checks)
        if (!c.passed()) return kComputeFailure;
      return 0;
    }
    if (*state) {
      const auto families = parse_families(o.families.empty() ? "noon" : join(o.families));
      if (families.size() != 1) throw UsageError("state takes a single family");
      StateSpec spec;
      spec.family = families.front();
      spec.target_N = o.n;
      if (o.n_max) spec.truncation = Truncation::fixed(*o.n_max, true);
      emit(o, app::inspect_state(spec));
      return 0;
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsageError;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kComputeFailure;
  }
  return kUsageError;
}
