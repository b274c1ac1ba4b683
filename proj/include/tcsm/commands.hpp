#pragma once

// Command implementations behind the tcsm executable. Each returns the
// JSON report plus a CSV projection and the process exit code:
//   0  every verdict passes
//   1  at least one fail or known conflict
//   2  usage / parameter-domain error

#include <cstdint>
#include <numbers>
#include <optional>
#include <string>

#include "tcsm/report.hpp"

namespace tcsm {

struct RunConfig {
  std::string command;
  int n = 0;
  int r = 0;
  double beta = 1.0;
  double length = 2.0 * std::numbers::pi;
  int samples = 2000;
  std::uint64_t seed = 1;
  double min_sep_frac = 1e-3;
  double tol = 1e-8;
  double spectral_tol = 1e-10;
  std::optional<int> degree;
  std::string state = "e1";
  int q = 0;
  bool enumerate = false;
  std::optional<double> predicted_reduced;
  std::string output = "json";
  std::optional<std::string> out_path;
  int threads = 1;
  bool deterministic = false;
};

struct CommandResult {
  json report;
  std::string csv;
  int exit_code = 0;
};

/// A row of the reference ground-energy table, energies in beta^2 pi^2/L^2.
struct ReferenceRow {
  int n;
  int r;
  std::int64_t e0;
};

inline constexpr ReferenceRow kReferenceTable[] = {
    {6, 2, 20}, {7, 2, 21}, {8, 2, 24}, {8, 3, 56}, {9, 2, 27}, {9, 3, 30},
};

std::optional<ReferenceRow> reference_row(int n, int r);

CommandResult cmd_params(const RunConfig& cfg);
CommandResult cmd_table1(const RunConfig& cfg);
CommandResult cmd_verify_ground(const RunConfig& cfg);
CommandResult cmd_verify_excited(const RunConfig& cfg);
CommandResult cmd_spectrum(const RunConfig& cfg);
CommandResult cmd_count_triples(const RunConfig& cfg);
CommandResult cmd_symmetry(const RunConfig& cfg);

/// Dispatches on cfg.command; library errors become exit code 2 (domain)
/// or 1 (numerical failure) with an "error" report.
CommandResult run_command(const RunConfig& cfg);

}  // namespace tcsm
