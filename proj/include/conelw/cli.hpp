#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "conelw/report.hpp"

namespace conelw::cli {

/// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailed = 1;
inline constexpr int kExitStructural = 2;

/// Command-line overrides; unset values fall back to the instance file's
/// settings block, then to the built-in defaults.
struct Options {
  std::string instance_path;
  std::optional<int> grid;
  std::optional<int> quad_panels;
  std::optional<int> ode_steps;
  std::optional<int> scan_points;
  std::optional<double> root_tol;
  std::optional<double> residual_tol;
  std::optional<double> strict_eps;
  std::string out;      ///< report path; empty means stdout
  std::string csv_dir;  ///< solve: where curves go (default: next to --out)
  bool timings = false;
  int t_points = 11;  ///< green: table rows
  int s_points = 11;  ///< green: table columns
};

struct CommandResult {
  int exit_code = kExitOk;
  json report;
};

/// load -> validate -> constants -> (F1)-(F3).
CommandResult cmd_verify(const Options& opts);

/// verify + shooting solve + classification; writes one CSV per solution
/// when --out or --csv-dir is given.
CommandResult cmd_solve(const Options& opts);

/// Writes the G(t,s) table as `t,s,G` CSV to `table` and returns the
/// invariant summary.
CommandResult cmd_green(const Options& opts, std::ostream& table);

/// Full command line: `conelw <verify|solve|green> INSTANCE [flags]`.
int run(int argc, char** argv);

}  // namespace conelw::cli
