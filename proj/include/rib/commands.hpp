#pragma once

// Subcommand bodies behind the `rib` executable. Each returns the process
// exit code and reports on `out`; ValidationError and InfeasibleError
// propagate to the caller, which maps them to exit codes 1 and 2.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "rib/solver.hpp"

namespace rib {

enum ExitCode : int { kExitOk = 0, kExitValidation = 1, kExitInfeasible = 2, kExitInternal = 3 };

struct LoadedJoint {
  JointDistribution joint;
  std::string source;
  std::string digest;
};

/// `table1a` names the built-in instance; anything else is a file path.
LoadedJoint load_joint_source(const std::string& source);

/// "default" or a comma-separated list of non-negative numbers.
std::vector<double> parse_beta_grid(const std::string& text);

int cmd_info(const LoadedJoint& joint, std::ostream& out);

struct FrontierOptions {
  double alpha = 1.0;
  int clusters = 2;
  std::filesystem::path out_dir = ".";
  unsigned jobs = 1;
  int grid = 0;
};
int cmd_frontier(const LoadedJoint& joint, const FrontierOptions& opts, std::ostream& out);

struct SolveOptions {
  SolverConfig config;
  std::string beta_grid_text = "default";
  std::filesystem::path out_dir = ".";
  int grid = 0;
};
int cmd_solve(const LoadedJoint& joint, const SolveOptions& opts, std::ostream& out);

struct TimeshareOptions {
  double alpha = 1.0;
  int clusters = 2;
  double gamma = 0.0;
  int n = 1000;
  std::optional<std::uint64_t> seed;  ///< enables the Monte Carlo estimate
  unsigned jobs = 1;
};
int cmd_timeshare(const LoadedJoint& joint, const TimeshareOptions& opts, std::ostream& out);

/// name is one of example1, example2, table1a. Returns kExitOk iff every claim passes.
int cmd_demo(const std::string& name, std::ostream& out);

}  // namespace rib
