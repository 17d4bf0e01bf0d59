// rib: Rényi-entropy information bottleneck frontiers, solver sweeps,
// time-sharing codes and closed-form demos.
//
// Exit codes: 0 ok, 1 validation error, 2 infeasible enumeration, 3 internal
// error or a failed demo claim.

#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "rib/commands.hpp"
#include "rib/error.hpp"
#include "rib/io.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Information-Renyi entropy bottleneck toolkit"};
  app.set_version_flag("--version", std::string(rib::kToolVersion));
  app.require_subcommand(1);

  std::string joint = "table1a";
  double alpha = 1.0;
  int clusters = 2;
  unsigned jobs = 1;
  int grid = 0;
  std::string out_dir = ".";

  auto add_joint = [&](CLI::App* cmd) {
    cmd->add_option("--joint", joint, "joint JSON file, or 'table1a' for the built-in instance")
        ->capture_default_str();
  };
  auto add_order = [&](CLI::App* cmd) {
    cmd->add_option("--alpha", alpha, "Renyi order in (0,1]")->capture_default_str();
    cmd->add_option("--M", clusters, "number of clusters |W|")->capture_default_str();
    cmd->add_option("--jobs", jobs, "worker threads")->capture_default_str();
  };

  auto* info = app.add_subcommand("info", "print entropies of a joint distribution");
  add_joint(info);

  auto* frontier = app.add_subcommand("frontier", "exhaustive frontier and envelope");
  add_joint(frontier);
  add_order(frontier);
  frontier->add_option("--out", out_dir, "output directory")->capture_default_str();
  frontier->add_option("--grid", grid, "extra interpolated envelope rows")->capture_default_str();

  rib::SolveOptions solve_opts;
  std::optional<double> nu;
  auto* solve = app.add_subcommand("solve", "iterative solver over a beta grid");
  add_joint(solve);
  add_order(solve);
  solve->add_option("--beta-grid", solve_opts.beta_grid_text, "comma list or 'default'")
      ->capture_default_str();
  solve->add_option("--restarts", solve_opts.config.restarts, "random restarts per beta")
      ->capture_default_str();
  solve->add_option("--max-iter", solve_opts.config.max_iter, "update cap per run")
      ->capture_default_str();
  solve->add_option("--seed", solve_opts.config.seed, "seed for random inits")
      ->capture_default_str();
  solve->add_option("--nu", nu, "soft-update temperature (enables soft mode)");
  solve->add_option("--out", out_dir, "output directory")->capture_default_str();
  solve->add_option("--grid", grid, "extra interpolated envelope rows")->capture_default_str();

  rib::TimeshareOptions ts_opts;
  std::optional<std::uint64_t> seed;
  auto* timeshare = app.add_subcommand("timeshare", "time-sharing code for a target cost");
  add_joint(timeshare);
  add_order(timeshare);
  timeshare->add_option("--gamma", ts_opts.gamma, "target Renyi cost in bits")->required();
  timeshare->add_option("--n", ts_opts.n, "block length")->capture_default_str();
  timeshare->add_option("--seed", seed, "also simulate the code with this seed");

  std::string demo_name;
  auto* demo = app.add_subcommand("demo", "verify closed-form claims on a canonical instance");
  demo->add_option("name", demo_name, "example1 | example2 | table1a")
      ->required()
      ->check(CLI::IsMember({"example1", "example2", "table1a"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return rib::kExitValidation;
  }

  try {
    if (*demo) return rib::cmd_demo(demo_name, std::cout);

    const rib::LoadedJoint loaded = rib::load_joint_source(joint);
    if (*info) return rib::cmd_info(loaded, std::cout);
    if (*frontier) {
      return rib::cmd_frontier(loaded, {alpha, clusters, out_dir, jobs, grid}, std::cout);
    }
    if (*solve) {
      solve_opts.config.order = rib::RenyiOrder(alpha);
      solve_opts.config.clusters = clusters;
      solve_opts.config.jobs = jobs;
      solve_opts.config.nu = nu;
      solve_opts.out_dir = out_dir;
      solve_opts.grid = grid;
      return rib::cmd_solve(loaded, solve_opts, std::cout);
    }
    if (*timeshare) {
      ts_opts.alpha = alpha;
      ts_opts.clusters = clusters;
      ts_opts.jobs = jobs;
      ts_opts.seed = seed;
      return rib::cmd_timeshare(loaded, ts_opts, std::cout);
    }
  } catch (const rib::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return rib::kExitValidation;
  } catch (const rib::InfeasibleError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return rib::kExitInfeasible;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return rib::kExitInternal;
  }
  return rib::kExitInternal;
}
