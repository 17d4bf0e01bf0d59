#include "rib/commands.hpp"

#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "rib/canonical.hpp"
#include "rib/io.hpp"
#include "rib/timeshare.hpp"

namespace rib {

namespace {

constexpr double kClaimTolerance = 1e-9;

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error(fmt::format("cannot write '{}'", path.string()));
  out << text;
}

void ensure_dir(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw std::runtime_error(fmt::format("cannot create '{}': {}", dir.string(), ec.message()));
}

class ClaimSheet {
 public:
  explicit ClaimSheet(std::ostream& out) : out_(out) {}

  void check(const std::string& claim, double residual, double tolerance = kClaimTolerance) {
    const bool pass = std::abs(residual) <= tolerance;
    all_pass_ = all_pass_ && pass;
    fmt::print(out_, "{} {} (residual {:.3e})\n", pass ? "PASS" : "FAIL", claim, residual);
  }
  void check_true(const std::string& claim, bool pass, double residual) {
    all_pass_ = all_pass_ && pass;
    fmt::print(out_, "{} {} (residual {:.3e})\n", pass ? "PASS" : "FAIL", claim, residual);
  }
  int exit_code() const { return all_pass_ ? kExitOk : kExitInternal; }

 private:
  std::ostream& out_;
  bool all_pass_ = true;
};

// Largest |envelope - omega| over 101 evenly spaced gammas on [0, log2 M].
double omega_gap(const Envelope& e, double i_yx, int clusters) {
  const double top = std::log2(static_cast<double>(clusters));
  double gap = 0.0;
  for (int i = 0; i <= 100; ++i) {
    const double g = top * i / 100.0;
    gap = std::max(gap, std::abs(e(g) - omega(g, i_yx)));
  }
  return gap;
}

int demo_example1(std::ostream& out) {
  ClaimSheet sheet(out);
  const std::vector<int> f{0, 0, 1, 1};
  const JointDistribution joint = example1_joint(f, Distribution::uniform(4));
  const double i_yx = mutual_information(joint);
  const double h_y = shannon_entropy(joint.p_y());
  fmt::print(out, "example1: f = (a,a,b,b) on 4 equiprobable symbols, M = 4, alpha = 1\n");
  sheet.check("I(Y;X) = H(Y) = 1", std::max(std::abs(i_yx - h_y), std::abs(i_yx - 1.0)));

  const int m = 4;
  const auto env = upper_concave_envelope(brute_force_points(joint, RenyiOrder::shannon(), m));
  sheet.check("envelope(0) = 0", env(0.0));
  sheet.check("envelope = Omega on 101-point grid", omega_gap(env, i_yx, m));

  const DeterministicMap g = DeterministicMap(f);
  const InducedSystem s = induce(joint, g, m, RenyiOrder::shannon());
  sheet.check("W = h(f(X)) gives H(W) = H(Y)", s.renyi_cost - h_y);
  sheet.check("W = h(f(X)) gives I(Y;W) = H(Y)", s.relevance - h_y);
  return sheet.exit_code();
}

int demo_example2(std::ostream& out) {
  ClaimSheet sheet(out);
  const std::vector<BlockDiagonalSpec> specs{
      table1a_spec(), {{2, 1}, {1, 2}, {0.25, 0.25}}, {{1, 1, 2, 1}, {1, 2, 1, 1}, {0.1, 0.15, 0.2, 0.2}}};
  for (std::size_t i = 0; i < specs.size(); ++i) {
    const auto& spec = specs[i];
    const auto [joint, labels] = example2_joint(spec);
    const auto s = spec.block_masses();
    double expected_i = 0.0;
    for (double sk : s) expected_i -= sk * std::log2(sk);
    const double i_yx = mutual_information(joint);
    fmt::print(out, "example2 instance {}: K = {}, |X| = {}, |Y| = {}, M = K, alpha = 1\n", i + 1,
               spec.blocks(), joint.x_size(), joint.y_size());
    sheet.check("I(Y;X) = -sum s_k log2 s_k", i_yx - expected_i);

    const int m = spec.blocks();
    const InducedSystem c = induce(joint, canonical_map(labels, m), m, RenyiOrder::shannon());
    double pw_gap = 0.0;
    for (int k = 0; k < m; ++k) pw_gap = std::max(pw_gap, std::abs(c.p_w[k] - s[static_cast<std::size_t>(k)]));
    sheet.check("canonical map gives P_W(k) = s_k", pw_gap);
    sheet.check("canonical map gives H(W) = I(Y;W) = I(Y;X)",
                std::max(std::abs(c.renyi_cost - i_yx), std::abs(c.relevance - i_yx)));

    const auto env = upper_concave_envelope(brute_force_points(joint, RenyiOrder::shannon(), m));
    sheet.check("envelope(I(Y;X)) = I(Y;X)", env(i_yx) - i_yx);
    double gap = 0.0;
    for (int j = 0; j <= 100; ++j) {
      const double g = i_yx * j / 100.0;
      gap = std::max(gap, std::abs(env(g) - omega(g, i_yx)));
    }
    sheet.check("envelope = Omega on [0, I(Y;X)]", gap);
  }
  return sheet.exit_code();
}

int demo_table1a(std::ostream& out) {
  ClaimSheet sheet(out);
  const JointDistribution joint = table1a();
  fmt::print(out, "table1a: 4 x 5 block-diagonal joint, K = 3\n");
  sheet.check("H(X) = 2.25", shannon_entropy(joint.p_x()) - 2.25);
  sheet.check("I(Y;X) = 1.5", mutual_information(joint) - 1.5);

  for (double alpha : {0.1, 0.5, 1.0}) {
    const RenyiOrder order(alpha);
    const auto env2 = upper_concave_envelope(brute_force_points(joint, order, 2));
    const auto& v = env2.vertices();
    double residual = 1.0;
    if (v.size() == 2) {
      residual = std::max({std::abs(v[0].gamma), std::abs(v[0].eta), std::abs(v[1].gamma - 1.0),
                           std::abs(v[1].eta - 1.0)});
    }
    sheet.check(fmt::format("alpha={} M=2: vertices are (0,0) and (1,1)", alpha), residual);

    const auto env3 = upper_concave_envelope(brute_force_points(joint, order, 3));
    const Eigen::Vector3d s(0.25, 0.5, 0.25);
    const double expected_start = renyi_entropy(s, order);
    sheet.check(fmt::format("alpha={} M=3: flat point = (H_alpha(1/4,1/2,1/4), 1.5)", alpha),
                std::max(std::abs(env3.flat_start() - expected_start),
                         std::abs(env3.flat_value() - 1.5)));
    sheet.check_true(fmt::format("alpha={} M=3: flat start below H(X) = 2.25", alpha),
                     env3.flat_start() < 2.25, env3.flat_start() - 2.25);
  }
  return sheet.exit_code();
}

}  // namespace

LoadedJoint load_joint_source(const std::string& source) {
  JointDistribution joint = source == "table1a" ? table1a() : load_joint(source);
  std::string digest = joint_digest(joint);
  return {std::move(joint), source, std::move(digest)};
}

std::vector<double> parse_beta_grid(const std::string& text) {
  if (text == "default") return default_beta_grid();
  std::vector<double> grid;
  std::stringstream ss(text);
  std::string token;
  while (std::getline(ss, token, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(token, &used);
    } catch (const std::exception&) {
      throw ValidationError(fmt::format("bad beta value '{}'", token));
    }
    if (used != token.size() || !(v >= 0.0) || !std::isfinite(v)) {
      throw ValidationError(fmt::format("bad beta value '{}'", token));
    }
    grid.push_back(v);
  }
  if (grid.empty()) throw ValidationError("beta grid is empty");
  return grid;
}

int cmd_info(const LoadedJoint& loaded, std::ostream& out) {
  const auto& j = loaded.joint;
  fmt::print(out, "source: {}\n", loaded.source);
  fmt::print(out, "digest: {}\n", loaded.digest);
  fmt::print(out, "|Y| = {}, |X| = {}\n", j.y_size(), j.x_size());
  fmt::print(out, "H(X) = {}\n", format_number(shannon_entropy(j.p_x())));
  fmt::print(out, "H(Y) = {}\n", format_number(shannon_entropy(j.p_y())));
  fmt::print(out, "I(Y;X) = {}\n", format_number(mutual_information(j)));
  return kExitOk;
}

int cmd_frontier(const LoadedJoint& loaded, const FrontierOptions& opts, std::ostream& out) {
  const RenyiOrder order(opts.alpha);
  const auto points = brute_force_points(loaded.joint, order, opts.clusters, opts.jobs);
  const Envelope env = upper_concave_envelope(points);

  ensure_dir(opts.out_dir);
  std::ostringstream pts, envs;
  write_points_csv(pts, points, opts.alpha, opts.clusters, "bruteforce");
  write_envelope_csv(envs, env, opts.grid);
  write_file(opts.out_dir / "points.csv", pts.str());
  write_file(opts.out_dir / "envelope.csv", envs.str());
  write_manifest(opts.out_dir / "manifest.json",
                 {"frontier",
                  loaded.digest,
                  {{"joint", loaded.source}, {"alpha", opts.alpha}, {"M", opts.clusters},
                   {"grid", opts.grid}},
                  kToolVersion,
                  0});

  fmt::print(out, "maps: {}, distinct points: {}, envelope vertices: {}\n",
             deterministic_map_count(loaded.joint.x_size(), opts.clusters), points.size(),
             env.vertices().size());
  fmt::print(out, "flat point: ({}, {})\n", format_number(env.flat_start()),
             format_number(env.flat_value()));
  return kExitOk;
}

int cmd_solve(const LoadedJoint& loaded, const SolveOptions& opts, std::ostream& out) {
  SolverConfig config = opts.config;
  config.beta_grid = parse_beta_grid(opts.beta_grid_text);
  const SweepResult result = sweep(loaded.joint, config);

  ensure_dir(opts.out_dir);
  std::ostringstream pts, envs, log;
  write_points_csv(pts, result.points, config.order.alpha(), config.clusters, "solver");
  write_envelope_csv(envs, result.envelope, opts.grid);
  log << "beta,restart,iterations,converged,cycle_detected,objective,gamma,eta,map\n";
  for (const auto& r : result.runs) {
    log << format_number(r.beta) << ',' << r.restart << ',' << r.run.iterations << ','
        << (r.run.converged ? 1 : 0) << ',' << (r.run.cycle_detected ? 1 : 0) << ','
        << format_number(r.run.objective_value) << ',' << format_number(r.run.point.gamma) << ','
        << format_number(r.run.point.eta) << ',' << r.run.final_map.to_string() << '\n';
  }
  write_file(opts.out_dir / "solver_points.csv", pts.str());
  write_file(opts.out_dir / "solver_envelope.csv", envs.str());
  write_file(opts.out_dir / "solver_runs.csv", log.str());

  nlohmann::json cfg{{"joint", loaded.source},
                     {"alpha", config.order.alpha()},
                     {"M", config.clusters},
                     {"beta_grid", config.beta_grid},
                     {"restarts", config.restarts},
                     {"max_iter", config.max_iter},
                     {"grid", opts.grid}};
  cfg["nu"] = config.nu ? nlohmann::json(*config.nu) : nlohmann::json(nullptr);
  write_manifest(opts.out_dir / "manifest.json",
                 {"solve", loaded.digest, cfg, kToolVersion, config.seed});

  std::size_t converged = 0;
  for (const auto& r : result.runs) converged += r.run.converged ? 1 : 0;
  fmt::print(out, "runs: {} ({} converged), distinct points: {}, envelope vertices: {}\n",
             result.runs.size(), converged, result.points.size(),
             result.envelope.vertices().size());
  fmt::print(out, "flat point: ({}, {})\n", format_number(result.envelope.flat_start()),
             format_number(result.envelope.flat_value()));
  return kExitOk;
}

int cmd_timeshare(const LoadedJoint& loaded, const TimeshareOptions& opts, std::ostream& out) {
  if (!(opts.gamma >= 0.0)) {
    throw ValidationError(fmt::format("gamma must be non-negative, got {}", opts.gamma));
  }
  const RenyiOrder order(opts.alpha);
  const Envelope env =
      upper_concave_envelope(brute_force_points(loaded.joint, order, opts.clusters, opts.jobs));
  const TimeSharePlan p = plan(env, opts.gamma);
  fmt::print(out, "target: gamma = {}, eta = {}\n", format_number(p.target_gamma),
             format_number(p.target_eta));
  for (std::size_t k = 0; k < p.segments.size(); ++k) {
    const auto& s = p.segments[k];
    fmt::print(out, "segment {}: map {} lambda {} point ({}, {})\n", k + 1, s.map.to_string(),
               format_number(s.weight), format_number(s.gamma), format_number(s.eta));
  }
  const SymbolwiseCode code = realize(p, opts.n, opts.clusters);
  const CodePerformance analytic = evaluate(code, loaded.joint, order);
  fmt::print(out, "analytic n={}: gamma_n = {}, eta_n = {}\n", opts.n,
             format_number(analytic.gamma), format_number(analytic.eta));
  if (opts.seed) {
    const CodePerformance sim = simulate(code, loaded.joint, order, *opts.seed);
    fmt::print(out, "simulated n={} seed={}: gamma_hat = {}, eta_hat = {}\n", opts.n, *opts.seed,
               format_number(sim.gamma), format_number(sim.eta));
  }
  return kExitOk;
}

int cmd_demo(const std::string& name, std::ostream& out) {
  if (name == "example1") return demo_example1(out);
  if (name == "example2") return demo_example2(out);
  if (name == "table1a") return demo_table1a(out);
  throw ValidationError(fmt::format("unknown demo '{}' (expected example1, example2, table1a)", name));
}

}  // namespace rib
