// Acceptance suite: one line per criterion, non-zero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "rib/canonical.hpp"
#include "rib/solver.hpp"
#include "rib/timeshare.hpp"
#include "support/instances.hpp"

namespace {

using namespace rib;
using rib::testing::benchmark_joints;

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Criterion {
  int id;
  std::string name;
  double time_limit_s;
  std::function<Outcome()> body;
};

std::vector<double> gamma_grid(double top, int points = 101) {
  std::vector<double> g;
  for (int i = 0; i < points; ++i) g.push_back(top * i / (points - 1));
  return g;
}

Envelope brute_envelope(const JointDistribution& j, double alpha, int m) {
  return upper_concave_envelope(brute_force_points(j, RenyiOrder(alpha), m));
}

Outcome table_constants() {
  const auto j = table1a();
  const double hx = shannon_entropy(j.p_x());
  const double i = mutual_information(j);
  const double err = std::max(std::abs(hx - 2.25), std::abs(i - 1.5));
  return {err <= 1e-12, fmt::format("H(X)={:.15g} I(Y;X)={:.15g} max err {:.2e}", hx, i, err)};
}

Outcome m2_exactness() {
  const auto j = table1a();
  double worst = 0.0;
  bool shape_ok = true;
  for (double alpha : {0.1, 0.5, 1.0}) {
    const auto e = brute_envelope(j, alpha, 2);
    const auto& v = e.vertices();
    if (v.size() != 2) {
      shape_ok = false;
      continue;
    }
    worst = std::max({worst, std::abs(v[0].gamma), std::abs(v[0].eta), std::abs(v[1].gamma - 1.0),
                      std::abs(v[1].eta - 1.0)});
  }
  return {shape_ok && worst <= 1e-12,
          fmt::format("two vertices for all orders: {}, max err {:.2e}", shape_ok, worst)};
}

Outcome m3_flat_points() {
  const auto j = table1a();
  Outcome out;
  // alpha = 1: envelope equals Omega, flat point (1.5, 1.5).
  const auto e1 = brute_envelope(j, 1.0, 3);
  double omega_gap = 0.0;
  for (double g : gamma_grid(std::log2(3.0))) {
    omega_gap = std::max(omega_gap, std::abs(e1(g) - omega(g, 1.5)));
  }
  const double flat1 = std::max(std::abs(e1.flat_start() - 1.5), std::abs(e1.flat_value() - 1.5));
  // alpha = 0.5: flat point at H_{1/2}(1/4,1/2,1/4) = 2 log2(1 + 1/sqrt 2).
  const double expected = 2.0 * std::log2(1.0 + 1.0 / std::sqrt(2.0));
  const auto e05 = brute_envelope(j, 0.5, 3);
  const double flat05 =
      std::max(std::abs(e05.flat_start() - expected), std::abs(e05.flat_value() - 1.5));
  const auto e01 = brute_envelope(j, 0.1, 3);
  const bool below = e1.flat_start() < 2.25 && e05.flat_start() < 2.25 && e01.flat_start() < 2.25;
  out.pass = omega_gap <= 1e-9 && flat1 <= 1e-9 && flat05 <= 1e-9 && below;
  out.detail = fmt::format(
      "|env-Omega|={:.2e}, flat(1)=({:.12g},{:.12g}), flat(0.5)=({:.12g},{:.12g}) vs {:.12g}, "
      "flat(0.1)={:.12g}",
      omega_gap, e1.flat_start(), e1.flat_value(), e05.flat_start(), e05.flat_value(), expected,
      e01.flat_start());
  return out;
}

Outcome example1_suite() {
  std::mt19937_64 rng(101);
  double worst = 0.0;
  for (int t = 0; t < 100; ++t) {
    const auto [f, px] = rib::testing::random_function_instance(rng, 6);
    const auto j = example1_joint(f, px);
    const int m = static_cast<int>(j.x_size());
    const double i_yx = mutual_information(j);
    const auto e = brute_envelope(j, 1.0, m);
    for (double g : gamma_grid(std::log2(static_cast<double>(m)))) {
      worst = std::max(worst, std::abs(e(g) - omega(g, i_yx)));
    }
  }
  return {worst <= 1e-9, fmt::format("100 instances, max |env-Omega| {:.2e}", worst)};
}

Outcome example2_suite() {
  std::mt19937_64 rng(202);
  double worst_env = 0.0;
  double worst_pw = 0.0;
  for (int t = 0; t < 100; ++t) {
    const auto spec = rib::testing::random_block_spec(rng, 4, 6);
    const auto [j, labels] = example2_joint(spec);
    const int k = spec.blocks();
    const double i_yx = mutual_information(j);
    const auto e = brute_envelope(j, 1.0, k);
    worst_env = std::max(worst_env, std::abs(e(i_yx) - i_yx));
    const auto s = spec.block_masses();
    const auto sys = induce(j, canonical_map(labels, k), k, RenyiOrder::shannon());
    for (int b = 0; b < k; ++b) {
      worst_pw = std::max(worst_pw, std::abs(sys.p_w[b] - s[static_cast<std::size_t>(b)]));
    }
  }
  // P_W(k) = s_k is an identity of exact arithmetic; allow a few ulps of summation order.
  return {worst_env <= 1e-9 && worst_pw <= 4 * std::numeric_limits<double>::epsilon(),
          fmt::format("100 specs, max |env(I)-I| {:.2e}, max |P_W(k)-s_k| {:.2e}", worst_env,
                      worst_pw)};
}

bool same_vertices(const Envelope& a, const Envelope& b, double tol) {
  if (a.vertices().size() != b.vertices().size()) return false;
  for (std::size_t i = 0; i < a.vertices().size(); ++i) {
    if (std::abs(a.vertices()[i].gamma - b.vertices()[i].gamma) > tol) return false;
    if (std::abs(a.vertices()[i].eta - b.vertices()[i].eta) > tol) return false;
  }
  return true;
}

Outcome solver_recovery() {
  const auto joints = benchmark_joints();
  int cells = 0;
  int matched = 0;
  double worst_excess = 0.0;
  for (std::size_t i = 0; i < joints.size(); ++i) {
    for (double alpha : {0.3, 0.7, 1.0}) {
      for (int m : {2, 3}) {
        const auto oracle = brute_envelope(joints[i], alpha, m);
        SolverConfig cfg;
        cfg.order = RenyiOrder(alpha);
        cfg.clusters = m;
        cfg.restarts = 20;
        cfg.seed = 1000 + i;
        const auto result = sweep(joints[i], cfg);
        ++cells;
        if (same_vertices(result.envelope, oracle, 1e-9)) ++matched;
        for (const auto& p : result.points) worst_excess = std::max(worst_excess, p.eta - oracle(p.gamma));
        for (double g : gamma_grid(oracle.flat_start() + 0.5)) {
          worst_excess = std::max(worst_excess, result.envelope(g) - oracle(g));
        }
      }
    }
  }
  const double rate = static_cast<double>(matched) / cells;
  return {rate >= 0.95 && worst_excess <= 1e-9,
          fmt::format("{}/{} cells exact ({:.1f}%), max excess over oracle {:.2e}", matched, cells,
                      100.0 * rate, worst_excess)};
}

Outcome bounds_suite() {
  const auto joints = benchmark_joints();
  double slack1 = 0.0, slack3 = 0.0, slack4 = 0.0;  // most negative slack seen
  for (const auto& j : joints) {
    const double i_yx = mutual_information(j);
    for (int m : {2, 3}) {
      const auto top = brute_envelope(j, 1.0, m);
      const auto next = brute_envelope(j, 1.0, m + 1);
      for (double alpha : {0.3, 0.7, 1.0}) {
        const auto e = alpha == 1.0 ? top : brute_envelope(j, alpha, m);
        const auto e_next = alpha == 1.0 ? next : brute_envelope(j, alpha, m + 1);
        const double span = std::max(e.flat_start(), e_next.flat_start()) + 0.5;
        for (double g : gamma_grid(span)) {
          const double om = omega(g, i_yx);
          slack1 = std::min({slack1, om - e(g), std::log2(static_cast<double>(m)) - om});
          slack3 = std::min(slack3, top(g) - e(g));
          slack4 = std::min(slack4, e_next(g) - e(g));
        }
      }
    }
  }
  return {slack3 >= -1e-9 && slack4 >= -1e-9 && slack1 >= -1e-9,
          fmt::format("min slack: Omega bound {:.2e}, order monotone {:.2e}, M monotone {:.2e}", slack1, slack3,
                      slack4)};
}

Outcome achievability() {
  const auto j = table1a();
  const RenyiOrder order = RenyiOrder::shannon();
  const auto e = brute_envelope(j, 1.0, 3);
  double worst = 0.0;
  for (double g : {0.25, 0.75, 1.25}) {
    const auto code = realize(plan(e, g), 10000, 3);
    const auto perf = evaluate(code, j, order);
    worst = std::max({worst, std::abs(perf.gamma - g), std::abs(perf.eta - e(g))});
  }
  std::mt19937_64 rng(303);
  std::uniform_int_distribution<int> len(1, 40);
  double converse = -1.0;
  for (int t = 0; t < 1000; ++t) {
    std::vector<DeterministicMap> maps;
    const int n = len(rng);
    for (int i = 0; i < n; ++i) maps.push_back(rib::testing::random_map(rng, j.x_size(), 3));
    const auto perf = evaluate(make_code(maps, 3), j, order);
    converse = std::max(converse, perf.eta - e(perf.gamma));
  }
  return {worst <= 3e-4 && converse <= 1e-9,
          fmt::format("max achievability deviation {:.2e}; max converse excess {:.2e}", worst,
                      converse)};
}

Outcome renyi_suite() {
  double uniform_err = 0.0;
  for (int m = 1; m <= 16; ++m) {
    const auto u = Distribution::uniform(m);
    for (double a : {0.05, 0.1, 0.3, 0.5, 0.7, 0.9, 0.999, 1.0}) {
      uniform_err = std::max(uniform_err, std::abs(renyi_entropy(u, RenyiOrder(a)) - std::log2(m)));
    }
  }
  std::mt19937_64 rng(404);
  bool monotone = true;
  double continuity = 0.0;
  for (int t = 0; t < 1000; ++t) {
    std::uniform_int_distribution<int> n(1, 12);
    const auto p = rib::testing::random_distribution(rng, n(rng));
    double prev = infinity<double>();
    for (int k = 1; k <= 10; ++k) {
      const double h = renyi_entropy(p, RenyiOrder(k / 10.0));
      if (h > prev + 1e-12) monotone = false;
      prev = h;
    }
    continuity = std::max(continuity,
                          std::abs(renyi_entropy(p, RenyiOrder(1.0 - 1e-4)) - shannon_entropy(p)));
  }
  return {uniform_err <= 1e-12 && monotone && continuity <= 1e-3,
          fmt::format("uniform err {:.2e}, monotone {}, max |H_(1-1e-4) - H| {:.2e}", uniform_err,
                      monotone, continuity)};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "table1a constants", 1e-3, table_constants},
      {2, "M=2 envelope exactness", 1.0, m2_exactness},
      {3, "M=3 flat points", 1.0, m3_flat_points},
      {4, "function example envelope = Omega", 30.0, example1_suite},
      {5, "block-diagonal identities", 30.0, example2_suite},
      {6, "solver recovers oracle envelope", 300.0, solver_recovery},
      {7, "envelope bounds and monotonicity", 300.0, bounds_suite},
      {8, "time-sharing achievability and converse", 60.0, achievability},
      {9, "Renyi primitive properties", 60.0, renyi_suite},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.body();
    } catch (const std::exception& e) {
      o = {false, fmt::format("exception: {}", e.what())};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs <= c.time_limit_s;
    const bool pass = o.pass && in_time;
    failures += pass ? 0 : 1;
    fmt::print("[{}] criterion {}: {} -- {} ({:.3f}s, limit {}s)\n", pass ? "PASS" : "FAIL", c.id,
               c.name, o.detail, secs, c.time_limit_s);
    std::fflush(stdout);
  }
  fmt::print("{} of {} criteria passed\n", criteria.size() - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
