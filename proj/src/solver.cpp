#include "rib/solver.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <thread>

#include <fmt/format.h>

namespace rib {

std::vector<double> default_beta_grid() {
  std::vector<double> grid{0.0};
  for (int k = -4; k <= 8; ++k) grid.push_back(std::ldexp(1.0, k));
  return grid;
}

void SolverConfig::validate() const {
  if (beta_grid.empty()) throw ValidationError("beta grid must not be empty");
  for (double b : beta_grid) {
    if (!(b >= 0.0) || !std::isfinite(b)) {
      throw ValidationError(fmt::format("beta values must be finite and non-negative, got {}", b));
    }
  }
  if (restarts < 1) throw ValidationError("restarts must be positive");
  if (max_iter < 1) throw ValidationError("max_iter must be positive");
  if (clusters < 1) throw ValidationError("cluster count M must be positive");
  if (nu && !(*nu > 0.0)) throw ValidationError("nu must be positive");
}

namespace {

// Cost-derivative part of the score. Decreasing in P_W(w), infinite when dead.
double renyi_term(const InducedSystem& state, Eigen::Index w) {
  const double pw = state.p_w[w];
  if (!(pw > 0.0)) return infinity<double>();
  const double alpha = state.order.alpha();
  if (state.order.is_shannon()) return -std::log2(pw);
  double power_sum = 0.0;
  for (Eigen::Index v = 0; v < state.p_w.size(); ++v) {
    if (state.p_w[v] > 0.0) power_sum += std::pow(state.p_w[v], alpha);
  }
  return alpha * std::pow(pw, alpha - 1.0) / ((1.0 - alpha) * power_sum);
}

double bracket_with(const Eigen::VectorXd& p_y_given_x, Eigen::Index w, const InducedSystem& state,
                    double beta) {
  const double cost = renyi_term(state, w);
  if (std::isinf(cost)) return cost;
  if (beta == 0.0) return cost;
  const double d = kl_divergence(p_y_given_x, state.p_y_given_w.col(w));
  if (std::isinf(d)) return d;
  return cost + beta * d;
}

std::vector<Eigen::VectorXd> conditionals(const JointDistribution& joint) {
  std::vector<Eigen::VectorXd> out;
  out.reserve(static_cast<std::size_t>(joint.x_size()));
  for (Eigen::Index x = 0; x < joint.x_size(); ++x) out.push_back(joint.p_y_given_x(x));
  return out;
}

Eigen::Index heaviest_cluster(const InducedSystem& state) {
  Eigen::Index best = 0;
  for (Eigen::Index w = 1; w < state.p_w.size(); ++w) {
    if (state.p_w[w] > state.p_w[best]) best = w;
  }
  return best;
}

DeterministicMap hard_step(const std::vector<Eigen::VectorXd>& cond, const InducedSystem& state,
                           double beta) {
  std::vector<int> next(cond.size());
  for (std::size_t x = 0; x < cond.size(); ++x) {
    Eigen::Index best = -1;
    double best_value = infinity<double>();
    for (Eigen::Index w = 0; w < state.clusters(); ++w) {
      const double v = bracket_with(cond[x], w, state, beta);
      if (v < best_value) {
        best_value = v;
        best = w;
      }
    }
    if (best < 0) best = heaviest_cluster(state);
    next[x] = static_cast<int>(best);
  }
  return DeterministicMap(std::move(next));
}

void check_beta(double beta) {
  if (!(beta >= 0.0)) throw ValidationError(fmt::format("beta must be non-negative, got {}", beta));
}

}  // namespace

double bracket(const JointDistribution& joint, Eigen::Index x, Eigen::Index w,
               const InducedSystem& state, double beta) {
  check_beta(beta);
  if (x < 0 || x >= joint.x_size() || w < 0 || w >= state.clusters()) {
    throw ValidationError(fmt::format("bracket index out of range (x={}, w={})", x + 1, w + 1));
  }
  return bracket_with(joint.p_y_given_x(x), w, state, beta);
}

DeterministicMap hard_update(const JointDistribution& joint, const DeterministicMap& prev,
                             double beta, const RenyiOrder& order, int clusters) {
  check_beta(beta);
  const InducedSystem state = induce(joint, prev, clusters, order);
  return hard_step(conditionals(joint), state, beta);
}

Channel soft_update(const JointDistribution& joint, const Channel& prev, double beta,
                    const RenyiOrder& order, double nu) {
  check_beta(beta);
  if (!(nu > 0.0)) throw ValidationError(fmt::format("nu must be positive, got {}", nu));
  const InducedSystem state = induce(joint, prev, order);
  const auto cond = conditionals(joint);
  Eigen::MatrixXd next(prev.x_size(), prev.clusters());
  Eigen::VectorXd score(prev.clusters());
  for (Eigen::Index x = 0; x < prev.x_size(); ++x) {
    for (Eigen::Index w = 0; w < prev.clusters(); ++w) {
      score[w] = bracket_with(cond[static_cast<std::size_t>(x)], w, state, beta);
    }
    const double lowest = score.minCoeff();
    if (std::isinf(lowest)) {
      next.row(x) = prev.matrix().row(x);
      continue;
    }
    for (Eigen::Index w = 0; w < prev.clusters(); ++w) {
      next(x, w) = std::isinf(score[w]) ? 0.0 : std::exp2(-(score[w] - lowest) / nu);
    }
    next.row(x) /= next.row(x).sum();
  }
  return Channel(std::move(next));
}

SolverRun iterate(const JointDistribution& joint, const DeterministicMap& init, double beta,
                  const RenyiOrder& order, int clusters, int max_iter) {
  check_beta(beta);
  const auto cond = conditionals(joint);

  DeterministicMap current = init;
  InducedSystem state = induce(joint, current, clusters, order);
  SolverRun run;
  run.final_map = current;
  run.objective_value = objective(state, beta);
  run.point = {state.renyi_cost, state.relevance, current};

  std::set<DeterministicMap> seen{current};
  for (int step = 1; step <= max_iter; ++step) {
    DeterministicMap next = hard_step(cond, state, beta);
    run.iterations = step;
    if (next == current) {
      run.converged = true;
      break;
    }
    if (seen.contains(next)) {
      run.cycle_detected = true;
      break;
    }
    seen.insert(next);
    current = std::move(next);
    state = induce(joint, current, clusters, order);
    const double value = objective(state, beta);
    if (value > run.objective_value) {
      run.objective_value = value;
      run.final_map = current;
      run.point = {state.renyi_cost, state.relevance, current};
    }
  }
  return run;
}

SolverRun iterate_soft(const JointDistribution& joint, const DeterministicMap& init, double beta,
                       const RenyiOrder& order, int clusters, int max_iter, double nu) {
  Channel channel = to_channel(init, clusters);
  int soft_steps = 0;
  for (; soft_steps < max_iter; ++soft_steps) {
    Channel next = soft_update(joint, channel, beta, order, nu);
    const double change = (next.matrix() - channel.matrix()).cwiseAbs().maxCoeff();
    channel = std::move(next);
    if (change < 1e-12) {
      ++soft_steps;
      break;
    }
  }
  std::vector<int> mode(static_cast<std::size_t>(channel.x_size()));
  for (Eigen::Index x = 0; x < channel.x_size(); ++x) {
    Eigen::Index w = 0;
    channel.matrix().row(x).maxCoeff(&w);
    mode[static_cast<std::size_t>(x)] = static_cast<int>(w);
  }
  SolverRun run = iterate(joint, DeterministicMap(std::move(mode)), beta, order, clusters, max_iter);
  run.iterations += soft_steps;
  return run;
}

DeterministicMap identity_like_init(Eigen::Index x_size, int clusters) {
  std::vector<int> a(static_cast<std::size_t>(x_size));
  for (Eigen::Index x = 0; x < x_size; ++x) {
    a[static_cast<std::size_t>(x)] = static_cast<int>(std::min<Eigen::Index>(x, clusters - 1));
  }
  return DeterministicMap(std::move(a));
}

DeterministicMap greedy_block_init(const JointDistribution& joint, int clusters) {
  // Symbols sharing their most likely y share a cluster; labels beyond M-1 fold into the last.
  std::vector<Eigen::Index> label_of_key;
  std::vector<int> a(static_cast<std::size_t>(joint.x_size()));
  for (Eigen::Index x = 0; x < joint.x_size(); ++x) {
    Eigen::Index key = 0;
    joint.matrix().col(x).maxCoeff(&key);
    auto it = std::find(label_of_key.begin(), label_of_key.end(), key);
    int label = static_cast<int>(it - label_of_key.begin());
    if (it == label_of_key.end()) label_of_key.push_back(key);
    a[static_cast<std::size_t>(x)] = std::min(label, clusters - 1);
  }
  return DeterministicMap(std::move(a));
}

SweepResult sweep(const JointDistribution& joint, const SolverConfig& config) {
  config.validate();
  const Eigen::Index x_size = joint.x_size();

  std::vector<SweepRecord> records;
  std::vector<DeterministicMap> inits;
  for (std::size_t b = 0; b < config.beta_grid.size(); ++b) {
    const double beta = config.beta_grid[b];
    records.push_back({beta, -2, {}});
    inits.push_back(identity_like_init(x_size, config.clusters));
    records.push_back({beta, -1, {}});
    inits.push_back(greedy_block_init(joint, config.clusters));
    for (int r = 0; r < config.restarts; ++r) {
      std::seed_seq seq{static_cast<std::uint32_t>(config.seed),
                        static_cast<std::uint32_t>(config.seed >> 32),
                        static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(r)};
      std::mt19937_64 rng(seq);
      std::uniform_int_distribution<int> pick(0, config.clusters - 1);
      std::vector<int> a(static_cast<std::size_t>(x_size));
      for (auto& v : a) v = pick(rng);
      records.push_back({beta, r, {}});
      inits.push_back(DeterministicMap(std::move(a)));
    }
  }

  auto run_task = [&](std::size_t i) {
    const double beta = records[i].beta;
    records[i].run = config.nu ? iterate_soft(joint, inits[i], beta, config.order, config.clusters,
                                              config.max_iter, *config.nu)
                               : iterate(joint, inits[i], beta, config.order, config.clusters,
                                         config.max_iter);
  };
  const unsigned jobs = std::max(1u, std::min<unsigned>(config.jobs,
                                                        static_cast<unsigned>(records.size())));
  if (jobs == 1) {
    for (std::size_t i = 0; i < records.size(); ++i) run_task(i);
  } else {
    std::vector<std::jthread> threads;
    for (unsigned t = 0; t < jobs; ++t) {
      threads.emplace_back([&, t] {
        for (std::size_t i = t; i < records.size(); i += jobs) run_task(i);
      });
    }
  }

  std::vector<TradeoffPoint> points;
  points.push_back({0.0, 0.0, DeterministicMap::constant(x_size)});
  for (const auto& r : records) points.push_back(r.run.point);
  points = deduplicate(std::move(points));
  Envelope envelope = upper_concave_envelope(points);
  return {std::move(records), std::move(points), std::move(envelope)};
}

}  // namespace rib
