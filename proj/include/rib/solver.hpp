#pragma once

// Iterative cluster-assignment solver for max beta*I(Y;W) - H_alpha(W) over
// |W| = M, plus beta sweeps that turn its runs into an estimated envelope.
//
// Each symbol x is scored against every cluster w with
//
//   alpha P_W(w)^(alpha-1) / ((1-alpha) sum_w' P_W(w')^alpha) + beta D(P_{Y|X=x} || P_{Y|W=w})
//
// (or -log2 P_W(w) + beta D(...) at alpha = 1). Hard updates move x to the
// minimizing cluster; soft updates weight clusters by 2^(-score/nu).

#include <cstdint>
#include <optional>
#include <vector>

#include "rib/frontier.hpp"

namespace rib {

/// {0} together with 2^k for k = -4..8.
std::vector<double> default_beta_grid();

struct SolverConfig {
  std::vector<double> beta_grid = default_beta_grid();
  int restarts = 20;
  int max_iter = 100;
  std::uint64_t seed = 0;
  std::optional<double> nu;  ///< soft-mode temperature; hard updates when empty
  RenyiOrder order = RenyiOrder::shannon();
  int clusters = 2;
  unsigned jobs = 1;

  void validate() const;
};

struct SolverRun {
  DeterministicMap final_map;
  TradeoffPoint point;
  double objective_value = 0.0;
  int iterations = 0;
  bool converged = false;
  bool cycle_detected = false;
};

/// Score of assigning x to w given the previous iterate; +inf for dead
/// clusters and for infinite divergences.
double bracket(const JointDistribution& joint, Eigen::Index x, Eigen::Index w,
               const InducedSystem& state, double beta);

DeterministicMap hard_update(const JointDistribution& joint, const DeterministicMap& prev,
                             double beta, const RenyiOrder& order, int clusters);

Channel soft_update(const JointDistribution& joint, const Channel& prev, double beta,
                    const RenyiOrder& order, double nu);

/// Hard updates until a map repeats (fixed point or cycle) or max_iter
/// updates were made. Reports the best-objective map seen along the way.
SolverRun iterate(const JointDistribution& joint, const DeterministicMap& init, double beta,
                  const RenyiOrder& order, int clusters, int max_iter);

/// Soft updates at temperature nu from init, then the row-wise mode of the
/// final channel seeds a hard iterate.
SolverRun iterate_soft(const JointDistribution& joint, const DeterministicMap& init, double beta,
                       const RenyiOrder& order, int clusters, int max_iter, double nu);

/// Deterministic starting points used by every sweep besides the random ones.
DeterministicMap identity_like_init(Eigen::Index x_size, int clusters);
DeterministicMap greedy_block_init(const JointDistribution& joint, int clusters);

struct SweepRecord {
  double beta = 0.0;
  int restart = 0;  ///< -2 identity-like, -1 greedy, >= 0 random
  SolverRun run;
};

struct SweepResult {
  std::vector<SweepRecord> runs;
  std::vector<TradeoffPoint> points;
  Envelope envelope;
};

SweepResult sweep(const JointDistribution& joint, const SolverConfig& config);

}  // namespace rib
