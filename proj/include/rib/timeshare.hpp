#pragma once

// Symbol-wise time-sharing codes: split a length-n block between at most
// two deterministic maps so the per-symbol averages of H_alpha(W_i) and
// I(Y_i;W_i) land on the envelope.

#include <cstdint>
#include <vector>

#include "rib/frontier.hpp"

namespace rib {

struct TimeShareSegment {
  DeterministicMap map;
  double weight = 1.0;
  double gamma = 0.0;
  double eta = 0.0;
};

struct TimeSharePlan {
  std::vector<TimeShareSegment> segments;  ///< one or two
  double target_gamma = 0.0;
  double target_eta = 0.0;
};

/// Per-position maps over a block of length n. Positions index into `maps`.
struct SymbolwiseCode {
  int n = 0;
  int clusters = 1;
  std::vector<DeterministicMap> maps;
  std::vector<std::size_t> position_map;

  const DeterministicMap& at(int position) const {
    return maps[position_map[static_cast<std::size_t>(position)]];
  }
};

struct CodePerformance {
  double gamma = 0.0;  ///< average output Renyi entropy
  double eta = 0.0;    ///< average relevance
};

TimeSharePlan plan(const Envelope& envelope, double gamma);

/// Segment 1 covers the first round(lambda_1 n) positions.
SymbolwiseCode realize(const TimeSharePlan& plan, int n, int clusters);

/// Code with arbitrary per-position maps.
SymbolwiseCode make_code(const std::vector<DeterministicMap>& per_position, int clusters);

/// Exact per-symbol averages for an i.i.d. source.
CodePerformance evaluate(const SymbolwiseCode& code, const JointDistribution& joint,
                         const RenyiOrder& order);

/// Monte Carlo plug-in estimate from one sampled block, pooling positions
/// that share a map.
CodePerformance simulate(const SymbolwiseCode& code, const JointDistribution& joint,
                         const RenyiOrder& order, std::uint64_t seed);

}  // namespace rib
