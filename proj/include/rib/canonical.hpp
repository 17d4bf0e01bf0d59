#pragma once

// Instances whose Shannon trade-off is known in closed form: Y = f(X), and
// joints that arrange into K disjoint uniform blocks on the diagonal.

#include <utility>
#include <vector>

#include "rib/bottleneck.hpp"

namespace rib {

/// Outer bound min(gamma, I(Y;X)).
double omega(double gamma, double i_yx);

/// P_{Y,X}(y,x) = p_x(x) [y = f(x)]; |Y| = max f + 1. f is zero-based.
JointDistribution example1_joint(const std::vector<int>& f, const Distribution& p_x);

struct BlockDiagonalSpec {
  std::vector<int> x_sizes;
  std::vector<int> y_sizes;
  std::vector<double> masses;  ///< per-cell mass inside each block

  int blocks() const { return static_cast<int>(masses.size()); }
  /// Total mass |X_k| |Y_k| p_k of each block.
  std::vector<double> block_masses() const;
  void validate() const;
};

/// Block labels: f1 on X, f2 on Y, zero-based.
struct CanonicalLabels {
  std::vector<int> f1;
  std::vector<int> f2;

  int blocks() const;
};

std::pair<JointDistribution, CanonicalLabels> example2_joint(const BlockDiagonalSpec& spec);

/// g(x) = f1(x) embedded in M >= K clusters.
DeterministicMap canonical_map(const CanonicalLabels& labels, int clusters);

/// The 4 x 5 instance with K = 3 blocks of masses 1/4, 1/8, 1/8.
BlockDiagonalSpec table1a_spec();
JointDistribution table1a();

}  // namespace rib
