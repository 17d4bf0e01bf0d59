#pragma once

// The Markov chain Y - X - W: a channel P_{W|X} applied to a fixed joint
// P_{Y,X}, and the two coordinates the bottleneck trades off, H_alpha(W)
// and I(Y;W).

#include <Eigen/Core>

#include <compare>
#include <string>
#include <vector>

#include "rib/prob.hpp"

namespace rib {

/// Row-stochastic |X| x M matrix of P_{W|X}(w|x).
class Channel {
 public:
  explicit Channel(Eigen::MatrixXd matrix);

  const Eigen::MatrixXd& matrix() const { return matrix_; }
  Eigen::Index x_size() const { return matrix_.rows(); }
  Eigen::Index clusters() const { return matrix_.cols(); }

 private:
  Eigen::MatrixXd matrix_;
};

/// Deterministic map g: X -> {0, ..., M-1}, stored as an assignment table.
/// Cluster indices are zero-based here; serialized forms are one-based.
class DeterministicMap {
 public:
  DeterministicMap() = default;
  explicit DeterministicMap(std::vector<int> assignment);

  static DeterministicMap constant(Eigen::Index x_size) {
    return DeterministicMap(std::vector<int>(static_cast<std::size_t>(x_size), 0));
  }

  const std::vector<int>& assignment() const { return assignment_; }
  Eigen::Index x_size() const { return static_cast<Eigen::Index>(assignment_.size()); }
  int operator[](Eigen::Index x) const { return assignment_[static_cast<std::size_t>(x)]; }
  /// Largest index used plus one.
  int clusters_used_bound() const;

  /// One-based cluster indices, no separators when every index is a single digit,
  /// otherwise joined with '.'.
  std::string to_string() const;
  static DeterministicMap parse(const std::string& text);

  friend auto operator<=>(const DeterministicMap&, const DeterministicMap&) = default;
  friend bool operator==(const DeterministicMap&, const DeterministicMap&) = default;

 private:
  std::vector<int> assignment_;
};

/// Quantities induced by a channel on W. Clusters with P_W(w) = 0 are dead:
/// their P_{Y|W=w} column is left at zero and must not be read.
struct InducedSystem {
  Eigen::VectorXd p_w;
  Eigen::MatrixXd p_yw;
  Eigen::MatrixXd p_y_given_w;
  double relevance = 0.0;
  double renyi_cost = 0.0;
  RenyiOrder order = RenyiOrder::shannon();

  Eigen::Index clusters() const { return p_w.size(); }
  bool live(Eigen::Index w) const { return p_w[w] > 0.0; }
};

InducedSystem induce(const JointDistribution& joint, const Channel& channel,
                     const RenyiOrder& order);

/// Same result as induce(joint, to_channel(map, clusters), order) without
/// materializing the channel.
InducedSystem induce(const JointDistribution& joint, const DeterministicMap& map, int clusters,
                     const RenyiOrder& order);

/// beta * I(Y;W) - H_alpha(W).
double objective(const InducedSystem& system, double beta);

Channel to_channel(const DeterministicMap& map, int clusters);

}  // namespace rib
