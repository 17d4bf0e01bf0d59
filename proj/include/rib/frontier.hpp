#pragma once

// Exact trade-off frontier over deterministic maps and its upper concave
// envelope. For fixed beta the objective beta*I(Y;W) - H_alpha(W) is convex
// in P_{W|X}, so every support line of the achievable region touches a
// deterministic map; the hull of the deterministic points is therefore the
// whole envelope.

#include <cstdint>
#include <functional>
#include <vector>

#include "rib/bottleneck.hpp"

namespace rib {

/// Largest map count the exhaustive routines will enumerate.
inline constexpr std::uint64_t kEnumerationCap = 10'000'000;
/// Two (gamma, eta) coordinates closer than this are the same point.
inline constexpr double kPointTolerance = 1e-12;

struct TradeoffPoint {
  double gamma = 0.0;  ///< H_alpha(W)
  double eta = 0.0;    ///< I(Y;W)
  DeterministicMap witness;
};

/// Enumerates all M^|X| assignment tables in lexicographic order, so map
/// index order matches assignment order.
class MapEnumerator {
 public:
  /// Throws InfeasibleError when M^x_size exceeds kEnumerationCap.
  MapEnumerator(Eigen::Index x_size, int clusters);

  std::uint64_t count() const { return count_; }
  DeterministicMap at(std::uint64_t index) const;
  void for_each(const std::function<void(const DeterministicMap&)>& visit) const;

 private:
  Eigen::Index x_size_;
  int clusters_;
  std::uint64_t count_;
};

/// M^x_size, or InfeasibleError naming the count when it exceeds the cap.
std::uint64_t deterministic_map_count(Eigen::Index x_size, int clusters);

std::vector<DeterministicMap> enumerate_deterministic(Eigen::Index x_size, int clusters);

/// Piecewise-linear least concave majorant of a point set, constant after
/// its highest point.
class Envelope {
 public:
  explicit Envelope(std::vector<TradeoffPoint> vertices);

  const std::vector<TradeoffPoint>& vertices() const { return vertices_; }
  double flat_value() const { return vertices_.back().eta; }
  double flat_start() const { return vertices_.back().gamma; }
  const TradeoffPoint& flat_point() const { return vertices_.back(); }

  double operator()(double gamma) const;

 private:
  std::vector<TradeoffPoint> vertices_;
};

/// Sorts by (gamma, eta, witness) and merges points that agree within
/// kPointTolerance, keeping the lexicographically smallest witness.
std::vector<TradeoffPoint> deduplicate(std::vector<TradeoffPoint> points);

/// One point per deterministic map (deduplicated). jobs > 1 splits the
/// map index range across threads; the result does not depend on jobs.
std::vector<TradeoffPoint> brute_force_points(const JointDistribution& joint,
                                              const RenyiOrder& order, int clusters,
                                              unsigned jobs = 1);

Envelope upper_concave_envelope(std::vector<TradeoffPoint> points);

double evaluate_envelope(const Envelope& envelope, double gamma);

}  // namespace rib
