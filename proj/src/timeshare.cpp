#include "rib/timeshare.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

#include <fmt/format.h>

namespace rib {

TimeSharePlan plan(const Envelope& envelope, double gamma) {
  if (!(gamma >= 0.0)) throw ValidationError(fmt::format("gamma must be non-negative, got {}", gamma));
  TimeSharePlan p;
  p.target_gamma = gamma;
  p.target_eta = envelope(gamma);
  const auto& v = envelope.vertices();

  auto single = [&](const TradeoffPoint& vertex) {
    p.segments.push_back({vertex.witness, 1.0, vertex.gamma, vertex.eta});
  };
  if (gamma >= envelope.flat_start()) {
    // Past the flat point the flat witness alone already meets the cost budget.
    single(envelope.flat_point());
    p.target_gamma = std::min(gamma, envelope.flat_start());
    return p;
  }
  for (const auto& vertex : v) {
    if (std::abs(vertex.gamma - gamma) <= kPointTolerance) {
      single(vertex);
      return p;
    }
  }
  auto hi = std::upper_bound(v.begin(), v.end(), gamma,
                             [](double g, const TradeoffPoint& t) { return g < t.gamma; });
  auto lo = std::prev(hi);
  const double lambda = (hi->gamma - gamma) / (hi->gamma - lo->gamma);
  p.segments.push_back({lo->witness, lambda, lo->gamma, lo->eta});
  p.segments.push_back({hi->witness, 1.0 - lambda, hi->gamma, hi->eta});
  return p;
}

SymbolwiseCode realize(const TimeSharePlan& plan, int n, int clusters) {
  if (n < 1) throw ValidationError(fmt::format("block length must be positive, got {}", n));
  if (plan.segments.empty() || plan.segments.size() > 2) {
    throw ValidationError("time-sharing plan must have one or two segments");
  }
  SymbolwiseCode code;
  code.n = n;
  code.clusters = clusters;
  for (const auto& s : plan.segments) code.maps.push_back(s.map);
  int first = n;
  if (plan.segments.size() == 2) {
    first = static_cast<int>(std::lround(plan.segments[0].weight * n));
    first = std::clamp(first, 0, n);
  }
  code.position_map.assign(static_cast<std::size_t>(n), 0);
  std::fill(code.position_map.begin() + first, code.position_map.end(), 1);
  return code;
}

SymbolwiseCode make_code(const std::vector<DeterministicMap>& per_position, int clusters) {
  if (per_position.empty()) throw ValidationError("code needs at least one position");
  SymbolwiseCode code;
  code.n = static_cast<int>(per_position.size());
  code.clusters = clusters;
  std::map<DeterministicMap, std::size_t> index;
  for (const auto& m : per_position) {
    auto [it, inserted] = index.try_emplace(m, code.maps.size());
    if (inserted) code.maps.push_back(m);
    code.position_map.push_back(it->second);
  }
  return code;
}

namespace {

std::vector<std::size_t> position_counts(const SymbolwiseCode& code) {
  std::vector<std::size_t> counts(code.maps.size(), 0);
  for (std::size_t m : code.position_map) ++counts[m];
  return counts;
}

}  // namespace

CodePerformance evaluate(const SymbolwiseCode& code, const JointDistribution& joint,
                         const RenyiOrder& order) {
  const auto counts = position_counts(code);
  CodePerformance out;
  for (std::size_t m = 0; m < code.maps.size(); ++m) {
    if (counts[m] == 0) continue;
    const InducedSystem s = induce(joint, code.maps[m], code.clusters, order);
    const double weight = static_cast<double>(counts[m]) / code.n;
    out.gamma += weight * s.renyi_cost;
    out.eta += weight * s.relevance;
  }
  return out;
}

CodePerformance simulate(const SymbolwiseCode& code, const JointDistribution& joint,
                         const RenyiOrder& order, std::uint64_t seed) {
  const Eigen::Index ys = joint.y_size();
  const Eigen::MatrixXd& pyx = joint.matrix();
  std::vector<double> cells(pyx.data(), pyx.data() + pyx.size());  // column-major: y fastest
  std::discrete_distribution<std::size_t> draw(cells.begin(), cells.end());
  std::mt19937_64 rng(seed);

  std::vector<Eigen::MatrixXd> counts(code.maps.size(),
                                      Eigen::MatrixXd::Zero(ys, code.clusters));
  for (int i = 0; i < code.n; ++i) {
    const std::size_t cell = draw(rng);
    const auto y = static_cast<Eigen::Index>(cell % static_cast<std::size_t>(ys));
    const auto x = static_cast<Eigen::Index>(cell / static_cast<std::size_t>(ys));
    const std::size_t m = code.position_map[static_cast<std::size_t>(i)];
    counts[m](y, code.maps[m][x]) += 1.0;
  }

  CodePerformance out;
  for (const auto& c : counts) {
    const double total = c.sum();
    if (total == 0.0) continue;
    const Eigen::MatrixXd empirical = c / total;
    const Eigen::VectorXd p_w = empirical.colwise().sum().transpose();
    const double weight = total / code.n;
    out.gamma += weight * renyi_entropy(p_w, order);
    out.eta += weight * mutual_information(empirical);
  }
  return out;
}

}  // namespace rib
