#include "rib/frontier.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include <fmt/format.h>

namespace rib {

std::uint64_t deterministic_map_count(Eigen::Index x_size, int clusters) {
  if (x_size < 1) throw ValidationError("need at least one input symbol");
  if (clusters < 1) throw ValidationError("cluster count M must be positive");
  std::uint64_t count = 1;
  for (Eigen::Index i = 0; i < x_size; ++i) {
    if (count > kEnumerationCap / static_cast<std::uint64_t>(clusters)) {
      throw InfeasibleError(fmt::format(
          "enumeration infeasible: M^|X| = {}^{} = {:.6g} maps exceeds the cap of {}", clusters,
          x_size, std::pow(static_cast<double>(clusters), static_cast<double>(x_size)),
          kEnumerationCap));
    }
    count *= static_cast<std::uint64_t>(clusters);
  }
  return count;
}

MapEnumerator::MapEnumerator(Eigen::Index x_size, int clusters)
    : x_size_(x_size), clusters_(clusters), count_(deterministic_map_count(x_size, clusters)) {}

DeterministicMap MapEnumerator::at(std::uint64_t index) const {
  std::vector<int> assignment(static_cast<std::size_t>(x_size_));
  for (Eigen::Index x = x_size_ - 1; x >= 0; --x) {
    assignment[static_cast<std::size_t>(x)] = static_cast<int>(index % clusters_);
    index /= clusters_;
  }
  return DeterministicMap(std::move(assignment));
}

void MapEnumerator::for_each(const std::function<void(const DeterministicMap&)>& visit) const {
  std::vector<int> digits(static_cast<std::size_t>(x_size_), 0);
  for (std::uint64_t i = 0; i < count_; ++i) {
    visit(DeterministicMap(digits));
    for (auto d = digits.rbegin(); d != digits.rend(); ++d) {
      if (++*d < clusters_) break;
      *d = 0;
    }
  }
}

std::vector<DeterministicMap> enumerate_deterministic(Eigen::Index x_size, int clusters) {
  MapEnumerator maps(x_size, clusters);
  std::vector<DeterministicMap> out;
  out.reserve(maps.count());
  maps.for_each([&](const DeterministicMap& m) { out.push_back(m); });
  return out;
}

std::vector<TradeoffPoint> deduplicate(std::vector<TradeoffPoint> points) {
  auto by_coords = [](const TradeoffPoint& a, const TradeoffPoint& b) {
    if (a.gamma != b.gamma) return a.gamma < b.gamma;
    if (a.eta != b.eta) return a.eta < b.eta;
    return a.witness < b.witness;
  };
  std::sort(points.begin(), points.end(), by_coords);

  // Group runs whose consecutive gammas agree, then merge eta runs inside each group.
  std::vector<TradeoffPoint> out;
  std::size_t begin = 0;
  while (begin < points.size()) {
    std::size_t end = begin + 1;
    while (end < points.size() && points[end].gamma - points[end - 1].gamma <= kPointTolerance) {
      ++end;
    }
    std::sort(points.begin() + static_cast<std::ptrdiff_t>(begin),
              points.begin() + static_cast<std::ptrdiff_t>(end),
              [](const TradeoffPoint& a, const TradeoffPoint& b) {
                if (a.eta != b.eta) return a.eta < b.eta;
                return a.witness < b.witness;
              });
    std::size_t i = begin;
    while (i < end) {
      TradeoffPoint merged = points[i];
      std::size_t j = i + 1;
      while (j < end && points[j].eta - points[j - 1].eta <= kPointTolerance) {
        if (points[j].witness < merged.witness) merged.witness = points[j].witness;
        ++j;
      }
      out.push_back(std::move(merged));
      i = j;
    }
    begin = end;
  }
  std::sort(out.begin(), out.end(), by_coords);
  return out;
}

std::vector<TradeoffPoint> brute_force_points(const JointDistribution& joint,
                                              const RenyiOrder& order, int clusters,
                                              unsigned jobs) {
  const MapEnumerator maps(joint.x_size(), clusters);
  const std::uint64_t total = maps.count();
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::min<std::uint64_t>(
                                                    total, 64))));

  std::vector<std::vector<TradeoffPoint>> parts(jobs);
  auto work = [&](unsigned part) {
    const std::uint64_t lo = total * part / jobs;
    const std::uint64_t hi = total * (part + 1) / jobs;
    auto& out = parts[part];
    out.reserve(hi - lo);
    for (std::uint64_t i = lo; i < hi; ++i) {
      DeterministicMap map = maps.at(i);
      const InducedSystem s = induce(joint, map, clusters, order);
      out.push_back({s.renyi_cost, s.relevance, std::move(map)});
    }
  };
  if (jobs == 1) {
    work(0);
  } else {
    std::vector<std::jthread> threads;
    for (unsigned p = 0; p < jobs; ++p) threads.emplace_back(work, p);
  }

  std::vector<TradeoffPoint> all;
  all.reserve(total);
  for (auto& part : parts) {
    std::move(part.begin(), part.end(), std::back_inserter(all));
  }
  return deduplicate(std::move(all));
}

Envelope::Envelope(std::vector<TradeoffPoint> vertices) : vertices_(std::move(vertices)) {
  if (vertices_.empty()) throw ValidationError("envelope needs at least one vertex");
}

double Envelope::operator()(double gamma) const {
  if (!(gamma >= 0.0)) {
    throw ValidationError(fmt::format("envelope evaluated at negative gamma {}", gamma));
  }
  if (gamma >= flat_start()) return flat_value();
  auto hi = std::upper_bound(vertices_.begin(), vertices_.end(), gamma,
                             [](double g, const TradeoffPoint& v) { return g < v.gamma; });
  if (hi == vertices_.begin()) return vertices_.front().eta;
  auto lo = std::prev(hi);
  const double t = (gamma - lo->gamma) / (hi->gamma - lo->gamma);
  return lo->eta + t * (hi->eta - lo->eta);
}

double evaluate_envelope(const Envelope& envelope, double gamma) { return envelope(gamma); }

Envelope upper_concave_envelope(std::vector<TradeoffPoint> points) {
  if (points.empty()) throw ValidationError("upper_concave_envelope: empty point set");
  points = deduplicate(std::move(points));
  const auto& origin = points.front();
  if (std::abs(origin.gamma) > kPointTolerance || std::abs(origin.eta) > kPointTolerance) {
    throw ValidationError("upper_concave_envelope: point set must contain (0,0)");
  }

  // Flat point: cheapest point whose relevance matches the maximum.
  double eta_max = 0.0;
  for (const auto& p : points) eta_max = std::max(eta_max, p.eta);
  std::size_t flat = 0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i].eta >= eta_max - kPointTolerance) {
      flat = i;
      break;
    }
  }

  // Highest point per gamma among the candidates left of the flat point.
  std::vector<const TradeoffPoint*> candidates;
  for (std::size_t i = 0; i <= flat; ++i) {
    const TradeoffPoint* p = &points[i];
    if (i != flat && p->gamma >= points[flat].gamma - kPointTolerance) continue;
    if (!candidates.empty() && p->gamma - candidates.back()->gamma <= kPointTolerance) {
      if (p->eta > candidates.back()->eta + kPointTolerance) candidates.back() = p;
      continue;
    }
    candidates.push_back(p);
  }

  // Monotone-chain upper hull. A middle point within kPointTolerance of the
  // chord is collinear and dropped.
  std::vector<const TradeoffPoint*> hull;
  for (const TradeoffPoint* c : candidates) {
    while (hull.size() >= 2) {
      const TradeoffPoint* a = hull[hull.size() - 2];
      const TradeoffPoint* b = hull.back();
      const double chord = a->eta + (c->eta - a->eta) * (b->gamma - a->gamma) / (c->gamma - a->gamma);
      if (b->eta <= chord + kPointTolerance) {
        hull.pop_back();
      } else {
        break;
      }
    }
    if (hull.size() == 1 && c->eta <= hull.back()->eta + kPointTolerance) continue;
    hull.push_back(c);
  }

  std::vector<TradeoffPoint> vertices;
  vertices.reserve(hull.size());
  for (const TradeoffPoint* p : hull) vertices.push_back(*p);
  return Envelope(std::move(vertices));
}

}  // namespace rib
