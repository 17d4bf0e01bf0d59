#include "rib/canonical.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include <fmt/format.h>

namespace rib {

double omega(double gamma, double i_yx) {
  if (!(gamma >= 0.0) || !(i_yx >= 0.0)) {
    throw ValidationError(fmt::format("omega needs non-negative inputs, got ({}, {})", gamma, i_yx));
  }
  return std::min(gamma, i_yx);
}

JointDistribution example1_joint(const std::vector<int>& f, const Distribution& p_x) {
  if (static_cast<Eigen::Index>(f.size()) != p_x.size()) {
    throw ValidationError(
        fmt::format("f covers {} symbols but p_x has {}", f.size(), p_x.size()));
  }
  if (f.empty()) throw ValidationError("f must cover at least one symbol");
  for (Eigen::Index x = 0; x < p_x.size(); ++x) {
    if (!(p_x[x] > 0.0)) throw ValidationError(fmt::format("p_x({}) must be positive", x + 1));
    if (f[static_cast<std::size_t>(x)] < 0) throw ValidationError("f maps to a negative index");
  }
  const int y_size = *std::max_element(f.begin(), f.end()) + 1;
  Eigen::MatrixXd pyx = Eigen::MatrixXd::Zero(y_size, p_x.size());
  for (Eigen::Index x = 0; x < p_x.size(); ++x) pyx(f[static_cast<std::size_t>(x)], x) = p_x[x];
  return JointDistribution(std::move(pyx));
}

std::vector<double> BlockDiagonalSpec::block_masses() const {
  std::vector<double> s(masses.size());
  for (std::size_t k = 0; k < masses.size(); ++k) {
    s[k] = static_cast<double>(x_sizes[k]) * static_cast<double>(y_sizes[k]) * masses[k];
  }
  return s;
}

void BlockDiagonalSpec::validate() const {
  if (masses.empty()) throw ValidationError("block-diagonal spec needs at least one block");
  if (x_sizes.size() != masses.size() || y_sizes.size() != masses.size()) {
    throw ValidationError(fmt::format("block-diagonal spec sizes disagree: {} x-sizes, {} "
                                      "y-sizes, {} masses",
                                      x_sizes.size(), y_sizes.size(), masses.size()));
  }
  for (std::size_t k = 0; k < masses.size(); ++k) {
    if (x_sizes[k] < 1 || y_sizes[k] < 1) {
      throw ValidationError(fmt::format("block {} has a degenerate size", k + 1));
    }
    if (!(masses[k] > 0.0)) throw ValidationError(fmt::format("block {} mass must be positive", k + 1));
  }
  const auto s = block_masses();
  const double total = std::accumulate(s.begin(), s.end(), 0.0);
  if (std::abs(total - 1.0) > 1e-12) {
    throw ValidationError(fmt::format("block masses sum to {:.12f} (sum={:.6f}), expected 1",
                                      total, total));
  }
}

int CanonicalLabels::blocks() const {
  if (f1.empty()) return 0;
  return *std::max_element(f1.begin(), f1.end()) + 1;
}

std::pair<JointDistribution, CanonicalLabels> example2_joint(const BlockDiagonalSpec& spec) {
  spec.validate();
  const int x_total = std::accumulate(spec.x_sizes.begin(), spec.x_sizes.end(), 0);
  const int y_total = std::accumulate(spec.y_sizes.begin(), spec.y_sizes.end(), 0);
  Eigen::MatrixXd pyx = Eigen::MatrixXd::Zero(y_total, x_total);
  CanonicalLabels labels;
  int x0 = 0;
  int y0 = 0;
  for (int k = 0; k < spec.blocks(); ++k) {
    const auto ks = static_cast<std::size_t>(k);
    pyx.block(y0, x0, spec.y_sizes[ks], spec.x_sizes[ks]).setConstant(spec.masses[ks]);
    labels.f1.insert(labels.f1.end(), static_cast<std::size_t>(spec.x_sizes[ks]), k);
    labels.f2.insert(labels.f2.end(), static_cast<std::size_t>(spec.y_sizes[ks]), k);
    x0 += spec.x_sizes[ks];
    y0 += spec.y_sizes[ks];
  }
  std::vector<std::string> y_labels, x_labels;
  for (int y = 1; y <= y_total; ++y) y_labels.push_back(std::to_string(y));
  for (int x = 1; x <= x_total; ++x) x_labels.push_back(std::to_string(x));
  return {JointDistribution(std::move(pyx), std::move(y_labels), std::move(x_labels)),
          std::move(labels)};
}

DeterministicMap canonical_map(const CanonicalLabels& labels, int clusters) {
  const int k = labels.blocks();
  if (clusters < k) {
    throw ValidationError(fmt::format("canonical map needs M >= K, got M={} K={}", clusters, k));
  }
  return DeterministicMap(labels.f1);
}

BlockDiagonalSpec table1a_spec() { return {{1, 2, 2}, {1, 2, 1}, {0.25, 0.125, 0.125}}; }

JointDistribution table1a() { return example2_joint(table1a_spec()).first; }

}  // namespace rib
