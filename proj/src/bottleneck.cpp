#include "rib/bottleneck.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <fmt/format.h>

namespace rib {

Channel::Channel(Eigen::MatrixXd matrix) : matrix_(std::move(matrix)) {
  if (matrix_.rows() < 1 || matrix_.cols() < 1) {
    throw ValidationError("channel needs at least one input symbol and one cluster");
  }
  for (Eigen::Index x = 0; x < matrix_.rows(); ++x) {
    for (Eigen::Index w = 0; w < matrix_.cols(); ++w) {
      if (!std::isfinite(matrix_(x, w)) || matrix_(x, w) < 0.0) {
        throw ValidationError(fmt::format("channel entry ({}, {}) is negative or not finite",
                                          x + 1, w + 1));
      }
    }
    const double total = matrix_.row(x).sum();
    if (std::abs(total - 1.0) > kNormalizationTolerance) {
      throw ValidationError(fmt::format("channel row {} sums to {:.6f}", x + 1, total));
    }
    matrix_.row(x) /= total;
  }
}

DeterministicMap::DeterministicMap(std::vector<int> assignment)
    : assignment_(std::move(assignment)) {
  for (std::size_t x = 0; x < assignment_.size(); ++x) {
    if (assignment_[x] < 0) {
      throw ValidationError(fmt::format("map assigns symbol {} to a negative cluster", x + 1));
    }
  }
}

int DeterministicMap::clusters_used_bound() const {
  if (assignment_.empty()) return 0;
  return *std::max_element(assignment_.begin(), assignment_.end()) + 1;
}

std::string DeterministicMap::to_string() const {
  const bool single_digit = clusters_used_bound() <= 9;
  std::string out;
  for (std::size_t x = 0; x < assignment_.size(); ++x) {
    if (!single_digit && x > 0) out += '.';
    out += std::to_string(assignment_[x] + 1);
  }
  return out;
}

DeterministicMap DeterministicMap::parse(const std::string& text) {
  std::vector<int> assignment;
  auto push = [&](const std::string& token) {
    if (token.empty()) throw ValidationError(fmt::format("malformed map string '{}'", text));
    for (char c : token) {
      if (c < '0' || c > '9') throw ValidationError(fmt::format("malformed map string '{}'", text));
    }
    const int index = std::stoi(token);
    if (index < 1) throw ValidationError(fmt::format("cluster index 0 in map string '{}'", text));
    assignment.push_back(index - 1);
  };
  if (text.find('.') != std::string::npos) {
    std::stringstream ss(text);
    std::string token;
    while (std::getline(ss, token, '.')) push(token);
  } else {
    for (char c : text) push(std::string(1, c));
  }
  return DeterministicMap(std::move(assignment));
}

namespace {

InducedSystem finish(Eigen::MatrixXd p_yw, const RenyiOrder& order) {
  InducedSystem s;
  s.order = order;
  s.p_w = p_yw.colwise().sum().transpose();
  s.p_y_given_w = Eigen::MatrixXd::Zero(p_yw.rows(), p_yw.cols());
  for (Eigen::Index w = 0; w < p_yw.cols(); ++w) {
    if (s.p_w[w] > 0.0) s.p_y_given_w.col(w) = p_yw.col(w) / s.p_w[w];
  }
  s.relevance = mutual_information(p_yw);
  s.renyi_cost = renyi_entropy(s.p_w, order);
  s.p_yw = std::move(p_yw);
  return s;
}

}  // namespace

InducedSystem induce(const JointDistribution& joint, const Channel& channel,
                     const RenyiOrder& order) {
  if (channel.x_size() != joint.x_size()) {
    throw ValidationError(fmt::format("channel has {} rows but the joint has {} x symbols",
                                      channel.x_size(), joint.x_size()));
  }
  return finish(joint.matrix() * channel.matrix(), order);
}

InducedSystem induce(const JointDistribution& joint, const DeterministicMap& map, int clusters,
                     const RenyiOrder& order) {
  if (map.x_size() != joint.x_size()) {
    throw ValidationError(fmt::format("map covers {} symbols but the joint has {} x symbols",
                                      map.x_size(), joint.x_size()));
  }
  if (clusters < 1 || map.clusters_used_bound() > clusters) {
    throw ValidationError(
        fmt::format("map uses cluster {} but only {} clusters exist", map.clusters_used_bound(),
                    clusters));
  }
  Eigen::MatrixXd p_yw = Eigen::MatrixXd::Zero(joint.y_size(), clusters);
  for (Eigen::Index x = 0; x < joint.x_size(); ++x) p_yw.col(map[x]) += joint.matrix().col(x);
  return finish(std::move(p_yw), order);
}

double objective(const InducedSystem& system, double beta) {
  if (!(beta >= 0.0)) throw ValidationError(fmt::format("beta must be non-negative, got {}", beta));
  return beta * system.relevance - system.renyi_cost;
}

Channel to_channel(const DeterministicMap& map, int clusters) {
  if (clusters < 1) throw ValidationError("cluster count must be positive");
  if (map.x_size() < 1) throw ValidationError("map must cover at least one symbol");
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(map.x_size(), clusters);
  for (Eigen::Index x = 0; x < map.x_size(); ++x) {
    if (map[x] >= clusters) {
      throw ValidationError(fmt::format("symbol {} is assigned to cluster {} but M={}", x + 1,
                                        map[x] + 1, clusters));
    }
    m(x, map[x]) = 1.0;
  }
  return Channel(std::move(m));
}

}  // namespace rib
