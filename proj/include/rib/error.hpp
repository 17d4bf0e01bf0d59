#pragma once

#include <stdexcept>
#include <string>

namespace rib {

/// Malformed input: bad shapes, negative masses, normalization failures,
/// out-of-range orders or cluster indices.
class ValidationError : public std::invalid_argument {
 public:
  explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

/// A request that is well-formed but too large to evaluate exactly.
class InfeasibleError : public std::runtime_error {
 public:
  explicit InfeasibleError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace rib
