#pragma once

// Joint-distribution documents, CSV tables, and run manifests.
//
// Joint document (JSON):
//   { "y_labels": ["1", ...], "x_labels": ["1", ...],
//     "pyx": [[...], ...] }            // |Y| rows of |X| entries
// Entries are numbers or strings holding a decimal or a rational "p/q".

#include <filesystem>
#include <iosfwd>
#include <string>

#include <json.hpp>

#include "rib/frontier.hpp"

namespace rib {

inline constexpr const char* kToolVersion = "0.1.0";

/// Exact for rationals: numerator and denominator are parsed as integers first.
double parse_probability(const nlohmann::json& entry);

JointDistribution parse_joint(const std::string& text);
JointDistribution load_joint(const std::filesystem::path& path);
std::string joint_to_json(const JointDistribution& joint);

/// FNV-1a 64 over the shape and the entries printed with 17 significant digits.
std::string joint_digest(const JointDistribution& joint);

/// 12 significant digits.
std::string format_number(double value);

void write_points_csv(std::ostream& out, const std::vector<TradeoffPoint>& points, double alpha,
                      int clusters, const std::string& source);

/// Vertices with is_vertex=1; grid > 0 adds that many evenly spaced
/// interpolated rows on [0, flat_start] with is_vertex=0.
void write_envelope_csv(std::ostream& out, const Envelope& envelope, int grid = 0);

struct RunManifest {
  std::string command;
  std::string input_digest;
  nlohmann::json config;
  std::string version = kToolVersion;
  std::uint64_t seed = 0;

  nlohmann::json to_json() const;
};

void write_manifest(const std::filesystem::path& path, const RunManifest& manifest);

}  // namespace rib
