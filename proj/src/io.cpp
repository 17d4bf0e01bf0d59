#include "rib/io.hpp"

#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

namespace rib {

namespace {

long long parse_integer(const std::string& s, const std::string& whole) {
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(s, &used);
  } catch (const std::exception&) {
    throw ValidationError(fmt::format("cannot parse '{}' as a probability", whole));
  }
  if (used != s.size()) throw ValidationError(fmt::format("cannot parse '{}' as a probability", whole));
  return v;
}

}  // namespace

double parse_probability(const nlohmann::json& entry) {
  if (entry.is_number()) return entry.get<double>();
  if (!entry.is_string()) {
    throw ValidationError(fmt::format("probability entries must be numbers or strings, got {}",
                                      entry.dump()));
  }
  const std::string s = entry.get<std::string>();
  const auto slash = s.find('/');
  if (slash != std::string::npos) {
    const long long num = parse_integer(s.substr(0, slash), s);
    const long long den = parse_integer(s.substr(slash + 1), s);
    if (den == 0) throw ValidationError(fmt::format("zero denominator in '{}'", s));
    return static_cast<double>(num) / static_cast<double>(den);
  }
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw ValidationError(fmt::format("cannot parse '{}' as a probability", s));
  }
  if (used != s.size()) throw ValidationError(fmt::format("cannot parse '{}' as a probability", s));
  return v;
}

JointDistribution parse_joint(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError(fmt::format("joint document is not valid JSON: {}", e.what()));
  }
  if (!doc.is_object() || !doc.contains("pyx") || !doc["pyx"].is_array()) {
    throw ValidationError("joint document needs a 'pyx' array of rows");
  }
  const auto& rows = doc["pyx"];
  if (rows.empty() || !rows[0].is_array() || rows[0].empty()) {
    throw ValidationError("'pyx' must hold at least one non-empty row");
  }
  const std::size_t cols = rows[0].size();
  Eigen::MatrixXd pyx(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols));
  for (std::size_t y = 0; y < rows.size(); ++y) {
    if (!rows[y].is_array() || rows[y].size() != cols) {
      throw ValidationError(fmt::format("row {} of 'pyx' has {} entries, expected {}", y + 1,
                                        rows[y].is_array() ? rows[y].size() : 0, cols));
    }
    for (std::size_t x = 0; x < cols; ++x) {
      double v = 0.0;
      try {
        v = parse_probability(rows[y][x]);
      } catch (const ValidationError& e) {
        throw ValidationError(fmt::format("row {}, column {}: {}", y + 1, x + 1, e.what()));
      }
      if (v < 0.0) {
        throw ValidationError(
            fmt::format("negative entry at row {}, column {} ({})", y + 1, x + 1, v));
      }
      pyx(static_cast<Eigen::Index>(y), static_cast<Eigen::Index>(x)) = v;
    }
  }
  auto labels = [&](const char* key) {
    std::vector<std::string> out;
    if (!doc.contains(key)) return out;
    if (!doc[key].is_array()) throw ValidationError(fmt::format("'{}' must be an array", key));
    for (const auto& l : doc[key]) {
      out.push_back(l.is_string() ? l.get<std::string>() : l.dump());
    }
    return out;
  };
  return JointDistribution(std::move(pyx), labels("y_labels"), labels("x_labels"));
}

JointDistribution load_joint(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError(fmt::format("cannot open joint file '{}'", path.string()));
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_joint(ss.str());
}

std::string joint_to_json(const JointDistribution& joint) {
  nlohmann::json doc;
  doc["y_labels"] = joint.y_labels();
  doc["x_labels"] = joint.x_labels();
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index y = 0; y < joint.y_size(); ++y) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index x = 0; x < joint.x_size(); ++x) row.push_back(joint.matrix()(y, x));
    rows.push_back(row);
  }
  doc["pyx"] = rows;
  return doc.dump(2);
}

std::string joint_digest(const JointDistribution& joint) {
  std::string canon = fmt::format("{}x{}", joint.y_size(), joint.x_size());
  for (Eigen::Index y = 0; y < joint.y_size(); ++y) {
    for (Eigen::Index x = 0; x < joint.x_size(); ++x) {
      canon += fmt::format(";{:.17g}", joint.matrix()(y, x));
    }
  }
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : canon) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return fmt::format("fnv1a64:{:016x}", h);
}

std::string format_number(double value) {
  if (value == 0.0) return "0";  // no "-0"
  return fmt::format("{:.12g}", value);
}

void write_points_csv(std::ostream& out, const std::vector<TradeoffPoint>& points, double alpha,
                      int clusters, const std::string& source) {
  out << "gamma,eta,alpha,M,source,map\n";
  for (const auto& p : points) {
    out << format_number(p.gamma) << ',' << format_number(p.eta) << ',' << format_number(alpha)
        << ',' << clusters << ',' << source << ',' << p.witness.to_string() << '\n';
  }
}

void write_envelope_csv(std::ostream& out, const Envelope& envelope, int grid) {
  struct Row {
    double gamma, eta;
    bool vertex;
  };
  std::vector<Row> rows;
  for (const auto& v : envelope.vertices()) rows.push_back({v.gamma, v.eta, true});
  if (grid > 0 && envelope.flat_start() > 0.0) {
    for (int i = 0; i <= grid; ++i) {
      const double g = envelope.flat_start() * i / grid;
      rows.push_back({g, envelope(g), false});
    }
    std::stable_sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
      if (a.gamma != b.gamma) return a.gamma < b.gamma;
      return a.vertex > b.vertex;
    });
  }
  out << "gamma,eta,is_vertex\n";
  for (const auto& r : rows) {
    out << format_number(r.gamma) << ',' << format_number(r.eta) << ',' << (r.vertex ? 1 : 0)
        << '\n';
  }
}

nlohmann::json RunManifest::to_json() const {
  return {{"command", command},
          {"input_digest", input_digest},
          {"config", config},
          {"version", version},
          {"seed", seed}};
}

void write_manifest(const std::filesystem::path& path, const RunManifest& manifest) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error(fmt::format("cannot write '{}'", path.string()));
  out << manifest.to_json().dump(2) << '\n';
}

}  // namespace rib
