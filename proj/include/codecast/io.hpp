#pragma once

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "codecast/degree_distribution.hpp"
#include "codecast/errors.hpp"
#include "codecast/scenario.hpp"

namespace codecast::io {

using nlohmann::json;

/// Parse a number that may be written as a decimal or an "a/b" fraction
/// string (configs use forms like "15/16").
inline double parse_fraction(const json& value, const std::string& field) {
  if (value.is_number()) return value.get<double>();
  if (value.is_string()) {
    const std::string s = value.get<std::string>();
    std::size_t slash = s.find('/');
    try {
      if (slash == std::string::npos) {
        std::size_t used = 0;
        double v = std::stod(s, &used);
        if (used != s.size()) throw parse_error(field + ": trailing characters in '" + s + "'");
        return v;
      }
      double num = std::stod(s.substr(0, slash));
      double den = std::stod(s.substr(slash + 1));
      if (den == 0.0) throw parse_error(field + ": zero denominator in '" + s + "'");
      return num / den;
    } catch (const parse_error&) {
      throw;
    } catch (const std::exception&) {
      throw parse_error(field + ": cannot parse '" + s + "' as a number");
    }
  }
  throw parse_error(field + ": expected a number or \"a/b\" string");
}

inline json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw parse_error(path + ": cannot open file");
  json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw parse_error(path + ": invalid JSON: " + e.what());
  }
  return j;
}

/// Scenario file layout:
///   { "N": 1024, "payload_bytes": 32,
///     "users": [ { "z": "15/16", "eps": 0.1, "label": "near" }, ... ] }
inline Scenario scenario_from_json(const json& j) {
  if (!j.contains("N")) throw parse_error("scenario: missing field 'N'");
  if (!j["N"].is_number_unsigned() || j["N"].get<std::uint64_t>() == 0)
    throw parse_error("scenario: 'N' must be a positive integer");
  std::size_t payload_bytes = 32;
  if (j.contains("payload_bytes")) {
    if (!j["payload_bytes"].is_number_unsigned() ||
        j["payload_bytes"].get<std::uint64_t>() == 0)
      throw parse_error("scenario: 'payload_bytes' must be a positive integer");
    payload_bytes = j["payload_bytes"].get<std::size_t>();
  }
  if (!j.contains("users") || !j["users"].is_array() || j["users"].empty())
    throw parse_error("scenario: 'users' must be a nonempty array");
  std::vector<UserDemand> users;
  for (std::size_t i = 0; i < j["users"].size(); ++i) {
    const auto& ju = j["users"][i];
    const std::string where = "scenario: users[" + std::to_string(i) + "]";
    if (!ju.is_object() || !ju.contains("z") || !ju.contains("eps"))
      throw parse_error(where + " needs fields 'z' and 'eps'");
    UserDemand u;
    u.z = parse_fraction(ju["z"], where + ".z");
    u.eps = parse_fraction(ju["eps"], where + ".eps");
    if (ju.contains("label")) u.label = ju["label"].get<std::string>();
    if (!(u.z > 0.0) || u.z > 1.0) throw parse_error(where + ".z must lie in (0, 1]");
    if (!(u.eps >= 0.0) || u.eps > 1.0)
      throw parse_error(where + ".eps must lie in [0, 1]");
    users.push_back(std::move(u));
  }
  try {
    return Scenario(j["N"].get<std::size_t>(), payload_bytes, std::move(users));
  } catch (const usage_error& e) {
    throw parse_error(std::string("scenario: ") + e.what());
  }
}

inline Scenario load_scenario(const std::string& path) {
  return scenario_from_json(load_json_file(path));
}

/// Distribution files map degree to probability:
///   { "probs": { "1": 0.0195, "2": 0.7814, "3": 0.1991 } }
/// A bare top-level map of the same shape is accepted too.
inline DegreeDistribution distribution_from_json(const json& j) {
  const json& probs = j.contains("probs") ? j["probs"] : j;
  if (!probs.is_object() || probs.empty())
    throw parse_error("distribution: expected a degree -> probability map");
  std::size_t dmax = 0;
  for (auto it = probs.begin(); it != probs.end(); ++it) {
    std::size_t degree = 0;
    try {
      degree = static_cast<std::size_t>(std::stoul(it.key()));
    } catch (const std::exception&) {
      throw parse_error("distribution: degree key '" + it.key() + "' is not an integer");
    }
    if (degree == 0) throw parse_error("distribution: degree keys start at 1");
    dmax = std::max(dmax, degree);
  }
  std::vector<double> p(dmax, 0.0);
  for (auto it = probs.begin(); it != probs.end(); ++it) {
    auto degree = static_cast<std::size_t>(std::stoul(it.key()));
    p[degree - 1] = parse_fraction(it.value(), "distribution: degree " + it.key());
  }
  try {
    return DegreeDistribution::normalized(std::move(p));
  } catch (const usage_error& e) {
    throw parse_error(std::string("distribution: ") + e.what());
  }
}

inline DegreeDistribution load_distribution(const std::string& path) {
  return distribution_from_json(load_json_file(path));
}

inline json distribution_to_json(const DegreeDistribution& dist) {
  json probs = json::object();
  for (std::size_t j = 1; j <= dist.max_degree(); ++j)
    if (dist.prob(j) > 0.0) probs[std::to_string(j)] = dist.prob(j);
  return json{{"probs", probs}};
}

/// Fixed-notation float for byte-stable CSV output.
inline std::string format_value(double v, int precision = 6) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", precision, v);
  return buf;
}

inline void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw parse_error(path + ": cannot open for writing");
  out << content;
  if (!out) throw parse_error(path + ": write failed");
}

}  // namespace codecast::io
