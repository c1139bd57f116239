#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "codecast/errors.hpp"

namespace codecast {

struct UserDemand {
  double z = 0.0;    ///< demanded fraction of the content, 0 < z <= 1
  double eps = 0.0;  ///< packet erasure rate toward this user, 0 <= eps <= 1
  std::string label;
};

/// One broadcast instance: N content packets of payload_bytes each, plus the
/// per-user (demand, erasure-rate) pairs.
///
/// eps = 1 (dead channel) is representable so the simulator can exercise it;
/// the analytic operations reject it where their formulas diverge.
class Scenario {
 public:
  Scenario(std::size_t packet_count, std::size_t payload_bytes,
           std::vector<UserDemand> users)
      : packet_count_(packet_count),
        payload_bytes_(payload_bytes),
        users_(std::move(users)) {
    if (packet_count_ == 0) throw usage_error("Scenario: N must be >= 1");
    if (payload_bytes_ == 0) throw usage_error("Scenario: payload_bytes must be >= 1");
    if (users_.empty()) throw usage_error("Scenario: user list is empty");
    for (const auto& u : users_) {
      if (!(u.z > 0.0) || u.z > 1.0)
        throw usage_error("Scenario: demand z must lie in (0, 1]");
      if (!(u.eps >= 0.0) || u.eps > 1.0)
        throw usage_error("Scenario: erasure rate must lie in [0, 1]");
    }
  }

  std::size_t packet_count() const { return packet_count_; }
  std::size_t payload_bytes() const { return payload_bytes_; }
  const std::vector<UserDemand>& users() const { return users_; }

  double max_demand() const {
    double m = 0.0;
    for (const auto& u : users_) m = std::max(m, u.z);
    return m;
  }

  /// Number of packets user i must decode: ceil(z_i * N).
  std::size_t demand_packets(std::size_t user) const {
    const double raw = users_.at(user).z * static_cast<double>(packet_count_);
    auto k = static_cast<std::size_t>(std::ceil(raw - 1e-9));
    return std::min(std::max<std::size_t>(k, 1), packet_count_);
  }

 private:
  std::size_t packet_count_;
  std::size_t payload_bytes_;
  std::vector<UserDemand> users_;
};

/// Normalized per-user delivery times plus their maximum (the server time).
struct AnalysisResult {
  std::vector<double> user_times;
  double server_time = 0.0;
};

inline AnalysisResult make_analysis_result(std::vector<double> times) {
  AnalysisResult r;
  r.user_times = std::move(times);
  r.server_time = 0.0;
  for (double t : r.user_times) r.server_time = std::max(r.server_time, t);
  return r;
}

}  // namespace codecast
