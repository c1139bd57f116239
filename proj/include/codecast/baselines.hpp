#pragma once

#include <algorithm>
#include <limits>
#include <vector>

#include "codecast/scenario.hpp"

namespace codecast {

struct BaselineReport {
  double lower_bound = 0.0;
  double unicast_total = 0.0;
  double timeshare = 0.0;
};

/// max_i z_i / (1 - eps_i); no scheme can beat it.
inline double lower_bound(const Scenario& scenario) {
  double t = 0.0;
  for (const auto& u : scenario.users()) {
    if (u.eps >= 1.0) return std::numeric_limits<double>::infinity();
    t = std::max(t, u.z / (1.0 - u.eps));
  }
  return t;
}

/// Total normalized transmissions when each user gets a private stream.
inline double unicast_total(const Scenario& scenario) {
  double t = 0.0;
  for (const auto& u : scenario.users()) {
    if (u.eps >= 1.0) return std::numeric_limits<double>::infinity();
    t += u.z / (1.0 - u.eps);
  }
  return t;
}

/// Time-shared broadcast of degraded message sets: layer the content by
/// demand (layer i spans (z_{i-1}, z_i] after sorting z ascending) and
/// protect each layer by an erasure code at the rate of its worst intended
/// receiver, 1 - max_{j >= i} eps_j.
inline double timeshare_delivery(const Scenario& scenario) {
  std::vector<UserDemand> users = scenario.users();
  std::sort(users.begin(), users.end(), [](const UserDemand& a, const UserDemand& b) {
    if (a.z != b.z) return a.z < b.z;
    return a.eps > b.eps;  // ties: larger eps first, fixed for determinism
  });
  // suffix maxima of the erasure rates over the sorted order
  std::vector<double> worst(users.size());
  double running = 0.0;
  for (std::size_t i = users.size(); i-- > 0;) {
    running = std::max(running, users[i].eps);
    worst[i] = running;
  }
  double total = 0.0;
  double prev_z = 0.0;
  for (std::size_t i = 0; i < users.size(); ++i) {
    if (worst[i] >= 1.0) return std::numeric_limits<double>::infinity();
    total += (users[i].z - prev_z) / (1.0 - worst[i]);
    prev_z = users[i].z;
  }
  return total;
}

inline BaselineReport baseline_report(const Scenario& scenario) {
  return BaselineReport{lower_bound(scenario), unicast_total(scenario),
                        timeshare_delivery(scenario)};
}

}  // namespace codecast
