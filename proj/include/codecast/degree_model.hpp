#pragma once

#include <cmath>
#include <limits>
#include <vector>

#include "codecast/degree_distribution.hpp"
#include "codecast/errors.hpp"
#include "codecast/scenario.hpp"

namespace codecast {

// Asymptotic (N -> infinity) analysis of LT-coded broadcast. The recovery
// condition is that the expected normalized ripple stays positive while a
// fraction x of the content is decoded:
//
//     (1 - eps) * t * P'(x) + ln(1 - x) > 0
//
// Delivery times are the smallest t for which the condition holds on the
// whole demanded range, evaluated on a uniform grid of x values.

namespace detail {

inline constexpr double kConstraintSlack = 1e-12;

/// Grid over (lo, hi]: multiples of step strictly inside, then hi itself.
/// x = 0 is always excluded (the constraint there degenerates to 0 > 0).
inline std::vector<double> constraint_grid(double lo, double hi, double step) {
  if (!(step > 0.0)) throw usage_error("constraint_grid: step must be positive");
  std::vector<double> pts;
  if (!(hi > lo)) return pts;
  auto k = static_cast<long long>(std::floor(lo / step + 1e-12)) + 1;
  for (; static_cast<double>(k) * step < hi - 1e-15; ++k) {
    double x = static_cast<double>(k) * step;
    if (x > lo + 1e-15) pts.push_back(x);
  }
  pts.push_back(hi);
  return pts;
}

inline bool ripple_positive(const DegreeDistribution& dist, double v, double x) {
  return v * dist.pgf_prime(x) + std::log1p(-x) >= -kConstraintSlack;
}

}  // namespace detail

/// Expected normalized ripple size u * (v * P'(1-u) + ln u) when a fraction
/// 1-u of the content has been decoded from v*N received packets on average.
inline double expected_ripple(const DegreeDistribution& dist, double v, double u) {
  if (!(u > 0.0) || u > 1.0)
    throw usage_error("expected_ripple: u must lie in (0, 1]");
  if (!(v >= 0.0)) throw usage_error("expected_ripple: v must be nonnegative");
  return u * (v * dist.pgf_prime(1.0 - u) + std::log(u));
}

/// Normalized draws needed to collect a fraction z of distinct packets by
/// uniform degree-1 sampling: -ln(1-z).
inline double coupon_collector_time(double z) {
  if (!(z >= 0.0)) throw usage_error("coupon_collector_time: z must be >= 0");
  if (z >= 1.0) return std::numeric_limits<double>::infinity();
  return -std::log1p(-z);
}

/// Smallest normalized transmission count t such that the ripple condition
/// holds for all grid x in (0, z]. Returns +infinity when P'(x) vanishes
/// somewhere the requirement is positive.
inline double lt_delivery_time(const DegreeDistribution& dist, double z, double eps,
                               double grid_step = 1e-3) {
  if (!(z > 0.0)) throw usage_error("lt_delivery_time: z must be positive");
  if (z >= 1.0)
    throw domain_error("lt_delivery_time: demand z = 1 is not reachable by the ripple analysis");
  if (!(eps >= 0.0)) throw usage_error("lt_delivery_time: negative erasure rate");
  if (eps >= 1.0) throw domain_error("lt_delivery_time: dead channel (eps >= 1)");
  double t = 0.0;
  for (double x : detail::constraint_grid(0.0, z, grid_step)) {
    double need = -std::log1p(-x);
    double d = dist.pgf_prime(x);
    if (d <= 0.0) {
      if (need > 0.0) return std::numeric_limits<double>::infinity();
      continue;
    }
    t = std::max(t, need / ((1.0 - eps) * d));
  }
  return t;
}

/// Largest grid fraction zeta such that the ripple condition holds at every
/// grid point up to and including zeta, after t normalized transmissions.
inline double lt_recoverable_fraction(const DegreeDistribution& dist, double t,
                                      double eps, double grid_step = 1e-3) {
  if (!(t >= 0.0)) throw usage_error("lt_recoverable_fraction: t must be >= 0");
  if (t == 0.0) return 0.0;
  const double v = (1.0 - eps) * t;
  double zeta = 0.0;
  for (long long k = 1;; ++k) {
    double x = static_cast<double>(k) * grid_step;
    if (x >= 1.0) break;
    if (!detail::ripple_positive(dist, v, x)) break;
    zeta = x;
  }
  return zeta;
}

/// True when the ripple condition holds at every grid x in (0, z].
inline bool lt_meets_demand(const DegreeDistribution& dist, double t, double eps,
                            double z, double grid_step = 1e-3) {
  const double v = (1.0 - eps) * t;
  for (double x : detail::constraint_grid(0.0, z, grid_step))
    if (!detail::ripple_positive(dist, v, x)) return false;
  return true;
}

/// Delivery time when one uncoded round precedes the coded stream. Demands
/// within the channel capacity are met during the uncoded round itself; the
/// remainder requires parity packets satisfying
///     -ln(eps) + (1-eps)(t-1) P'(x) + ln(1-x) > 0  on (1-eps, z].
inline double systematic_delivery_time(const DegreeDistribution& dist, double z,
                                       double eps, double grid_step = 1e-3) {
  if (!(z > 0.0)) throw usage_error("systematic_delivery_time: z must be positive");
  if (z >= 1.0)
    throw domain_error("systematic_delivery_time: demand z = 1 is not supported");
  if (!(eps >= 0.0)) throw usage_error("systematic_delivery_time: negative erasure rate");
  if (eps >= 1.0) throw domain_error("systematic_delivery_time: dead channel (eps >= 1)");
  if (z <= 1.0 - eps) return z / (1.0 - eps);
  double extra = 0.0;
  for (double x : detail::constraint_grid(1.0 - eps, z, grid_step)) {
    double need = -std::log1p(-x) + std::log(eps);
    double d = dist.pgf_prime(x);
    if (d <= 0.0) {
      if (need > 0.0) return std::numeric_limits<double>::infinity();
      continue;
    }
    extra = std::max(extra, need / ((1.0 - eps) * d));
  }
  return 1.0 + extra;
}

/// The degree distribution seen by a decoder that already holds each packet
/// independently with probability 1-eps: Phat(x) = P(1 - eps + eps*x).
struct TransformedDistribution {
  DegreeDistribution base;
  double eps;

  double value(double x) const { return base.pgf(1.0 - eps + eps * x); }
  double derivative(double x) const {
    return eps * base.pgf_prime(1.0 - eps + eps * x);
  }
};

inline TransformedDistribution side_info_transform(const DegreeDistribution& dist,
                                                   double eps) {
  if (!(eps >= 0.0) || eps > 1.0)
    throw usage_error("side_info_transform: eps must lie in [0, 1]");
  return TransformedDistribution{dist, eps};
}

/// Per-user delivery times for a fixed distribution, with or without the
/// uncoded first round.
inline AnalysisResult analyze_lt(const Scenario& scenario,
                                 const DegreeDistribution& dist, bool systematic,
                                 double grid_step = 1e-3) {
  std::vector<double> times;
  times.reserve(scenario.users().size());
  for (const auto& u : scenario.users()) {
    times.push_back(systematic
                        ? systematic_delivery_time(dist, u.z, u.eps, grid_step)
                        : lt_delivery_time(dist, u.z, u.eps, grid_step));
  }
  return make_analysis_result(std::move(times));
}

}  // namespace codecast
