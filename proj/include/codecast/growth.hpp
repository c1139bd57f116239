#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "codecast/degree_model.hpp"
#include "codecast/errors.hpp"
#include "codecast/lt_codec.hpp"
#include "codecast/packet.hpp"
#include "codecast/scenario.hpp"

namespace codecast {

// Growth-code schedule: with R_j = (jN-1)/(j+1), the stream sends A_j
// degree-j packets for j = 1, 2, ..., where
//
//   A_j = sum_{s = floor(R_{j-1})+1}^{floor(R_j)}  C(N,j) / (C(s,j-1) (N-s)).
//
// C(N,j) / (C(s,j-1) (N-s)) is the expected wait for a degree-j packet to
// decode something new when s originals are known, so j = 1 reproduces the
// coupon-collector waits N/(N-s). Written with C(s,j-1); the form with
// C(s,j) in the denominator vanishes at s=0, j=1.
//
// On a lossy link every phase is stretched by `scale`; after the phase of
// degree m = ceil(1/(1-z_max)) the stream switches to sampling degrees from
// the cumulative distribution p_j = A_j / sum_{1..m} A_k instead of growing
// further, which keeps resupplying the low degrees lost to erasures.

namespace detail {

inline double log_choose(double n, double k) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

}  // namespace detail

/// Ideal (unscaled) phase lengths A_1..A_{N-1}; entry j-1 holds A_j.
inline std::vector<double> growth_phase_lengths(std::size_t n) {
  if (n < 2) throw usage_error("growth_phase_lengths: need N >= 2");
  std::vector<double> lengths(n - 1, 0.0);
  long long prev_floor = -1;  // floor(R_0) = floor(-1/1)
  for (std::size_t j = 1; j <= n - 1; ++j) {
    auto cur_floor = static_cast<long long>(
        (static_cast<long long>(j) * static_cast<long long>(n) - 1) /
        (static_cast<long long>(j) + 1));
    double sum = 0.0;
    for (long long s = prev_floor + 1; s <= cur_floor; ++s) {
      double lg = detail::log_choose(static_cast<double>(n), static_cast<double>(j)) -
                  detail::log_choose(static_cast<double>(s), static_cast<double>(j - 1)) -
                  std::log(static_cast<double>(n) - static_cast<double>(s));
      sum += std::exp(lg);
    }
    lengths[j - 1] = sum;
    prev_floor = cur_floor;
  }
  return lengths;
}

struct GrowthSchedule {
  std::size_t packet_count = 0;  ///< N
  double scale = 1.0;
  std::vector<double> phase_lengths;         ///< A_1..A_{N-1}
  std::size_t fallback_degree = 1;           ///< m
  DegreeDistribution fallback_dist = DegreeDistribution::point_mass(1);
  std::vector<std::uint64_t> phase_counts;   ///< rounded scaled lengths, degrees 1..m
  std::uint64_t scheduled_total = 0;

  /// Degree of scheduled transmission t, or 0 once t is past the last phase
  /// (the encoder then samples from fallback_dist).
  std::size_t degree_at(std::uint64_t t) const {
    std::uint64_t acc = 0;
    for (std::size_t j = 0; j < phase_counts.size(); ++j) {
      acc += phase_counts[j];
      if (t < acc) return j + 1;
    }
    return 0;
  }
};

inline GrowthSchedule make_growth_schedule(std::size_t n, double scale, double z_max) {
  if (!(scale >= 1.0)) throw usage_error("make_growth_schedule: scale must be >= 1");
  if (!(z_max > 0.0) || z_max > 1.0)
    throw usage_error("make_growth_schedule: z_max must lie in (0, 1]");
  GrowthSchedule sched;
  sched.packet_count = n;
  sched.scale = scale;
  sched.phase_lengths = growth_phase_lengths(n);
  std::size_t m = (z_max >= 1.0)
                      ? n - 1
                      : static_cast<std::size_t>(std::ceil(1.0 / (1.0 - z_max) - 1e-9));
  m = std::min(m, n - 1);
  m = std::max<std::size_t>(m, 1);
  sched.fallback_degree = m;
  std::vector<double> weights(sched.phase_lengths.begin(),
                              sched.phase_lengths.begin() + static_cast<std::ptrdiff_t>(m));
  sched.fallback_dist = DegreeDistribution::normalized(std::move(weights));
  // error-diffusion rounding: cumulative floors keep the running total exact
  sched.phase_counts.resize(m, 0);
  double cumulative = 0.0;
  std::uint64_t prev_total = 0;
  for (std::size_t j = 0; j < m; ++j) {
    cumulative += scale * sched.phase_lengths[j];
    auto total = static_cast<std::uint64_t>(std::floor(cumulative + 1e-9));
    sched.phase_counts[j] = total - prev_total;
    prev_total = total;
  }
  sched.scheduled_total = prev_total;
  return sched;
}

/// Packet for transmission index t; index sets come from the same seeded
/// expansion as the LT encoder, so the LT decoder handles the stream as-is.
inline CodedPacket growth_encode_next(const GrowthSchedule& sched,
                                      std::uint64_t master_seed,
                                      const std::vector<std::vector<std::uint8_t>>& payloads,
                                      std::uint64_t t) {
  const std::size_t n = sched.packet_count;
  if (payloads.size() != n)
    throw usage_error("growth_encode_next: payload count differs from N");
  const std::uint64_t seed = mix_seed(master_seed, t);
  std::size_t degree = sched.degree_at(t);
  if (degree == 0) {
    Xorshift64Star degree_rng(mix_seed(seed, 0));
    degree = sample_degree(sched.fallback_dist, degree_rng);
  }
  auto indices = expand_coding_vector(seed, degree, n);
  std::vector<std::uint8_t> payload(payloads[indices[0]]);
  for (std::size_t i = 1; i < indices.size(); ++i)
    xor_bytes(payload, payloads[indices[i]]);
  return CodedPacket::make_lt(seed, static_cast<std::uint16_t>(degree),
                              std::move(payload));
}

namespace detail {

/// Expected degree histogram (counts, index j-1 = degree j) of the first
/// `sent` scheduled packets. Erasures thin the stream uniformly, so the
/// received empirical distribution equals the sent one.
inline std::vector<double> growth_degree_counts(const GrowthSchedule& sched,
                                                std::uint64_t sent) {
  std::vector<double> counts(sched.fallback_degree, 0.0);
  std::uint64_t acc = 0;
  for (std::size_t j = 0; j < sched.phase_counts.size() && acc < sent; ++j) {
    std::uint64_t take = std::min(sched.phase_counts[j], sent - acc);
    counts[j] += static_cast<double>(take);
    acc += take;
  }
  if (sent > sched.scheduled_total) {
    double rest = static_cast<double>(sent - sched.scheduled_total);
    const auto& p = sched.fallback_dist.probs();
    for (std::size_t j = 0; j < p.size(); ++j) counts[j] += rest * p[j];
  }
  return counts;
}

}  // namespace detail

/// Recoverable fraction after t normalized transmissions: the ripple
/// analysis applied to the empirical degree distribution of the first
/// floor(t*N) scheduled packets with received mass (1-eps)*t.
inline double growth_recoverable_fraction(const GrowthSchedule& sched, double t,
                                          double eps, double grid_step = 1e-3) {
  if (!(t >= 0.0)) throw usage_error("growth_recoverable_fraction: t must be >= 0");
  auto sent = static_cast<std::uint64_t>(std::floor(
      t * static_cast<double>(sched.packet_count) + 1e-9));
  if (sent == 0) return 0.0;
  auto counts = detail::growth_degree_counts(sched, sent);
  auto dist = DegreeDistribution::normalized(std::move(counts));
  return lt_recoverable_fraction(dist, t, eps, grid_step);
}

/// Per-user delivery times of the scheduled stream: the first transmission
/// count at which the user's demanded fraction becomes recoverable.
/// Returns infinity for users never served within the cap.
inline AnalysisResult growth_analysis(const GrowthSchedule& sched,
                                      const Scenario& scenario,
                                      double grid_step = 1e-3,
                                      double cap_multiplier = 50.0) {
  const std::size_t n = sched.packet_count;
  const double dn = static_cast<double>(n);
  const auto cap = static_cast<std::uint64_t>(cap_multiplier * dn);
  const std::size_t users = scenario.users().size();
  std::vector<double> times(users, std::numeric_limits<double>::infinity());
  std::size_t met = 0;
  std::vector<double> counts(sched.fallback_degree, 0.0);
  std::size_t phase = 0;
  std::uint64_t boundary =
      sched.phase_counts.empty() ? 0 : sched.phase_counts[0];
  const auto& fallback = sched.fallback_dist.probs();
  for (std::uint64_t k = 1; k <= cap && met < users; ++k) {
    // extend the degree histogram by packet k-1
    while (phase < sched.phase_counts.size() && k - 1 >= boundary) {
      ++phase;
      if (phase < sched.phase_counts.size()) boundary += sched.phase_counts[phase];
    }
    if (phase < sched.phase_counts.size()) {
      counts[phase] += 1.0;
    } else {
      for (std::size_t j = 0; j < fallback.size(); ++j) counts[j] += fallback[j];
    }
    double total = static_cast<double>(k);
    double t = static_cast<double>(k) / dn;
    for (std::size_t i = 0; i < users; ++i) {
      if (std::isfinite(times[i])) continue;
      const auto& u = scenario.users()[i];
      double v = (1.0 - u.eps) * t;
      bool ok = true;
      for (double x : detail::constraint_grid(0.0, u.z, grid_step)) {
        // P'(x) of the histogram without materializing the distribution
        double d = 0.0, xp = 1.0;
        for (std::size_t j = 0; j < counts.size(); ++j) {
          d += static_cast<double>(j + 1) * counts[j] * xp;
          xp *= x;
        }
        d /= total;
        if (v * d + std::log1p(-x) < -detail::kConstraintSlack) {
          ok = false;
          break;
        }
      }
      if (ok) {
        times[i] = t;
        ++met;
      }
    }
  }
  return make_analysis_result(std::move(times));
}

struct ScaleSearchResult {
  double scale = 1.0;
  double server_time = std::numeric_limits<double>::infinity();
};

/// Grid search over stretch factors in [1/(1-eps_min), 1/(1-eps_max)] for
/// the one minimizing the analytic server delivery time.
inline ScaleSearchResult best_scale(const Scenario& scenario,
                                    double scale_step = 0.05,
                                    double grid_step = 1e-3,
                                    double cap_multiplier = 50.0) {
  double eps_min = 1.0, eps_max = 0.0;
  for (const auto& u : scenario.users()) {
    eps_min = std::min(eps_min, u.eps);
    eps_max = std::max(eps_max, u.eps);
  }
  if (eps_max >= 1.0) throw domain_error("best_scale: dead channel (eps >= 1)");
  const double lo = 1.0 / (1.0 - eps_min);
  const double hi = 1.0 / (1.0 - eps_max);
  ScaleSearchResult best;
  best.scale = lo;
  for (double scale = lo;; scale += scale_step) {
    bool last = scale >= hi - 1e-12;
    if (last) scale = hi;
    auto sched = make_growth_schedule(scenario.packet_count(), scale,
                                      scenario.max_demand());
    double t = growth_analysis(sched, scenario, grid_step, cap_multiplier).server_time;
    if (t < best.server_time) {
      best.scale = scale;
      best.server_time = t;
    }
    if (last) break;
  }
  return best;
}

}  // namespace codecast
