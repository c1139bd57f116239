#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "codecast/chunked.hpp"
#include "codecast/degree_distribution.hpp"
#include "codecast/errors.hpp"
#include "codecast/growth.hpp"
#include "codecast/lt_codec.hpp"
#include "codecast/rng.hpp"
#include "codecast/scenario.hpp"

namespace codecast {

// Monte-Carlo broadcast harness: one source stream, independent memoryless
// erasures per user, one decoder per user. Everything is derived from a
// single master seed; in particular each user's erasure stream is an
// independent substream keyed by the user index, so adding a user never
// perturbs the erasure patterns of the others.

struct LtParams {
  DegreeDistribution dist = DegreeDistribution::point_mass(1);
  bool systematic = false;
};

struct GrowthParams {
  double scale = 1.0;
};

struct ChunkedParams {
  std::size_t chunk_count = 1;
  std::size_t field_size = 256;
};

using SchemeParams = std::variant<LtParams, GrowthParams, ChunkedParams>;

struct SimTrace {
  /// decoded_counts[i][t] = packets user i has decoded after transmission t+1
  std::vector<std::vector<std::uint32_t>> decoded_counts;
  /// T_i: transmissions until user i met its demand; empty if capped out
  std::vector<std::optional<std::uint64_t>> delivery_transmissions;
  std::uint64_t transmissions_sent = 0;

  bool complete() const {
    for (const auto& d : delivery_transmissions)
      if (!d) return false;
    return true;
  }
};

struct RunSummary {
  std::vector<double> user_mean;    ///< mean of T_i/N over complete runs
  std::vector<double> user_stddev;  ///< sample stddev of T_i/N
  double server_mean = 0.0;         ///< mean of max_i T_i / N
  double server_stddev = 0.0;
  /// mean decoded fraction per transmission, averaged over all runs
  /// (finished runs hold their final counts)
  std::vector<std::vector<double>> mean_fraction;
  std::size_t runs = 0;
  std::size_t incomplete_runs = 0;
};

namespace detail {

inline std::vector<std::vector<std::uint8_t>> make_payloads(const Scenario& scenario,
                                                            std::uint64_t master_seed) {
  std::vector<std::vector<std::uint8_t>> payloads(scenario.packet_count());
  for (std::size_t i = 0; i < payloads.size(); ++i) {
    Xorshift64Star rng(derive_seed(master_seed, kSeedDomainPayload, i));
    payloads[i].resize(scenario.payload_bytes());
    for (auto& b : payloads[i]) b = rng.next_byte();
  }
  return payloads;
}

class UserDecoder {
 public:
  UserDecoder(const SchemeParams& params, const Scenario& scenario) {
    if (std::holds_alternative<ChunkedParams>(params)) {
      const auto& cp = std::get<ChunkedParams>(params);
      chunk_.emplace(ChunkConfig(cp.chunk_count,
                                 scenario.packet_count() / cp.chunk_count,
                                 cp.field_size),
                     scenario.payload_bytes());
    } else {
      bp_.emplace(scenario.packet_count());
    }
  }

  void ingest(const CodedPacket& packet) {
    if (bp_)
      bp_->ingest(packet);
    else
      chunk_->ingest(packet);
  }

  std::size_t decoded_packets() const {
    return bp_ ? bp_->decoded_count() : chunk_->decoded_packets();
  }

  const BpDecoder* bp() const { return bp_ ? &*bp_ : nullptr; }
  const ChunkDecoder* chunk() const { return chunk_ ? &*chunk_ : nullptr; }

 private:
  std::optional<BpDecoder> bp_;
  std::optional<ChunkDecoder> chunk_;
};

}  // namespace detail

/// Run one broadcast until every user met its demand or the transmission cap
/// (cap_multiplier * N) is reached.
inline SimTrace simulate(const Scenario& scenario, const SchemeParams& params,
                         std::uint64_t master_seed, double cap_multiplier = 50.0) {
  const std::size_t n = scenario.packet_count();
  const std::size_t users = scenario.users().size();
  const auto cap = static_cast<std::uint64_t>(
      std::max(1.0, cap_multiplier * static_cast<double>(n)));

  // validate scheme parameters against the scenario
  std::optional<GrowthSchedule> growth_schedule;
  if (std::holds_alternative<LtParams>(params)) {
    if (std::get<LtParams>(params).dist.max_degree() > n)
      throw usage_error("simulate: distribution degree exceeds N");
  } else if (std::holds_alternative<GrowthParams>(params)) {
    growth_schedule = make_growth_schedule(
        n, std::get<GrowthParams>(params).scale, scenario.max_demand());
  } else {
    const auto& cp = std::get<ChunkedParams>(params);
    if (cp.chunk_count == 0 || n % cp.chunk_count != 0)
      throw usage_error("simulate: chunk count must divide N");
  }

  const auto payloads = detail::make_payloads(scenario, master_seed);
  const std::uint64_t encoder_seed = derive_seed(master_seed, kSeedDomainEncoder, 0);
  Xorshift64Star chunk_rng(encoder_seed);

  std::vector<Xorshift64Star> channels;
  channels.reserve(users);
  for (std::size_t i = 0; i < users; ++i)
    channels.emplace_back(derive_seed(master_seed, kSeedDomainChannel, i));

  std::vector<detail::UserDecoder> decoders;
  decoders.reserve(users);
  for (std::size_t i = 0; i < users; ++i) decoders.emplace_back(params, scenario);

  std::vector<std::size_t> targets(users);
  for (std::size_t i = 0; i < users; ++i) targets[i] = scenario.demand_packets(i);

  SimTrace trace;
  trace.decoded_counts.assign(users, {});
  trace.delivery_transmissions.assign(users, std::nullopt);

  std::size_t met = 0;
  for (std::uint64_t t = 0; t < cap && met < users; ++t) {
    CodedPacket packet;
    if (std::holds_alternative<LtParams>(params)) {
      const auto& lp = std::get<LtParams>(params);
      packet = lt_encode_next(EncoderConfig{n, lp.dist, encoder_seed, lp.systematic},
                              payloads, t);
    } else if (growth_schedule) {
      packet = growth_encode_next(*growth_schedule, encoder_seed, payloads, t);
    } else {
      const auto& cp = std::get<ChunkedParams>(params);
      packet = chunk_encode_next(
          ChunkConfig(cp.chunk_count, n / cp.chunk_count, cp.field_size), payloads,
          chunk_rng);
    }
    ++trace.transmissions_sent;
    for (std::size_t i = 0; i < users; ++i) {
      const bool received = channels[i].next_unit() >= scenario.users()[i].eps;
      if (received) decoders[i].ingest(packet);
      auto count = static_cast<std::uint32_t>(decoders[i].decoded_packets());
      trace.decoded_counts[i].push_back(count);
      if (!trace.delivery_transmissions[i] && count >= targets[i]) {
        trace.delivery_transmissions[i] = t + 1;
        ++met;
      }
    }
  }
  return trace;
}

/// Aggregate `runs` independent simulations (run r uses the derived seed
/// mix(master, r)). Incomplete runs are counted and excluded from the
/// delivery-time statistics; trajectories average over all runs.
inline RunSummary average_runs(const Scenario& scenario, const SchemeParams& params,
                               std::size_t runs, std::uint64_t master_seed,
                               double cap_multiplier = 50.0) {
  if (runs < 1) throw usage_error("average_runs: need at least one run");
  const std::size_t users = scenario.users().size();
  const double dn = static_cast<double>(scenario.packet_count());

  RunSummary summary;
  summary.runs = runs;
  summary.user_mean.assign(users, 0.0);
  summary.user_stddev.assign(users, 0.0);
  summary.mean_fraction.assign(users, {});

  std::vector<std::vector<double>> user_values(users);
  std::vector<double> server_values;
  std::vector<std::vector<double>> fraction_sums(users);
  // sum over already-processed runs of their final decoded fraction; used to
  // back-fill when a later, longer run grows the trajectory window
  std::vector<double> final_sums(users, 0.0);

  for (std::size_t r = 0; r < runs; ++r) {
    SimTrace trace =
        simulate(scenario, params, derive_seed(master_seed, kSeedDomainRun, r),
                 cap_multiplier);
    if (trace.complete()) {
      double server = 0.0;
      for (std::size_t i = 0; i < users; ++i) {
        double ti = static_cast<double>(*trace.delivery_transmissions[i]) / dn;
        user_values[i].push_back(ti);
        server = std::max(server, ti);
      }
      server_values.push_back(server);
    } else {
      ++summary.incomplete_runs;
    }
    for (std::size_t i = 0; i < users; ++i) {
      auto& sums = fraction_sums[i];
      const auto& counts = trace.decoded_counts[i];
      if (counts.size() > sums.size())
        sums.resize(counts.size(), final_sums[i]);
      double last = 0.0;
      for (std::size_t t = 0; t < sums.size(); ++t) {
        if (t < counts.size()) last = static_cast<double>(counts[t]) / dn;
        sums[t] += last;
      }
      final_sums[i] += last;
    }
  }

  auto mean_of = [](const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return v.empty() ? 0.0 : s / static_cast<double>(v.size());
  };
  auto stddev_of = [&](const std::vector<double>& v, double mean) {
    if (v.size() < 2) return 0.0;
    double s = 0.0;
    for (double x : v) s += (x - mean) * (x - mean);
    return std::sqrt(s / static_cast<double>(v.size() - 1));
  };

  for (std::size_t i = 0; i < users; ++i) {
    summary.user_mean[i] = mean_of(user_values[i]);
    summary.user_stddev[i] = stddev_of(user_values[i], summary.user_mean[i]);
    summary.mean_fraction[i] = fraction_sums[i];
    for (auto& v : summary.mean_fraction[i]) v /= static_cast<double>(runs);
  }
  summary.server_mean = mean_of(server_values);
  summary.server_stddev = stddev_of(server_values, summary.server_mean);
  return summary;
}

}  // namespace codecast
