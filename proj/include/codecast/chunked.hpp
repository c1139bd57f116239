#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "codecast/errors.hpp"
#include "codecast/galois.hpp"
#include "codecast/packet.hpp"
#include "codecast/rng.hpp"
#include "codecast/scenario.hpp"
#include "codecast/special_functions.hpp"

namespace codecast {

// Chunked random linear coding: the N content packets are split into n
// disjoint chunks of h packets. Each transmission picks a chunk uniformly
// and sends a random GF(q) combination of its packets; a chunk decodes once
// its received coefficient rows reach rank h.

struct ChunkConfig {
  std::size_t chunk_count = 1;  ///< n
  std::size_t chunk_size = 1;   ///< h
  std::size_t field_size = 256; ///< q; 2 is allowed for tests

  ChunkConfig(std::size_t n, std::size_t h, std::size_t q = 256)
      : chunk_count(n), chunk_size(h), field_size(q) {
    if (n < 1 || h < 1) throw usage_error("ChunkConfig: n and h must be >= 1");
    if (q != 256 && q != 2) throw usage_error("ChunkConfig: field size must be 2 or 256");
  }

  std::size_t packet_count() const { return chunk_count * chunk_size; }
};

/// One coded packet: uniform chunk id, uniform coefficient row over GF(q)^h,
/// payload the coefficient-weighted sum of the chunk's originals.
inline CodedPacket chunk_encode_next(const ChunkConfig& config,
                                     const std::vector<std::vector<std::uint8_t>>& payloads,
                                     Xorshift64Star& rng) {
  if (payloads.size() != config.packet_count())
    throw usage_error("chunk_encode_next: payload count differs from n*h");
  const std::size_t chunk = rng.next_below(config.chunk_count);
  std::vector<std::uint8_t> row(config.chunk_size);
  for (auto& c : row)
    c = static_cast<std::uint8_t>(rng.next_below(config.field_size));
  const std::size_t payload_bytes = payloads[0].size();
  std::vector<std::uint8_t> payload(payload_bytes, 0);
  for (std::size_t k = 0; k < config.chunk_size; ++k)
    gf256::mul_add(payload, payloads[chunk * config.chunk_size + k], row[k]);
  return CodedPacket::make_chunked(chunk, std::move(row), std::move(payload));
}

/// Per-chunk Gaussian elimination decoder. GF(2) coefficient rows are the
/// {0,1} subfield of GF(256), so one eliminator serves both field sizes.
class ChunkDecoder {
 public:
  ChunkDecoder(const ChunkConfig& config, std::size_t payload_bytes)
      : config_(config), payload_bytes_(payload_bytes) {
    chunks_.reserve(config.chunk_count);
    for (std::size_t c = 0; c < config.chunk_count; ++c)
      chunks_.emplace_back(config.chunk_size, payload_bytes);
  }

  /// Feed one received packet; returns the ids of chunks that just decoded.
  std::vector<std::size_t> ingest(const CodedPacket& packet) {
    if (packet.kind != CodedPacket::Kind::chunked)
      throw usage_error("ChunkDecoder: not a chunked packet");
    if (packet.id >= config_.chunk_count)
      throw usage_error("ChunkDecoder: chunk id out of range");
    if (packet.coefficients.size() != config_.chunk_size)
      throw usage_error("ChunkDecoder: coefficient row width mismatch");
    auto chunk = static_cast<std::size_t>(packet.id);
    auto& elim = chunks_[chunk];
    if (elim.rank() == config_.chunk_size) return {};  // already solved
    auto outcome = elim.add_row(packet.coefficients, packet.payload);
    if (outcome == RowOutcome::inconsistent)
      throw stream_error("ChunkDecoder: received packet contradicts earlier rows");
    std::vector<std::size_t> done;
    if (outcome == RowOutcome::added && elim.rank() == config_.chunk_size) {
      done.push_back(chunk);
      ++decoded_chunks_;
    }
    return done;
  }

  bool chunk_decoded(std::size_t chunk) const {
    return chunks_.at(chunk).rank() == config_.chunk_size;
  }

  std::size_t chunk_rank(std::size_t chunk) const { return chunks_.at(chunk).rank(); }
  std::size_t decoded_chunks() const { return decoded_chunks_; }
  std::size_t decoded_packets() const { return decoded_chunks_ * config_.chunk_size; }

  /// Payload of original packet `index` once its chunk has decoded.
  const std::vector<std::uint8_t>& packet_payload(std::size_t index) const {
    std::size_t chunk = index / config_.chunk_size;
    std::size_t local = index % config_.chunk_size;
    const auto* p = chunks_.at(chunk).payload_of(local);
    if (!p) throw usage_error("ChunkDecoder: packet not decoded");
    return *p;
  }

 private:
  ChunkConfig config_;
  std::size_t payload_bytes_;
  std::vector<Gf256Eliminator> chunks_;
  std::size_t decoded_chunks_ = 0;
};

namespace detail {

/// P[Binomial(n, 1-g) <= k-1] = sum_{j<k} C(n,j) g^(n-j) (1-g)^j, the
/// probability that fewer than k chunks have finished collecting.
inline double binomial_tail(std::size_t n, std::size_t k, double g,
                            const std::vector<double>& log_binom) {
  if (g <= 0.0) return 0.0;  // j <= k-1 <= n-1 < n, so every term carries g
  if (g >= 1.0) return 1.0;
  const double lg = std::log(g), l1mg = std::log1p(-g);
  double sum = 0.0;
  if (static_cast<double>(n) * lg > -700.0) {
    double term = std::exp(static_cast<double>(n) * lg);
    const double ratio = (1.0 - g) / g;
    for (std::size_t j = 0; j < k; ++j) {
      sum += term;
      term *= ratio * static_cast<double>(n - j) / static_cast<double>(j + 1);
    }
  } else {
    for (std::size_t j = 0; j < k; ++j) {
      double le = log_binom[j] + static_cast<double>(n - j) * lg +
                  (j ? static_cast<double>(j) * l1mg : 0.0);
      sum += std::exp(le);
    }
  }
  return std::min(sum, 1.0);
}

}  // namespace detail

/// Expected transmissions over a rate-eps erasure link until any k of the n
/// chunks (h packets each) decode:
///
///   E = n/(1-eps) * Int_0^inf  P[Bin(n, 1 - Q(h,x)) <= k-1]  dx,
///
/// Q(h, x) the regularized upper incomplete gamma. The integrand is a
/// binomial tail bounded by 1, so nothing overflows at any (n, k, h).
inline double expected_delivery_chunked(std::size_t n, std::size_t k, std::size_t h,
                                        double eps, double quad_tol = 1e-8) {
  if (k < 1 || k > n) throw usage_error("expected_delivery_chunked: need 1 <= k <= n");
  if (h < 1) throw usage_error("expected_delivery_chunked: h must be >= 1");
  if (!(eps >= 0.0)) throw usage_error("expected_delivery_chunked: negative erasure rate");
  if (eps >= 1.0) throw domain_error("expected_delivery_chunked: dead channel (eps >= 1)");
  std::vector<double> log_binom(k);
  for (std::size_t j = 0; j < k; ++j) log_binom[j] = log_binomial(n, j);
  const double dh = static_cast<double>(h);
  auto integrand = [&](double x) {
    return detail::binomial_tail(n, k, regularized_gamma_q(dh, x), log_binom);
  };
  // past x_max the survival mass is below machine noise
  const double x_max =
      dh + 12.0 * std::sqrt(dh) + 30.0 * std::log(static_cast<double>(std::max<std::size_t>(n, 2)));
  const double scaled_tol = quad_tol * (1.0 - eps) / static_cast<double>(n);
  double integral = adaptive_simpson(integrand, 0.0, x_max, scaled_tol);
  return static_cast<double>(n) / (1.0 - eps) * integral;
}

/// Per-user normalized delivery times t_i = E[T(n, ceil(z_i n), eps_i)] / N.
inline AnalysisResult chunked_analysis(const Scenario& scenario,
                                       const ChunkConfig& config,
                                       double quad_tol = 1e-8) {
  if (config.packet_count() != scenario.packet_count())
    throw usage_error("chunked_analysis: configuration does not cover the scenario");
  const double dn = static_cast<double>(scenario.packet_count());
  std::vector<double> times;
  times.reserve(scenario.users().size());
  for (const auto& u : scenario.users()) {
    auto k = static_cast<std::size_t>(
        std::ceil(u.z * static_cast<double>(config.chunk_count) - 1e-9));
    k = std::min(std::max<std::size_t>(k, 1), config.chunk_count);
    times.push_back(
        expected_delivery_chunked(config.chunk_count, k, config.chunk_size, u.eps, quad_tol) / dn);
  }
  return make_analysis_result(std::move(times));
}

struct ChunkSizeSweep {
  std::size_t best_h = 1;
  double best_time = 0.0;
  std::vector<std::pair<std::size_t, double>> table;  // (h, server time)
};

/// Evaluate every power-of-two chunk size (every divisor when N is not a
/// power of two) and report the one minimizing the server delivery time.
inline ChunkSizeSweep best_chunk_size(const Scenario& scenario, double quad_tol = 1e-8) {
  const std::size_t n_packets = scenario.packet_count();
  std::vector<std::size_t> candidates;
  if ((n_packets & (n_packets - 1)) == 0) {
    for (std::size_t h = 1; h <= n_packets; h *= 2) candidates.push_back(h);
  } else {
    for (std::size_t h = 1; h <= n_packets; ++h)
      if (n_packets % h == 0) candidates.push_back(h);
  }
  ChunkSizeSweep sweep;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t h : candidates) {
    ChunkConfig config(n_packets / h, h);
    double t = chunked_analysis(scenario, config, quad_tol).server_time;
    sweep.table.emplace_back(h, t);
    if (t < best) {
      best = t;
      sweep.best_h = h;
    }
  }
  sweep.best_time = best;
  return sweep;
}

}  // namespace codecast
