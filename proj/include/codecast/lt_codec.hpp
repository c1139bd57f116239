#pragma once

#include <cstdint>
#include <deque>
#include <vector>

#include "codecast/degree_distribution.hpp"
#include "codecast/errors.hpp"
#include "codecast/galois.hpp"
#include "codecast/packet.hpp"
#include "codecast/rng.hpp"

namespace codecast {

// LT encoding and belief-propagation (peeling) decoding. Every packet is
// reproducible from a 64-bit seed: packet t of a stream uses
// mix_seed(master_seed, t), the degree is drawn from a generator seeded with
// mix_seed(packet_seed, 0), and the index set from a generator seeded with
// mix_seed(packet_seed, degree). Receivers therefore regenerate the coding
// vector from the (seed, degree) pair on the wire without knowing the
// degree distribution.

/// The `degree`-element index subset encoded by `seed` for a block of n
/// packets. Deterministic in (seed, degree, n) and uniform over all
/// C(n, degree) subsets.
inline std::vector<std::uint32_t> expand_coding_vector(std::uint64_t seed,
                                                       std::size_t degree,
                                                       std::size_t n) {
  if (degree < 1 || degree > n)
    throw usage_error("expand_coding_vector: degree out of range");
  Xorshift64Star rng(mix_seed(seed, degree));
  return sample_distinct_sorted(rng, n, degree);
}

/// Inverse-CDF sample of a degree; advances the generator by one draw.
inline std::size_t sample_degree(const DegreeDistribution& dist,
                                 Xorshift64Star& rng) {
  double u = rng.next_unit();
  double acc = 0.0;
  const auto& probs = dist.probs();
  for (std::size_t j = 0; j < probs.size(); ++j) {
    acc += probs[j];
    if (u < acc) return j + 1;
  }
  return probs.size();
}

struct EncoderConfig {
  std::size_t packet_count = 0;  ///< N
  DegreeDistribution dist = DegreeDistribution::point_mass(1);
  std::uint64_t master_seed = 0;
  bool systematic = false;
};

/// Packet for transmission index t. In systematic mode the first N
/// transmissions are the originals in order; afterwards (and always in
/// nonsystematic mode) a coded packet is produced: degree sampled from the
/// configured distribution, payload the xor of the selected originals.
inline CodedPacket lt_encode_next(const EncoderConfig& config,
                                  const std::vector<std::vector<std::uint8_t>>& payloads,
                                  std::uint64_t t) {
  const std::size_t n = config.packet_count;
  if (payloads.size() != n)
    throw usage_error("lt_encode_next: payload count differs from N");
  if (config.dist.max_degree() > n)
    throw usage_error("lt_encode_next: distribution degree exceeds N");
  if (config.systematic && t < n)
    return CodedPacket::make_systematic(t, payloads[static_cast<std::size_t>(t)]);
  const std::uint64_t seed = mix_seed(config.master_seed, t);
  Xorshift64Star degree_rng(mix_seed(seed, 0));
  const std::size_t degree = sample_degree(config.dist, degree_rng);
  auto indices = expand_coding_vector(seed, degree, n);
  std::vector<std::uint8_t> payload(payloads[indices[0]]);
  for (std::size_t i = 1; i < indices.size(); ++i)
    xor_bytes(payload, payloads[indices[i]]);
  return CodedPacket::make_lt(seed, static_cast<std::uint16_t>(degree),
                              std::move(payload));
}

/// Peeling decoder. Pending coded packets are stored as equations over the
/// undecoded originals; once an equation drops to a single unknown it joins
/// the ripple, decodes that original, and substitutes it into every equation
/// it appears in (FIFO order, so decode trajectories are deterministic).
class BpDecoder {
 public:
  explicit BpDecoder(std::size_t packet_count)
      : n_(packet_count),
        decoded_(packet_count, false),
        values_(packet_count),
        adjacency_(packet_count) {}

  std::size_t decoded_count() const { return decoded_count_; }
  bool is_decoded(std::size_t i) const { return decoded_.at(i); }

  const std::vector<std::uint8_t>& payload(std::size_t i) const {
    if (!is_decoded(i)) throw usage_error("BpDecoder: packet not decoded");
    return values_[i];
  }

  /// Feed one received packet; returns how many originals became decoded.
  std::size_t ingest(const CodedPacket& packet) {
    switch (packet.kind) {
      case CodedPacket::Kind::systematic:
        if (packet.id >= n_) throw usage_error("BpDecoder: index out of range");
        return ingest_equation({static_cast<std::uint32_t>(packet.id)},
                               packet.payload);
      case CodedPacket::Kind::lt:
        return ingest_equation(
            expand_coding_vector(packet.id, packet.degree, n_), packet.payload);
      default:
        throw usage_error("BpDecoder: not an LT or systematic packet");
    }
  }

  /// Feed an explicit equation xor(originals[indices]) = payload.
  std::size_t ingest_equation(std::vector<std::uint32_t> indices,
                              std::vector<std::uint8_t> payload) {
    for (auto i : indices)
      if (i >= n_) throw usage_error("BpDecoder: index out of range");
    // substitute already-decoded originals
    std::vector<std::uint32_t> remaining;
    remaining.reserve(indices.size());
    for (auto i : indices) {
      if (decoded_[i])
        xor_bytes(payload, values_[i]);
      else
        remaining.push_back(i);
    }
    std::size_t before = decoded_count_;
    if (remaining.empty()) {
      for (auto b : payload)
        if (b) throw stream_error("BpDecoder: redundant packet disagrees with decoded data");
      return 0;
    }
    if (remaining.size() == 1) {
      decode(remaining[0], std::move(payload));
      drain_ripple();
      return decoded_count_ - before;
    }
    auto eq = static_cast<std::uint32_t>(equations_.size());
    for (auto i : remaining) adjacency_[i].push_back(eq);
    equations_.push_back(Equation{std::move(remaining), std::move(payload)});
    return 0;
  }

 private:
  struct Equation {
    std::vector<std::uint32_t> indices;  // empty means retired
    std::vector<std::uint8_t> payload;
  };

  void decode(std::uint32_t index, std::vector<std::uint8_t> value) {
    decoded_[index] = true;
    values_[index] = std::move(value);
    ++decoded_count_;
    ripple_.push_back(index);
  }

  void drain_ripple() {
    while (!ripple_.empty()) {
      std::uint32_t index = ripple_.front();
      ripple_.pop_front();
      for (auto eq_id : adjacency_[index]) {
        Equation& eq = equations_[eq_id];
        if (eq.indices.empty()) continue;
        bool contains = false;
        for (std::size_t k = 0; k < eq.indices.size(); ++k) {
          if (eq.indices[k] == index) {
            eq.indices.erase(eq.indices.begin() + static_cast<std::ptrdiff_t>(k));
            contains = true;
            break;
          }
        }
        if (!contains) continue;
        xor_bytes(eq.payload, values_[index]);
        if (eq.indices.size() == 1) {
          std::uint32_t last = eq.indices[0];
          if (!decoded_[last]) {
            decode(last, std::move(eq.payload));
          } else if (eq.payload != values_[last]) {
            throw stream_error("BpDecoder: inconsistent equation for decoded packet");
          }
          eq.indices.clear();
          eq.payload.clear();
        }
      }
      adjacency_[index].clear();
    }
  }

  std::size_t n_;
  std::vector<bool> decoded_;
  std::vector<std::vector<std::uint8_t>> values_;
  std::vector<std::vector<std::uint32_t>> adjacency_;
  std::vector<Equation> equations_;
  std::deque<std::uint32_t> ripple_;
  std::size_t decoded_count_ = 0;
};

}  // namespace codecast
