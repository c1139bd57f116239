#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "codecast/errors.hpp"

namespace codecast {

// All randomness in the library flows through the two primitives below so
// that encoders, channels and experiments can be reproduced bit-exactly from
// a single 64-bit master seed.
//
//   mix_seed(base, index)  -- the SplitMix64 output function evaluated at
//                             state base + (index + 1) * 0x9E3779B97F4A7C15.
//                             Used to derive independent sub-stream seeds
//                             (per packet, per user, per run).
//   Xorshift64Star         -- xorshift64* generator seeded with such a value;
//                             supplies uniform words, doubles and bounded ints.

inline constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ull;

inline std::uint64_t mix_seed(std::uint64_t base, std::uint64_t index) {
  std::uint64_t z = base + kGoldenGamma * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

/// Fixed sub-stream tags used when deriving seeds inside the simulator.
enum seed_domain : std::uint64_t {
  kSeedDomainEncoder = 0x45,
  kSeedDomainChannel = 0x43,
  kSeedDomainPayload = 0x50,
  kSeedDomainRun = 0x52,
};

inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t domain,
                                 std::uint64_t index) {
  return mix_seed(mix_seed(master, domain), index);
}

class Xorshift64Star {
 public:
  explicit Xorshift64Star(std::uint64_t seed)
      : state_(seed ? seed : kGoldenGamma) {}

  std::uint64_t next() {
    state_ ^= state_ >> 12;
    state_ ^= state_ << 25;
    state_ ^= state_ >> 27;
    return state_ * 0x2545F4914F6CDD1Dull;
  }

  /// Uniform double in [0, 1) with 53 bits of precision.
  double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, n), n > 0. Multiply-shift reduction.
  std::uint64_t next_below(std::uint64_t n) {
    return static_cast<std::uint64_t>(
        (static_cast<__uint128_t>(next()) * n) >> 64);
  }

  std::uint8_t next_byte() { return static_cast<std::uint8_t>(next_below(256)); }

 private:
  std::uint64_t state_;
};

/// Uniform k-subset of [0, n), returned sorted. Floyd's algorithm for small
/// k, partial Fisher-Yates once k exceeds n/2.
inline std::vector<std::uint32_t> sample_distinct_sorted(Xorshift64Star& rng,
                                                         std::size_t n,
                                                         std::size_t k) {
  if (k > n) throw usage_error("sample_distinct_sorted: k > n");
  std::vector<std::uint32_t> out;
  out.reserve(k);
  if (k == 0) return out;
  if (k <= n / 2) {
    for (std::size_t j = n - k; j < n; ++j) {
      auto t = static_cast<std::uint32_t>(rng.next_below(j + 1));
      auto it = std::lower_bound(out.begin(), out.end(), t);
      if (it != out.end() && *it == t) {
        auto jt = std::lower_bound(out.begin(), out.end(),
                                   static_cast<std::uint32_t>(j));
        out.insert(jt, static_cast<std::uint32_t>(j));
      } else {
        out.insert(it, t);
      }
    }
  } else {
    std::vector<std::uint32_t> all(n);
    for (std::size_t i = 0; i < n; ++i) all[i] = static_cast<std::uint32_t>(i);
    for (std::size_t i = 0; i < k; ++i) {
      std::size_t j = i + rng.next_below(n - i);
      std::swap(all[i], all[j]);
    }
    out.assign(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(k));
    std::sort(out.begin(), out.end());
  }
  return out;
}

}  // namespace codecast
