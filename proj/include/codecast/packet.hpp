#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "codecast/errors.hpp"

namespace codecast {

/// One transmitted unit. Wire layout (little-endian):
///
///   byte 0      kind (0 systematic, 1 lt, 2 chunked)
///   bytes 1-8   id: original index (systematic), prng seed (lt),
///               or chunk id (chunked)
///   bytes 9-10  degree: xor degree (lt), 1 (systematic),
///               or coefficient row width h (chunked)
///   then        chunked only: h coefficient bytes
///   then        payload bytes (rest of the buffer)
///
/// LT packets carry (seed, degree) instead of the N-bit coding vector; the
/// receiver regenerates the index set locally.
struct CodedPacket {
  enum class Kind : std::uint8_t { systematic = 0, lt = 1, chunked = 2 };

  Kind kind = Kind::systematic;
  std::uint64_t id = 0;
  std::uint16_t degree = 1;
  std::vector<std::uint8_t> coefficients;  // chunked only
  std::vector<std::uint8_t> payload;

  static CodedPacket make_systematic(std::uint64_t index,
                                     std::vector<std::uint8_t> payload) {
    CodedPacket p;
    p.kind = Kind::systematic;
    p.id = index;
    p.degree = 1;
    p.payload = std::move(payload);
    return p;
  }

  static CodedPacket make_lt(std::uint64_t seed, std::uint16_t degree,
                             std::vector<std::uint8_t> payload) {
    if (degree == 0) throw usage_error("CodedPacket: lt degree must be >= 1");
    CodedPacket p;
    p.kind = Kind::lt;
    p.id = seed;
    p.degree = degree;
    p.payload = std::move(payload);
    return p;
  }

  static CodedPacket make_chunked(std::uint64_t chunk_id,
                                  std::vector<std::uint8_t> coefficients,
                                  std::vector<std::uint8_t> payload) {
    if (coefficients.empty())
      throw usage_error("CodedPacket: chunked packet needs a coefficient row");
    CodedPacket p;
    p.kind = Kind::chunked;
    p.id = chunk_id;
    p.degree = static_cast<std::uint16_t>(coefficients.size());
    p.coefficients = std::move(coefficients);
    p.payload = std::move(payload);
    return p;
  }

  std::vector<std::uint8_t> serialize() const {
    std::vector<std::uint8_t> out;
    out.reserve(11 + coefficients.size() + payload.size());
    out.push_back(static_cast<std::uint8_t>(kind));
    for (int i = 0; i < 8; ++i)
      out.push_back(static_cast<std::uint8_t>(id >> (8 * i)));
    out.push_back(static_cast<std::uint8_t>(degree & 0xFF));
    out.push_back(static_cast<std::uint8_t>(degree >> 8));
    out.insert(out.end(), coefficients.begin(), coefficients.end());
    out.insert(out.end(), payload.begin(), payload.end());
    return out;
  }

  static CodedPacket deserialize(std::span<const std::uint8_t> bytes) {
    if (bytes.size() < 11) throw parse_error("CodedPacket: truncated header");
    CodedPacket p;
    auto k = bytes[0];
    if (k > 2) throw parse_error("CodedPacket: unknown kind tag");
    p.kind = static_cast<Kind>(k);
    p.id = 0;
    for (int i = 0; i < 8; ++i)
      p.id |= static_cast<std::uint64_t>(bytes[static_cast<std::size_t>(1 + i)]) << (8 * i);
    p.degree = static_cast<std::uint16_t>(bytes[9] | (bytes[10] << 8));
    std::size_t offset = 11;
    if (p.kind == Kind::chunked) {
      if (bytes.size() < offset + p.degree)
        throw parse_error("CodedPacket: truncated coefficient row");
      p.coefficients.assign(bytes.begin() + static_cast<std::ptrdiff_t>(offset),
                            bytes.begin() + static_cast<std::ptrdiff_t>(offset + p.degree));
      offset += p.degree;
    } else if (p.degree == 0) {
      throw parse_error("CodedPacket: zero degree");
    }
    p.payload.assign(bytes.begin() + static_cast<std::ptrdiff_t>(offset), bytes.end());
    return p;
  }
};

}  // namespace codecast
