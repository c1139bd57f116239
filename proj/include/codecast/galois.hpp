#pragma once

#include <array>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "codecast/errors.hpp"

namespace codecast {

// ---------------------------------------------------------------------------
// GF(2): packed bit vectors used as binary coding vectors.
// ---------------------------------------------------------------------------

class BitVector {
 public:
  explicit BitVector(std::size_t length)
      : size_(length), words_((length + 63) / 64, 0) {}

  std::size_t size() const { return size_; }

  bool test(std::size_t i) const {
    return (words_[i >> 6] >> (i & 63)) & 1u;
  }

  void set(std::size_t i, bool value = true) {
    if (value)
      words_[i >> 6] |= std::uint64_t{1} << (i & 63);
    else
      words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63));
  }

  void xor_with(const BitVector& other) {
    if (other.size_ != size_)
      throw usage_error("BitVector: length mismatch in xor");
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] ^= other.words_[w];
  }

  bool none() const {
    for (auto w : words_)
      if (w) return false;
    return true;
  }

  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }

  /// Index of the lowest set bit, or -1 when the vector is zero.
  int lowest_set() const {
    for (std::size_t w = 0; w < words_.size(); ++w)
      if (words_[w])
        return static_cast<int>(w * 64 +
                                static_cast<std::size_t>(std::countr_zero(words_[w])));
    return -1;
  }

  bool operator==(const BitVector&) const = default;

 private:
  std::size_t size_;
  std::vector<std::uint64_t> words_;
};

/// dst ^= src for payload byte arrays; lengths must agree.
inline void xor_bytes(std::vector<std::uint8_t>& dst,
                      const std::vector<std::uint8_t>& src) {
  if (dst.size() != src.size())
    throw usage_error("xor_bytes: payload length mismatch");
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i] ^= src[i];
}

/// Componentwise xor of a coding vector and its payload into dst.
inline void gf2_xor_into(BitVector& dst_vec, std::vector<std::uint8_t>& dst_payload,
                         const BitVector& src_vec,
                         const std::vector<std::uint8_t>& src_payload) {
  dst_vec.xor_with(src_vec);
  xor_bytes(dst_payload, src_payload);
}

// ---------------------------------------------------------------------------
// GF(256) under the primitive polynomial x^8+x^4+x^3+x^2+1 (0x11D). The
// polynomial is fixed so coefficient streams reproduce bit-exactly.
// ---------------------------------------------------------------------------

namespace gf256 {

struct Tables {
  std::array<std::uint8_t, 512> exp{};
  std::array<std::uint8_t, 256> log{};
  // full 256x256 product table; one lookup per byte in elimination loops
  std::array<std::array<std::uint8_t, 256>, 256> mul{};
  std::array<std::uint8_t, 256> inv{};
};

inline const Tables& tables() {
  static const Tables t = [] {
    Tables tb;
    unsigned x = 1;
    for (unsigned i = 0; i < 255; ++i) {
      tb.exp[i] = static_cast<std::uint8_t>(x);
      tb.log[x] = static_cast<std::uint8_t>(i);
      x <<= 1;
      if (x & 0x100u) x ^= 0x11Du;
    }
    for (unsigned i = 255; i < 512; ++i) tb.exp[i] = tb.exp[i - 255];
    for (unsigned a = 0; a < 256; ++a)
      for (unsigned b = 0; b < 256; ++b)
        tb.mul[a][b] =
            (a && b) ? tb.exp[tb.log[a] + tb.log[b]] : std::uint8_t{0};
    for (unsigned a = 1; a < 256; ++a) tb.inv[a] = tb.exp[255 - tb.log[a]];
    return tb;
  }();
  return t;
}

inline std::uint8_t mul(std::uint8_t a, std::uint8_t b) {
  return tables().mul[a][b];
}

inline std::uint8_t inv(std::uint8_t a) {
  if (a == 0) throw domain_error("gf256: inverse of zero");
  return tables().inv[a];
}

/// dst ^= c * src, elementwise.
inline void mul_add(std::span<std::uint8_t> dst, std::span<const std::uint8_t> src,
                    std::uint8_t c) {
  if (c == 0) return;
  const auto& row = tables().mul[c];
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i] ^= row[src[i]];
}

/// dst *= c, elementwise.
inline void scale(std::span<std::uint8_t> dst, std::uint8_t c) {
  const auto& row = tables().mul[c];
  for (auto& v : dst) v = row[v];
}

}  // namespace gf256

// ---------------------------------------------------------------------------
// Incremental Gaussian elimination. Rows are kept in reduced row-echelon
// form so each ingested row costs O(width^2) worst case and the decodable
// set can be read off at any time: unknown j is solvable exactly when its
// pivot row has singleton support.
// ---------------------------------------------------------------------------

enum class RowOutcome { added, dependent, inconsistent };

class Gf2Eliminator {
 public:
  Gf2Eliminator(std::size_t width, std::size_t payload_bytes)
      : width_(width), payload_bytes_(payload_bytes), pivot_row_(width, -1) {}

  RowOutcome add_row(BitVector row, std::vector<std::uint8_t> payload) {
    if (row.size() != width_ || payload.size() != payload_bytes_)
      throw usage_error("Gf2Eliminator: row width or payload size mismatch");
    for (std::size_t c = 0; c < width_; ++c) {
      if (row.test(c) && pivot_row_[c] >= 0) {
        row.xor_with(rows_[static_cast<std::size_t>(pivot_row_[c])]);
        xor_bytes(payload, payloads_[static_cast<std::size_t>(pivot_row_[c])]);
      }
    }
    int lead = row.lowest_set();
    if (lead < 0) {
      for (auto b : payload)
        if (b) return RowOutcome::inconsistent;
      return RowOutcome::dependent;
    }
    // eliminate the new pivot from every stored row above it
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      if (rows_[r].test(static_cast<std::size_t>(lead))) {
        rows_[r].xor_with(row);
        xor_bytes(payloads_[r], payload);
      }
    }
    pivot_row_[static_cast<std::size_t>(lead)] = static_cast<int>(rows_.size());
    rows_.push_back(std::move(row));
    payloads_.push_back(std::move(payload));
    return RowOutcome::added;
  }

  std::size_t rank() const { return rows_.size(); }
  std::size_t width() const { return width_; }

  bool decodable(std::size_t j) const {
    int r = pivot_row_[j];
    return r >= 0 && rows_[static_cast<std::size_t>(r)].count() == 1;
  }

  const std::vector<std::uint8_t>* payload_of(std::size_t j) const {
    if (!decodable(j)) return nullptr;
    return &payloads_[static_cast<std::size_t>(pivot_row_[j])];
  }

 private:
  std::size_t width_;
  std::size_t payload_bytes_;
  std::vector<BitVector> rows_;
  std::vector<std::vector<std::uint8_t>> payloads_;
  std::vector<int> pivot_row_;
};

class Gf256Eliminator {
 public:
  Gf256Eliminator(std::size_t width, std::size_t payload_bytes)
      : width_(width), payload_bytes_(payload_bytes), pivot_row_(width, -1) {}

  RowOutcome add_row(std::vector<std::uint8_t> row,
                     std::vector<std::uint8_t> payload) {
    if (row.size() != width_ || payload.size() != payload_bytes_)
      throw usage_error("Gf256Eliminator: row width or payload size mismatch");
    for (std::size_t c = 0; c < width_; ++c) {
      if (row[c] && pivot_row_[c] >= 0) {
        auto r = static_cast<std::size_t>(pivot_row_[c]);
        std::uint8_t coef = row[c];
        gf256::mul_add(row, rows_[r], coef);
        gf256::mul_add(payload, payloads_[r], coef);
      }
    }
    std::size_t lead = width_;
    for (std::size_t c = 0; c < width_; ++c)
      if (row[c]) {
        lead = c;
        break;
      }
    if (lead == width_) {
      for (auto b : payload)
        if (b) return RowOutcome::inconsistent;
      return RowOutcome::dependent;
    }
    std::uint8_t scale = gf256::inv(row[lead]);
    gf256::scale(row, scale);
    gf256::scale(payload, scale);
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      if (rows_[r][lead]) {
        std::uint8_t coef = rows_[r][lead];
        gf256::mul_add(rows_[r], row, coef);
        gf256::mul_add(payloads_[r], payload, coef);
      }
    }
    pivot_row_[lead] = static_cast<int>(rows_.size());
    rows_.push_back(std::move(row));
    payloads_.push_back(std::move(payload));
    return RowOutcome::added;
  }

  std::size_t rank() const { return rows_.size(); }
  std::size_t width() const { return width_; }

  bool decodable(std::size_t j) const {
    int r = pivot_row_[j];
    if (r < 0) return false;
    const auto& row = rows_[static_cast<std::size_t>(r)];
    for (std::size_t c = 0; c < width_; ++c)
      if (row[c] && c != j) return false;
    return true;
  }

  const std::vector<std::uint8_t>* payload_of(std::size_t j) const {
    if (!decodable(j)) return nullptr;
    return &payloads_[static_cast<std::size_t>(pivot_row_[j])];
  }

 private:
  std::size_t width_;
  std::size_t payload_bytes_;
  std::vector<std::vector<std::uint8_t>> rows_;
  std::vector<std::vector<std::uint8_t>> payloads_;
  std::vector<int> pivot_row_;
};

struct GeSolveResult {
  std::size_t rank = 0;
  std::vector<bool> decodable;
  // payloads[j] is meaningful only where decodable[j] is set
  std::vector<std::vector<std::uint8_t>> payloads;
};

template <class Eliminator, class Row>
GeSolveResult ge_solve_impl(std::size_t width, std::size_t payload_bytes,
                            const std::vector<std::pair<Row, std::vector<std::uint8_t>>>& rows) {
  Eliminator elim(width, payload_bytes);
  for (const auto& [row, payload] : rows) elim.add_row(row, payload);
  GeSolveResult res;
  res.rank = elim.rank();
  res.decodable.resize(width, false);
  res.payloads.resize(width);
  for (std::size_t j = 0; j < width; ++j) {
    if (const auto* p = elim.payload_of(j)) {
      res.decodable[j] = true;
      res.payloads[j] = *p;
    }
  }
  return res;
}

/// Solve a GF(2) system given (coding vector, payload) rows.
inline GeSolveResult ge_solve(
    std::size_t width, std::size_t payload_bytes,
    const std::vector<std::pair<BitVector, std::vector<std::uint8_t>>>& rows) {
  return ge_solve_impl<Gf2Eliminator, BitVector>(width, payload_bytes, rows);
}

/// Solve a GF(256) system given (coefficient row, payload) rows.
inline GeSolveResult ge_solve(
    std::size_t width, std::size_t payload_bytes,
    const std::vector<std::pair<std::vector<std::uint8_t>, std::vector<std::uint8_t>>>& rows) {
  return ge_solve_impl<Gf256Eliminator, std::vector<std::uint8_t>>(width, payload_bytes,
                                                                   rows);
}

}  // namespace codecast
