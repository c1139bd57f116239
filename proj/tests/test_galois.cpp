#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "codecast/galois.hpp"
#include "codecast/rng.hpp"

using namespace codecast;

namespace {

std::vector<std::uint8_t> bytes(std::initializer_list<int> vals) {
  std::vector<std::uint8_t> out;
  for (int v : vals) out.push_back(static_cast<std::uint8_t>(v));
  return out;
}

BitVector bits(std::size_t n, std::initializer_list<int> set_positions) {
  BitVector v(n);
  for (int p : set_positions) v.set(static_cast<std::size_t>(p));
  return v;
}

}  // namespace

TEST_SUITE("galois") {

TEST_CASE("gf256 multiplicative identity and forced reduction") {
  for (unsigned a = 0; a < 256; ++a)
    CHECK(gf256::mul(static_cast<std::uint8_t>(a), 0x01) == a);
  // 0x80 * x wraps through the 0x11D reduction
  CHECK(gf256::mul(0x02, 0x80) == 0x1D);
  CHECK(gf256::mul(0x00, 0x37) == 0x00);
}

TEST_CASE("gf256 inverse holds for all 255 nonzero elements") {
  for (unsigned a = 1; a < 256; ++a) {
    auto inv = gf256::inv(static_cast<std::uint8_t>(a));
    CHECK(gf256::mul(static_cast<std::uint8_t>(a), inv) == 0x01);
  }
  CHECK_THROWS_AS(gf256::inv(0), domain_error);
}

TEST_CASE("gf256 field axioms on sampled triples") {
  Xorshift64Star rng(7);
  for (int trial = 0; trial < 2000; ++trial) {
    auto a = rng.next_byte(), b = rng.next_byte(), c = rng.next_byte();
    CHECK(gf256::mul(a, b) == gf256::mul(b, a));
    CHECK(gf256::mul(gf256::mul(a, b), c) == gf256::mul(a, gf256::mul(b, c)));
    auto lhs = gf256::mul(a, static_cast<std::uint8_t>(b ^ c));
    auto rhs = static_cast<std::uint8_t>(gf256::mul(a, b) ^ gf256::mul(a, c));
    CHECK(lhs == rhs);
  }
}

TEST_CASE("xor of coding vectors and payloads") {
  auto x_vec = bits(8, {1, 3});
  auto x_pay = bytes({0xAA, 0x55});
  auto y_vec = bits(8, {3, 5});
  auto y_pay = bytes({0x0F, 0xF0});

  SUBCASE("self-inverse") {
    auto v = x_vec;
    auto p = x_pay;
    gf2_xor_into(v, p, x_vec, x_pay);
    CHECK(v.none());
    CHECK(p == bytes({0, 0}));
  }
  SUBCASE("identity") {
    auto v = x_vec;
    auto p = x_pay;
    BitVector zero(8);
    gf2_xor_into(v, p, zero, bytes({0, 0}));
    CHECK(v == x_vec);
    CHECK(p == x_pay);
  }
  SUBCASE("involution") {
    auto v = x_vec;
    auto p = x_pay;
    gf2_xor_into(v, p, y_vec, y_pay);
    gf2_xor_into(v, p, y_vec, y_pay);
    CHECK(v == x_vec);
    CHECK(p == x_pay);
  }
  SUBCASE("length mismatch rejected") {
    BitVector v(4);
    auto p = x_pay;
    CHECK_THROWS_AS(v.xor_with(x_vec), usage_error);
    std::vector<std::uint8_t> short_pay(1);
    CHECK_THROWS_AS(xor_bytes(short_pay, x_pay), usage_error);
  }
}

TEST_CASE("ge_solve identity system decodes both unknowns") {
  std::vector<std::pair<BitVector, std::vector<std::uint8_t>>> rows;
  rows.emplace_back(bits(2, {0}), bytes({1}));
  rows.emplace_back(bits(2, {1}), bytes({2}));
  auto res = ge_solve(2, 1, rows);
  CHECK(res.rank == 2);
  CHECK(res.decodable[0]);
  CHECK(res.decodable[1]);
  CHECK(res.payloads[0] == bytes({1}));
  CHECK(res.payloads[1] == bytes({2}));
}

TEST_CASE("ge_solve single mixed row decodes nothing") {
  std::vector<std::pair<BitVector, std::vector<std::uint8_t>>> rows;
  rows.emplace_back(bits(2, {0, 1}), bytes({3}));
  auto res = ge_solve(2, 1, rows);
  CHECK(res.rank == 1);
  CHECK_FALSE(res.decodable[0]);
  CHECK_FALSE(res.decodable[1]);
}

TEST_CASE("ge_solve empty input decodes nothing") {
  std::vector<std::pair<BitVector, std::vector<std::uint8_t>>> rows;
  auto res = ge_solve(4, 1, rows);
  CHECK(res.rank == 0);
  for (bool d : res.decodable) CHECK_FALSE(d);
}

TEST_CASE("ge_solve full-rank gf256 system recovers forward-encoded payloads") {
  Xorshift64Star rng(42);
  const std::size_t w = 8, b = 5;
  std::vector<std::vector<std::uint8_t>> truth(w, std::vector<std::uint8_t>(b));
  for (auto& p : truth)
    for (auto& v : p) v = rng.next_byte();
  std::vector<std::pair<std::vector<std::uint8_t>, std::vector<std::uint8_t>>> rows;
  Gf256Eliminator probe(w, b);
  while (probe.rank() < w) {
    std::vector<std::uint8_t> coeff(w);
    for (auto& c : coeff) c = rng.next_byte();
    std::vector<std::uint8_t> payload(b, 0);
    for (std::size_t j = 0; j < w; ++j) gf256::mul_add(payload, truth[j], coeff[j]);
    probe.add_row(coeff, payload);
    rows.emplace_back(std::move(coeff), std::move(payload));
  }
  auto res = ge_solve(w, b, rows);
  CHECK(res.rank == w);
  for (std::size_t j = 0; j < w; ++j) {
    CHECK(res.decodable[j]);
    CHECK(res.payloads[j] == truth[j]);
  }
}

TEST_CASE("decodable set grows monotonically and rank stays bounded") {
  Xorshift64Star rng(3);
  const std::size_t w = 10;
  for (int session = 0; session < 50; ++session) {
    Gf2Eliminator elim(w, 1);
    std::vector<bool> seen(w, false);
    std::size_t added = 0;
    for (int step = 0; step < 30; ++step) {
      BitVector row(w);
      for (std::size_t j = 0; j < w; ++j)
        if (rng.next_unit() < 0.3) row.set(j);
      std::vector<std::uint8_t> payload(1, 0);  // zero content keeps rows consistent
      if (elim.add_row(row, payload) == RowOutcome::added) ++added;
      CHECK(elim.rank() == added);
      CHECK(elim.rank() <= w);
      for (std::size_t j = 0; j < w; ++j) {
        if (seen[j]) CHECK(elim.decodable(j));
        if (elim.decodable(j)) seen[j] = true;
      }
    }
  }
}

TEST_CASE("inconsistent dependent row is reported") {
  Gf2Eliminator elim(2, 1);
  CHECK(elim.add_row(bits(2, {0, 1}), bytes({5})) == RowOutcome::added);
  CHECK(elim.add_row(bits(2, {0, 1}), bytes({5})) == RowOutcome::dependent);
  CHECK(elim.add_row(bits(2, {0, 1}), bytes({6})) == RowOutcome::inconsistent);
}

}  // TEST_SUITE
