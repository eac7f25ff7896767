#include <doctest.h>

#include "oracles.hpp"
#include "vforge/functions.hpp"

using namespace vforge;

namespace {
const SpfSieve& shared_sieve() {
  static SpfSieve sieve(100000);
  return sieve;
}
}  // namespace

TEST_CASE("f at the published sample points") {
  const auto& sieve = shared_sieve();
  CHECK(f_value(1, sieve).is_one());
  CHECK(f_value(2, sieve).is_one());
  CHECK(f_value(3, sieve) == FactoredRational::prime_power(3, 1));
  CHECK(f_value(12, sieve) == FactoredRational::prime_power(3, -1));
  CHECK(f_value(40, sieve) == FactoredRational::prime_power(5, -2));
}

TEST_CASE("g on exact rationals") {
  CHECK(g_value(3, 2) == 1);
  CHECK(g_value(4, 2) == 2);
  CHECK(g_value(7, 1) == 7);
  CHECK(g_value(1, 8) == 1);
  CHECK_THROWS_AS(g_value(0, 2), std::domain_error);
  CHECK_THROWS_AS(g_value(2, 0), std::domain_error);
}

TEST_CASE("h by definition at small points") {
  const auto& sieve = shared_sieve();
  CHECK(h_definitional(2, sieve) == FactoredRational::prime_power(2, 1));
  CHECK(h_definitional(8, sieve).is_one());  // 8 / (4*2*1)
  CHECK(h_definitional(12, sieve) ==
        FactoredRational::prime_power(2, 1) *
            FactoredRational::prime_power(3, -1));  // 12 / (6*3)
  CHECK(h_definitional(1, sieve).is_one());
}

TEST_CASE("h closed form at small points") {
  const auto& sieve = shared_sieve();
  CHECK(h_closed(12, sieve) == FactoredRational::prime_power(2, 1) *
                                   FactoredRational::prime_power(3, -1));
  CHECK(h_closed(16, sieve) == FactoredRational::prime_power(2, -2));
  CHECK(h_definitional(16, sieve) ==
        FactoredRational::prime_power(2, -2));  // 16 / (8*4*2*1)
  CHECK(h_closed(1, sieve).is_one());
}

TEST_CASE("f recovered from definitional h") {
  const auto& sieve = shared_sieve();
  CHECK(f_from_h(2, sieve).is_one());
  CHECK(f_from_h(8, sieve).is_one());
  CHECK(f_from_h(12, sieve) == FactoredRational::prime_power(3, -1));
}

TEST_CASE("dual-path oracle: definitional h equals closed h to 1e5") {
  const auto& sieve = shared_sieve();
  for (std::uint64_t r = 1; r <= 100000; ++r)
    REQUIRE(h_definitional(r, sieve) == h_closed(r, sieve));
}

TEST_CASE("f_from_h equals f everywhere to 1e5") {
  const auto& sieve = shared_sieve();
  for (std::uint64_t r = 1; r <= 100000; ++r)
    REQUIRE(f_from_h(r, sieve) == f_value(r, sieve));
}

TEST_CASE("f matches the naive construction") {
  const auto& sieve = shared_sieve();
  auto gen = oracle::rng(31);
  std::uniform_int_distribution<std::uint64_t> dist(1, 100000);
  for (int i = 0; i < 300; ++i) {
    std::uint64_t r = dist(gen);
    CHECK(f_value(r, sieve) == oracle::f_naive(r));
  }
}

TEST_CASE("integrality characterization of f") {
  // f(r) is an integer iff v2(r) <= 1 or the odd part is 1.
  const auto& sieve = shared_sieve();
  for (std::uint64_t r = 1; r <= 20000; ++r) {
    auto [k, ell] = v2_split(r);
    bool expect = k <= 1 || ell == 1;
    REQUIRE(f_value(r, sieve).is_integer() == expect);
  }
}

TEST_CASE("odd parts of h and f agree") {
  const auto& sieve = shared_sieve();
  auto gen = oracle::rng(32);
  std::uniform_int_distribution<std::uint64_t> dist(1, 100000);
  for (int i = 0; i < 500; ++i) {
    std::uint64_t r = dist(gen);
    CHECK(h_closed(r, sieve).odd_part() == f_value(r, sieve).odd_part());
  }
}
