#include <doctest.h>

#include "oracles.hpp"
#include "vforge/products.hpp"

using namespace vforge;

namespace {
const SpfSieve& shared_sieve() {
  static SpfSieve sieve(100000);
  return sieve;
}
}  // namespace

TEST_CASE("accumulator steps match the sample values") {
  const auto& sieve = shared_sieve();

  ProductAccumulator h(ProductKind::H);
  h.advance_to(3, sieve);
  CHECK(h.value().materialize() == 6);
  h.step(sieve);
  CHECK(h.value().materialize() == 12);  // h(4) = 2
  h.advance_to(6, sieve);
  CHECK(h.value().materialize() == 120);

  ProductAccumulator f(ProductKind::F);
  f.advance_to(2, sieve);
  CHECK(f.value().materialize() == 1);
  f.step(sieve);
  CHECK(f.value().materialize() == 3);
  f.step(sieve);
  CHECK(f.value().materialize() == 3);  // f(4) = 1
}

TEST_CASE("accumulator refuses to run past the sieve") {
  SpfSieve small(16);
  ProductAccumulator acc(ProductKind::F);
  acc.advance_to(16, small);
  CHECK_THROWS_AS(acc.step(small), std::out_of_range);
}

TEST_CASE("closed h-product at small n") {
  const auto& sieve = shared_sieve();
  CHECK(product_h_closed(4, sieve).materialize() == 12);   // 4!/2!
  CHECK(product_h_closed(6, sieve).materialize() == 120);  // 6!/3!
  CHECK(product_h_closed(1, sieve).is_one());
}

TEST_CASE("f-product is the odd part of the h-product") {
  const auto& sieve = shared_sieve();
  CHECK(product_f(4, sieve) == FactoredRational::prime_power(3, 1));
  CHECK(product_f(6, sieve) == FactoredRational::prime_power(3, 1) *
                                   FactoredRational::prime_power(5, 1));
  CHECK(product_f(1, sieve).is_one());
}

TEST_CASE("v2 of the h-product") {
  CHECK(v2_of_product_h(4) == 2);  // v2(12)
  CHECK(v2_of_product_h(1) == 0);
  for (std::uint64_t m = 0; m <= 16; ++m)
    CHECK(v2_of_product_h(std::uint64_t(1) << m) ==
          static_cast<std::int64_t>(m));
}

TEST_CASE("power-of-two bookkeeping balances against the f-product") {
  // The halving-weight sum over r <= n plus v2 of the h-product is zero:
  // the f-product is odd.
  std::int64_t running = 0;
  for (std::uint64_t n = 1; n <= 10000; ++n) {
    auto k = static_cast<std::int64_t>(v2(n));
    running += k * (k - 3) / 2;
    REQUIRE(running + v2_of_product_h(n) == 0);
  }
}

TEST_CASE("dual-path equality: incremental vs closed form") {
  const auto& sieve = shared_sieve();
  ProductAccumulator f(ProductKind::F);
  ProductAccumulator h(ProductKind::H);
  for (std::uint64_t n = 1; n <= 3000; ++n) {
    f.step(sieve);
    h.step(sieve);
    REQUIRE(f.value() == product_f(n, sieve));
    REQUIRE(h.value() == product_h_closed(n, sieve));
  }
}

TEST_CASE("closed f-product equals the naive product of f values") {
  const auto& sieve = shared_sieve();
  for (std::uint64_t n : {1ull, 2ull, 7ull, 12ull, 64ull, 100ull, 257ull})
    CHECK(product_f(n, sieve) == oracle::product_f_naive(n));
}

TEST_CASE("both products are integers") {
  const auto& sieve = shared_sieve();
  auto gen = oracle::rng(41);
  std::uniform_int_distribution<std::uint64_t> dist(1, 100000);
  for (int i = 0; i < 200; ++i) {
    std::uint64_t n = dist(gen);
    CHECK(product_h_closed(n, sieve).is_integer());
    CHECK(product_f(n, sieve).is_integer());
  }
}

TEST_CASE("floor halving sum is strictly below n") {
  for (std::uint64_t n = 1; n <= 100000; ++n)
    REQUIRE(floor_halving_sum(n) < n);
}

TEST_CASE("multinomial witness chain") {
  const auto& sieve = shared_sieve();

  // n=4: S=3, multinomial 3!/(2!*1!) = 3, quotient 12/3 = 4 = 4!/3!.
  auto m4 = multinomial_witness(4, sieve);
  CHECK(m4.materialize() == 3);
  CHECK((product_h_closed(4, sieve) / m4).materialize() == 4);

  CHECK(multinomial_witness(1, sieve).is_one());

  // n=6: S=4, multinomial 4!/(3!*1!) = 4, quotient 120/4 = 30 = 6!/4!.
  auto m6 = multinomial_witness(6, sieve);
  CHECK(m6.materialize() == 4);
  CHECK((product_h_closed(6, sieve) / m6).materialize() == 30);
}

TEST_CASE("multinomial witness divides the h-product for random n") {
  const auto& sieve = shared_sieve();
  auto gen = oracle::rng(42);
  std::uniform_int_distribution<std::uint64_t> dist(1, 50000);
  for (int i = 0; i < 100; ++i) {
    std::uint64_t n = dist(gen);
    auto witness = multinomial_witness(n, sieve);
    auto quotient = product_h_closed(n, sieve) / witness;
    CHECK(witness.is_integer());
    CHECK(quotient.is_integer());
    // quotient == n! / S!: check the p-adic valuation prime by prime
    std::uint64_t top = floor_halving_sum(n);
    for (const auto& [p, e] : quotient.exponents()) {
      CHECK(e == static_cast<std::int64_t>(factorial_vp(n, p)) -
                     static_cast<std::int64_t>(factorial_vp(top, p)));
    }
  }
}
