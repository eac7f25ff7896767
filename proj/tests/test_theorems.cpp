#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "vforge/theorems.hpp"

using namespace vforge;

namespace {
const SpfSieve& shared_sieve() {
  static SpfSieve sieve(100000);
  return sieve;
}
const ConstantC& shared_c() {
  static ConstantC c = constant_c(shared_sieve());
  return c;
}
}  // namespace

TEST_CASE("thm1 checker") {
  const auto& sieve = shared_sieve();
  auto v = check_thm1(4, sieve);
  CHECK(v.passed);
  CHECK(product_f(4, sieve).materialize() == 3);
  CHECK(check_thm1(1, sieve).passed);
  CHECK(check_thm1(12, sieve).passed);  // integer despite f(12) = 1/3
  CHECK(check_thm1(12, sieve).margin_lo >= 1.0);
}

TEST_CASE("thm2 checker") {
  const auto& sieve = shared_sieve();
  auto v = check_thm2(6, sieve);
  CHECK(v.passed);
  CHECK(v.margin_lo == 0.0);  // slack 0 at p=3 and p=5: product is 15
  CHECK(product_f(6, sieve).materialize() == 15);

  CHECK(check_thm2(1, sieve).passed);  // vacuous

  auto v10 = check_thm2(10, sieve);
  CHECK(v10.passed);
  CHECK(product_h_exponent(10, 3) >= 2);  // alpha_3(10) = 2
  // independent route: vp of the brute-force product
  auto pf10 = oracle::product_f_naive(10);
  CHECK(pf10.exponent_of(3) >= 2);
}

TEST_CASE("thm2 slack at primes in (n/2, n] is vp - 1") {
  const auto& sieve = shared_sieve();
  auto gen = oracle::rng(51);
  std::uniform_int_distribution<std::uint64_t> dist(10, 20000);
  for (int i = 0; i < 100; ++i) {
    std::uint64_t n = dist(gen);
    for (std::uint32_t p : sieve.primes()) {
      if (p <= n / 2 || p > n) continue;
      if (p == 2) continue;
      REQUIRE(lcm_vp(n, p) == 1);
      REQUIRE(product_h_exponent(n, p) - 1 >= 0);
    }
  }
}

TEST_CASE("the constant c") {
  const auto& c = shared_c();
  CHECK(c.base_n == 1023);
  CHECK(c.exact_rep == product_h_closed(1023, shared_sieve()));
  CHECK(c.log2_c.width() < 1e-9);
  // frozen reference: c = 4.0105548709461130266...
  CHECK(c.decimal_lo(13) <= std::string("4.0105548709461"));
  CHECK(c.decimal_hi(13) >= std::string("4.0105548709461"));
  CHECK(c.decimal_lo(8).substr(0, 10) == "4.01055487");
}

TEST_CASE("thm3 checker: tie at 1023, strict small cases") {
  const auto& sieve = shared_sieve();
  const auto& c = shared_c();

  auto tie = check_thm3(1023, c, sieve);
  CHECK(tie.passed);
  CHECK(tie.tie);

  auto v1 = check_thm3(1, c, sieve);
  CHECK(v1.passed);
  CHECK_FALSE(v1.tie);

  auto v4 = check_thm3(4, c, sieve);
  CHECK(v4.passed);
  // margin = 4 log2 c - log2 12, about 4.43 bits
  CHECK(v4.margin_lo > 4.4);
  CHECK(v4.margin_hi < 4.5);
}

TEST_CASE("cross-power decision agrees with a conclusive interval test") {
  const auto& sieve = shared_sieve();
  const auto& c = shared_c();
  auto gen = oracle::rng(52);
  std::uniform_int_distribution<std::uint64_t> dist(1, 4000);
  for (int i = 0; i < 40; ++i) {
    std::uint64_t n = dist(gen);
    auto prod = product_h_closed(n, sieve);
    Log2Sum acc;
    for (const auto& [p, e] : prod.exponents())
      acc.add(prime_log2_fixed(p), e);
    Order exact = compare_exact(prod.pow(1023), c.exact_rep.pow(
                                    static_cast<std::int64_t>(n)));
    Order decided = compare_with_c_power(prod, acc, n, c);
    CHECK(decided == exact);
  }
}

TEST_CASE("eq9 checker") {
  const auto& sieve = shared_sieve();
  auto v1 = check_eq9(1, sieve);
  CHECK(v1.passed);
  CHECK(v1.margin_lo > 1.99);  // 0 <= 0 + 2
  auto v4 = check_eq9(4, sieve);
  CHECK(v4.passed);  // log2 12 = 3.585 <= 4 + 8
  CHECK(v4.margin_lo > 8.4);
  CHECK(v4.margin_hi < 8.42);
  CHECK(check_eq9(1023, sieve).passed);
}

TEST_CASE("cor1 checker") {
  const auto& sieve = shared_sieve();
  const auto& c = shared_c();
  CHECK(check_cor1(4, c, sieve).passed);
  CHECK(check_cor1(1, c, sieve).passed);
  auto v6 = check_cor1(6, c, sieve);
  CHECK(v6.passed);
  CHECK(product_f(6, sieve).materialize() == 15);
  CHECK(product_h_closed(6, sieve).materialize() == 120);
}

TEST_CASE("thm4 checker at the worked examples") {
  auto v = check_thm4(9, 3);
  CHECK(v.passed);
  CHECK(v.margin_lo == 1.0);  // lhs 1, rhs 2

  v = check_thm4(2, 3);
  CHECK(v.passed);
  CHECK(v.margin_lo == 0.0);  // no multiples of 3 at all

  v = check_thm4(12, 3);
  CHECK(v.passed);
  CHECK(v.margin_lo == 0.0);  // lhs 3, rhs 5 - 2

  CHECK_THROWS_AS(check_thm4(10, 2), std::domain_error);
  CHECK_THROWS_AS(check_thm4(10, 9), std::domain_error);
}

TEST_CASE("thm4 against direct brute-force sums") {
  auto gen = oracle::rng(53);
  std::uniform_int_distribution<std::uint64_t> ndist(1, 3000);
  const std::uint64_t primes[] = {3, 5, 7, 11, 13, 101};
  for (int i = 0; i < 60; ++i) {
    std::uint64_t n = ndist(gen);
    for (std::uint64_t p : primes) {
      std::int64_t lhs = 0, vpsum = 0;
      for (std::uint64_t r = 1; r <= n; ++r) {
        auto a = static_cast<std::int64_t>(oracle::vp_naive(r, p));
        lhs += static_cast<std::int64_t>(oracle::vp_naive(r, 2)) * a;
        vpsum += a;
      }
      auto v = check_thm4(n, p);
      REQUIRE(v.passed);
      std::int64_t alpha = 0;
      for (unsigned __int128 pw = p; pw <= n; pw *= p) ++alpha;
      REQUIRE(v.margin_lo == static_cast<double>(vpsum - alpha - lhs));
    }
  }
}

TEST_CASE("thm5 checker") {
  auto v = check_thm5(6);
  CHECK(v.passed);  // both sides 3
  CHECK(binary_digits(6).weighted_sum() == 3);
  for (std::uint64_t m = 0; m <= 16; ++m) {
    auto vm = check_thm5(std::uint64_t(1) << m);
    CHECK(vm.passed);
    CHECK(binary_digits(std::uint64_t(1) << m).weighted_sum() == m);
  }
  CHECK(check_thm5(1).passed);  // 0 == 0, empty sums
}

TEST_CASE("halving weights are even before division") {
  for (std::uint64_t r = 1; r <= 100000; ++r) {
    auto k = static_cast<std::int64_t>(v2(r));
    REQUIRE(k * (3 - k) % 2 == 0);
  }
}
