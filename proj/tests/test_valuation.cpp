#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "vforge/valuation.hpp"

using namespace vforge;

TEST_CASE("v2_split") {
  auto s = v2_split(40);
  CHECK(s.k == 3);
  CHECK(s.ell == 5);
  s = v2_split(1);
  CHECK(s.k == 0);
  CHECK(s.ell == 1);
  s = v2_split(12);
  CHECK(s.k == 2);
  CHECK(s.ell == 3);
  CHECK_THROWS_AS(v2_split(0), std::domain_error);
}

TEST_CASE("vp") {
  CHECK(vp(9, 3) == 2);
  CHECK(vp(10, 3) == 0);
  CHECK(vp(40, 2) == 3);
  CHECK_THROWS_AS(vp(10, 4), std::domain_error);
  CHECK_THROWS_AS(vp(0, 3), std::domain_error);
}

TEST_CASE("factorial_vp basics") {
  CHECK(factorial_vp(10, 2) == 8);
  CHECK(factorial_vp(0, 3) == 0);
  CHECK(factorial_vp(9, 3) == 4);
}

TEST_CASE("factorial_vp equals the definitional sum of vp(i)") {
  // v_p(n!) = sum of vp(i) for i <= n, accumulated directly.
  for (std::uint64_t p : {2, 3, 5, 7, 11, 13, 97}) {
    std::uint64_t running = 0;
    for (std::uint64_t n = 1; n <= 10000; ++n) {
      running += oracle::vp_naive(n, p);
      REQUIRE(factorial_vp(n, p) == running);
    }
  }
}

TEST_CASE("factorial_vp against the exact factorial") {
  for (std::uint64_t n : {0ull, 1ull, 2ull, 17ull, 100ull, 199ull, 1023ull,
                          1024ull, 5000ull, 10000ull}) {
    for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 97ull}) {
      CHECK(factorial_vp(n, p) == oracle::factorial_vp_exact(n, p));
    }
  }
}

TEST_CASE("lcm_vp examples and bracketing property") {
  CHECK(lcm_vp(10, 3) == 2);
  CHECK(lcm_vp(1, 3) == 0);
  CHECK(lcm_vp(1023, 2) == 9);

  auto gen = oracle::rng(21);
  std::uniform_int_distribution<std::uint64_t> ndist(1, 2000000);
  const std::uint64_t primes[] = {2, 3, 5, 7, 11, 31, 97, 101, 65537};
  for (int i = 0; i < 500; ++i) {
    std::uint64_t n = ndist(gen);
    for (std::uint64_t p : primes) {
      std::uint64_t a = lcm_vp(n, p);
      // p^a <= n < p^(a+1), checked in exact integer arithmetic
      unsigned __int128 power = 1;
      for (std::uint64_t j = 0; j < a; ++j) power *= p;
      CHECK(power <= n);
      CHECK(power * p > n);
    }
  }
}

TEST_CASE("lcm_vp never misclassifies exact powers") {
  for (std::uint64_t p : {2ull, 3ull, 10007ull}) {
    unsigned __int128 power = p;
    for (std::uint64_t e = 1; power <= (unsigned __int128)1 << 62; ++e, power *= p) {
      auto n = static_cast<std::uint64_t>(power);
      CHECK(lcm_vp(n, p) == e);
      CHECK(lcm_vp(n - 1, p) == e - 1);
      CHECK(lcm_vp(n + 1, p) == e);
    }
  }
}

TEST_CASE("floor composition law") {
  auto gen = oracle::rng(22);
  std::uniform_int_distribution<std::uint64_t> xdist(0, ~0ull >> 1);
  std::uniform_int_distribution<std::uint64_t> abdist(1, 1 << 20);
  for (int i = 0; i < 2000; ++i) {
    std::uint64_t x = xdist(gen), a = abdist(gen), b = abdist(gen);
    CHECK((x / a) / b == x / (static_cast<unsigned __int128>(a) * b));
  }
}

TEST_CASE("binary digits") {
  auto d = binary_digits(6);
  CHECK(d.bits == std::vector<std::uint8_t>{0, 1, 1});
  d = binary_digits(1023);
  CHECK(d.bits.size() == 10);
  for (auto b : d.bits) CHECK(b == 1);
  d = binary_digits(1);
  CHECK(d.bits == std::vector<std::uint8_t>{1});
  CHECK(d.top_index() == 0);
  CHECK_THROWS_AS(binary_digits(0), std::domain_error);
}

TEST_CASE("binary digits invert for all n up to 1e5") {
  for (std::uint64_t n = 1; n <= 100000; ++n) {
    auto d = binary_digits(n);
    REQUIRE(d.value() == n);
    REQUIRE(d.bits.back() == 1);
  }
}

TEST_CASE("sieve factorizations") {
  SpfSieve sieve(2000);
  CHECK(sieve.factor(12) == FactoredRational::prime_power(2, 2) *
                                FactoredRational::prime_power(3, 1));
  CHECK(sieve.factor(97) == FactoredRational::prime_power(97, 1));
  CHECK(sieve.factor(1024) == FactoredRational::prime_power(2, 10));
  CHECK(sieve.factor(1).is_one());
  CHECK_THROWS_AS(sieve.factor(2001), std::out_of_range);
  CHECK_THROWS_AS(sieve.factor(0), std::out_of_range);
}

TEST_CASE("sieve agrees with trial division") {
  SpfSieve sieve(100000);
  auto gen = oracle::rng(23);
  std::uniform_int_distribution<std::uint64_t> dist(2, 100000);
  for (int i = 0; i < 300; ++i) {
    std::uint64_t m = dist(gen);
    auto expected = oracle::factor_naive(m);
    CHECK(sieve.factor(m).exponents() ==
          FactoredRational::ExponentMap(expected.begin(), expected.end()));
    CHECK(sieve.spf(m) == expected.begin()->first);
    CHECK(sieve.is_prime(m) == vforge::is_prime(m));
  }
}

TEST_CASE("sieve prime list is consistent") {
  SpfSieve sieve(10000);
  std::size_t count = 0;
  for (std::uint64_t m = 2; m <= 10000; ++m)
    if (sieve.is_prime(m)) ++count;
  CHECK(count == sieve.primes().size());
  CHECK(count == 1229);  // pi(10^4)
}
