#pragma once

#include <cstdint>
#include <vector>

#include "vforge/factored.hpp"

namespace vforge {

// n = 2^k * ell with ell odd.
struct ValuationSplit {
  std::uint32_t k = 0;
  std::uint64_t ell = 1;
};

// Throws std::domain_error for n = 0.
ValuationSplit v2_split(std::uint64_t n);

std::uint32_t v2(std::uint64_t n);

// Largest e with p^e | n.  Throws std::domain_error if n = 0 or p is not
// prime.
std::uint64_t vp(std::uint64_t n, std::uint64_t p);

// v_p(n!) as the finite sum of floor(n / p^i); overflow-free since the
// iterate is divided down instead of the power being grown.
std::uint64_t factorial_vp(std::uint64_t n, std::uint64_t p);

// Valuation of lcm(1..n) at p: the largest e with p^e <= n.  Integer
// comparisons only; a floating log would misclassify near-exact powers.
std::uint64_t lcm_vp(std::uint64_t n, std::uint64_t p);

// Trial division; intended for argument validation, not bulk factoring.
bool is_prime(std::uint64_t n);

// Binary expansion, least significant digit first; the top digit is 1.
struct BinaryDigits {
  std::vector<std::uint8_t> bits;

  std::size_t top_index() const { return bits.size() - 1; }  // s
  std::uint64_t value() const;
  // Sum of i * a_i over all digit positions.
  std::uint64_t weighted_sum() const;
};

BinaryDigits binary_digits(std::uint64_t n);

// Smallest-prime-factor table for [2, limit]; 32-bit entries keep scans to
// 10^6 in a few megabytes.  Immutable after construction, safe for
// concurrent readers.
class SpfSieve {
 public:
  explicit SpfSieve(std::uint32_t limit);

  std::uint32_t limit() const { return limit_; }

  // Smallest prime factor of m, 2 <= m <= limit.
  std::uint32_t spf(std::uint64_t m) const;

  bool is_prime(std::uint64_t m) const;

  const std::vector<std::uint32_t>& primes() const { return primes_; }

  // Complete factorization of m in [1, limit] (1 gives the empty map).
  FactoredRational factor(std::uint64_t m) const;

  // Visits (p, e) for each prime power p^e || m, smallest prime first.
  template <typename Fn>
  void for_each_prime_power(std::uint64_t m, Fn&& fn) const {
    check_range(m);
    auto v = static_cast<std::uint32_t>(m);
    while (v > 1) {
      std::uint32_t p = spf_[v];
      std::int64_t e = 0;
      while (v % p == 0) {
        v /= p;
        ++e;
      }
      fn(static_cast<std::uint64_t>(p), e);
    }
  }

 private:
  void check_range(std::uint64_t m) const;

  std::uint32_t limit_;
  std::vector<std::uint32_t> spf_;
  std::vector<std::uint32_t> primes_;
};

}  // namespace vforge
