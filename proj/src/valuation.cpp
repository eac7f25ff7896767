#include "vforge/valuation.hpp"

#include <bit>
#include <stdexcept>

namespace vforge {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  if (n % 3 == 0) return n == 3;
  for (std::uint64_t d = 5; d <= n / d; d += 6) {
    if (n % d == 0 || n % (d + 2) == 0) return false;
  }
  return true;
}

ValuationSplit v2_split(std::uint64_t n) {
  if (n == 0) throw std::domain_error("v2_split: n must be positive");
  auto k = static_cast<std::uint32_t>(std::countr_zero(n));
  return ValuationSplit{k, n >> k};
}

std::uint32_t v2(std::uint64_t n) { return v2_split(n).k; }

std::uint64_t vp(std::uint64_t n, std::uint64_t p) {
  if (n == 0) throw std::domain_error("vp: n must be positive");
  if (!is_prime(p)) throw std::domain_error("vp: p must be prime");
  std::uint64_t e = 0;
  while (n % p == 0) {
    n /= p;
    ++e;
  }
  return e;
}

std::uint64_t factorial_vp(std::uint64_t n, std::uint64_t p) {
  if (!is_prime(p)) throw std::domain_error("factorial_vp: p must be prime");
  std::uint64_t sum = 0;
  while (n > 0) {
    n /= p;
    sum += n;
  }
  return sum;
}

std::uint64_t lcm_vp(std::uint64_t n, std::uint64_t p) {
  if (n == 0) throw std::domain_error("lcm_vp: n must be positive");
  if (!is_prime(p)) throw std::domain_error("lcm_vp: p must be prime");
  std::uint64_t e = 0;
  std::uint64_t power = 1;
  while (power <= n / p) {  // overflow-safe: power * p <= n
    power *= p;
    ++e;
  }
  return e;
}

std::uint64_t BinaryDigits::value() const {
  std::uint64_t v = 0;
  for (std::size_t i = bits.size(); i-- > 0;) v = (v << 1) | bits[i];
  return v;
}

std::uint64_t BinaryDigits::weighted_sum() const {
  std::uint64_t s = 0;
  for (std::size_t i = 1; i < bits.size(); ++i)
    if (bits[i]) s += i;
  return s;
}

BinaryDigits binary_digits(std::uint64_t n) {
  if (n == 0) throw std::domain_error("binary_digits: n must be positive");
  BinaryDigits out;
  while (n > 0) {
    out.bits.push_back(static_cast<std::uint8_t>(n & 1));
    n >>= 1;
  }
  return out;
}

SpfSieve::SpfSieve(std::uint32_t limit) : limit_(limit) {
  if (limit < 2) throw std::domain_error("SpfSieve: limit must be >= 2");
  spf_.assign(static_cast<std::size_t>(limit) + 1, 0);
  // Linear sieve: every composite is crossed once via its smallest prime.
  for (std::uint32_t i = 2; i <= limit; ++i) {
    if (spf_[i] == 0) {
      spf_[i] = i;
      primes_.push_back(i);
    }
    for (std::uint32_t p : primes_) {
      if (p > spf_[i]) break;
      auto next = static_cast<std::uint64_t>(p) * i;
      if (next > limit) break;
      spf_[next] = p;
    }
  }
}

void SpfSieve::check_range(std::uint64_t m) const {
  if (m < 1 || m > limit_)
    throw std::out_of_range("SpfSieve: argument " + std::to_string(m) +
                            " outside [1, " + std::to_string(limit_) + "]");
}

std::uint32_t SpfSieve::spf(std::uint64_t m) const {
  check_range(m);
  if (m < 2) throw std::out_of_range("SpfSieve: spf undefined for 1");
  return spf_[m];
}

bool SpfSieve::is_prime(std::uint64_t m) const {
  check_range(m);
  return m >= 2 && spf_[m] == m;
}

FactoredRational SpfSieve::factor(std::uint64_t m) const {
  FactoredRational out;
  for_each_prime_power(
      m, [&](std::uint64_t p, std::int64_t e) { out.multiply_by(p, e); });
  return out;
}

}  // namespace vforge
