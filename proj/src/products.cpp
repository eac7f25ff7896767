#include "vforge/products.hpp"

#include <stdexcept>

namespace vforge {

void ProductAccumulator::step(const SpfSieve& sieve) {
  std::uint64_t next = n_ + 1;
  if (next > sieve.limit())
    throw std::out_of_range("ProductAccumulator: step past sieve limit");
  value_.multiply_by(kind_ == ProductKind::F ? f_value(next, sieve)
                                             : h_closed(next, sieve));
  n_ = next;
}

void ProductAccumulator::advance_to(std::uint64_t n, const SpfSieve& sieve) {
  while (n_ < n) step(sieve);
}

std::int64_t product_h_exponent(std::uint64_t n, std::uint64_t p) {
  auto e = static_cast<std::int64_t>(factorial_vp(n, p));
  for (std::uint64_t m = n / 2; m > 0; m /= 2)
    e -= static_cast<std::int64_t>(factorial_vp(m, p));
  return e;
}

FactoredRational product_h_closed(std::uint64_t n, const SpfSieve& sieve) {
  if (n == 0) throw std::domain_error("product_h_closed: n must be positive");
  if (n > sieve.limit())
    throw std::out_of_range("product_h_closed: n exceeds sieve limit");
  FactoredRational out;
  for (std::uint32_t p : sieve.primes()) {
    if (p > n) break;
    out.multiply_by(p, product_h_exponent(n, p));
  }
  return out;
}

FactoredRational product_f(std::uint64_t n, const SpfSieve& sieve) {
  return product_h_closed(n, sieve).odd_part();
}

std::int64_t v2_of_product_h(std::uint64_t n) {
  if (n == 0) throw std::domain_error("v2_of_product_h: n must be positive");
  return product_h_exponent(n, 2);
}

std::uint64_t floor_halving_sum(std::uint64_t n) {
  std::uint64_t s = 0;
  for (std::uint64_t m = n / 2; m > 0; m /= 2) s += m;
  return s;
}

FactoredRational multinomial_witness(std::uint64_t n, const SpfSieve& sieve) {
  if (n == 0)
    throw std::domain_error("multinomial_witness: n must be positive");
  std::uint64_t top = floor_halving_sum(n);
  FactoredRational out;
  for (std::uint32_t p : sieve.primes()) {
    if (p > top) break;
    auto e = static_cast<std::int64_t>(factorial_vp(top, p));
    for (std::uint64_t m = n / 2; m > 0; m /= 2)
      e -= static_cast<std::int64_t>(factorial_vp(m, p));
    out.multiply_by(p, e);
  }
  return out;
}

}  // namespace vforge
