#include "vforge/functions.hpp"

#include <cassert>
#include <stdexcept>

namespace vforge {

FactoredRational f_value(std::uint64_t r, const SpfSieve& sieve) {
  auto [k, ell] = v2_split(r);
  return sieve.factor(ell).pow(1 - static_cast<std::int64_t>(k));
}

std::uint64_t g_value(std::uint64_t num, std::uint64_t den) {
  if (num == 0 || den == 0)
    throw std::domain_error("g_value: argument must be a positive rational");
  return num % den == 0 ? num / den : 1;
}

FactoredRational h_definitional(std::uint64_t r, const SpfSieve& sieve) {
  FactoredRational denom;
  for (std::uint64_t d = 2; d <= r; d <<= 1) {
    std::uint64_t g = g_value(r, d);
    if (g > 1) denom.multiply_by(sieve.factor(g));
  }
  return sieve.factor(r) / denom;
}

FactoredRational h_closed(std::uint64_t r, const SpfSieve& sieve) {
  auto [k, ell] = v2_split(r);
  auto ks = static_cast<std::int64_t>(k);
  assert(ks % 2 == 0 || (3 - ks) % 2 == 0);  // k(3-k) is always even
  FactoredRational out = sieve.factor(ell).pow(1 - ks);
  out.multiply_by(2, ks * (3 - ks) / 2);
  return out;
}

FactoredRational f_from_h(std::uint64_t r, const SpfSieve& sieve) {
  auto ks = static_cast<std::int64_t>(v2(r));
  FactoredRational out = h_definitional(r, sieve);
  out.multiply_by(2, ks * (ks - 3) / 2);
  return out;
}

}  // namespace vforge
