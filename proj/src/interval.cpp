#include "vforge/interval.hpp"

#include <bit>
#include <cassert>
#include <cmath>
#include <stdexcept>

#include <mpfr.h>

namespace vforge {

namespace {

// mpfr working precision for the per-prime constants.  log2(p) < 64, so
// 80 bits leaves the Q57 extraction with sub-unit error.
constexpr int kMpfrBits = 80;

std::int64_t log2_fixed_directed(std::uint64_t p, mpfr_rnd_t rnd) {
  mpfr_t t;
  mpfr_init2(t, kMpfrBits);
  mpfr_set_ui(t, static_cast<unsigned long>(p), MPFR_RNDN);  // exact
  mpfr_log2(t, t, rnd);
  mpfr_mul_2ui(t, t, kLog2FracBits, rnd);  // exact scaling
  std::int64_t out = static_cast<std::int64_t>(mpfr_get_sj(t, rnd));
  mpfr_clear(t);
  return out;
}

}  // namespace

FixedLog2 prime_log2_fixed(std::uint64_t p) {
  if (p == 0) throw std::domain_error("prime_log2_fixed: p must be positive");
  if ((p & (p - 1)) == 0) {
    // Exact: log2(2^k) = k.
    auto k = static_cast<std::int64_t>(std::countr_zero(p));
    return FixedLog2{k << kLog2FracBits, k << kLog2FracBits};
  }
  return FixedLog2{log2_fixed_directed(p, MPFR_RNDD),
                   log2_fixed_directed(p, MPFR_RNDU)};
}

namespace {

double fixed_to_double(__int128 v, bool up) {
  constexpr __int128 frac_mask = ((__int128)1 << kLog2FracBits) - 1;
  __int128 q128 = v >> kLog2FracBits;  // floor
  auto r = static_cast<std::uint64_t>(v & frac_mask);
  assert(q128 > -((__int128)1 << 53) && q128 < ((__int128)1 << 53));
  auto q = static_cast<std::int64_t>(q128);
  if (r == 0) return static_cast<double>(q);  // exact
  // q is exact in long double, r * 2^-57 is an exact scaling, so the sum
  // rounds once and the narrowing once: total error under one double ulp,
  // and a single outward nextafter restores the bound.
  long double l = static_cast<long double>(q) +
                  static_cast<long double>(r) * 0x1p-57L;
  double d = static_cast<double>(l);
  return up ? std::nextafter(d, HUGE_VAL) : std::nextafter(d, -HUGE_VAL);
}

}  // namespace

double fixed_log2_down(__int128 v) { return fixed_to_double(v, false); }
double fixed_log2_up(__int128 v) { return fixed_to_double(v, true); }

Log2Table::Log2Table(const std::vector<std::uint32_t>& primes,
                     std::uint32_t limit) {
  table_.resize(static_cast<std::size_t>(limit) + 1);
  for (std::uint32_t p : primes) {
    if (p <= limit) table_[p] = prime_log2_fixed(p);
  }
}

}  // namespace vforge
