#pragma once

#include <cstdint>

#include <mpfr.h>

namespace vforge::detail {

// Exact load of a 128-bit integer; out must carry >= 128 bits of precision.
inline void mpfr_set_int128(mpfr_t out, __int128 v) {
  bool neg = v < 0;
  unsigned __int128 u = neg ? -static_cast<unsigned __int128>(v)
                            : static_cast<unsigned __int128>(v);
  mpfr_set_uj(out, static_cast<std::uint64_t>(u >> 64), MPFR_RNDN);
  mpfr_mul_2ui(out, out, 64, MPFR_RNDN);
  mpfr_t lo;
  mpfr_init2(lo, 64);
  mpfr_set_uj(lo, static_cast<std::uint64_t>(u), MPFR_RNDN);
  mpfr_add(out, out, lo, MPFR_RNDN);
  mpfr_clear(lo);
  if (neg) mpfr_neg(out, out, MPFR_RNDN);
}

}  // namespace vforge::detail
