#pragma once

#include <cstdint>
#include <vector>

namespace vforge {

// Closed enclosure [lo, hi] of a real number.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  double width() const { return hi - lo; }
  bool contains(double x) const { return lo <= x && x <= hi; }
};

// All log2 bookkeeping is carried as integers in units of 2^-57.  Integer
// sums are exact and associative, so an incrementally maintained enclosure
// is bit-identical to one recomputed from scratch — that is what makes
// resumed and block-parallel scans reproduce the serial record stream.
inline constexpr int kLog2FracBits = 57;

// floor/ceil bounds of log2(p) * 2^57.  lo == hi exactly for powers of two.
struct FixedLog2 {
  std::int64_t lo = 0;
  std::int64_t hi = 0;
};

// Enclosure of log2(p), computed with correctly rounded MPFR directed
// rounding.  p >= 1.
FixedLog2 prime_log2_fixed(std::uint64_t p);

// Directed conversion of v * 2^-57 to double.  Exact when v is a multiple
// of 2^57 small enough for a double; otherwise outward by at most one ulp.
double fixed_log2_down(__int128 v);
double fixed_log2_up(__int128 v);

inline Interval fixed_log2_interval(__int128 lo, __int128 hi) {
  return Interval{fixed_log2_down(lo), fixed_log2_up(hi)};
}

// Running enclosure of a sum of e * log2(p) terms with arbitrary signs.
struct Log2Sum {
  __int128 lo = 0;
  __int128 hi = 0;

  void add(const FixedLog2& term, std::int64_t e) {
    if (e >= 0) {
      lo += static_cast<__int128>(e) * term.lo;
      hi += static_cast<__int128>(e) * term.hi;
    } else {
      lo += static_cast<__int128>(e) * term.hi;
      hi += static_cast<__int128>(e) * term.lo;
    }
  }

  Interval to_interval() const { return fixed_log2_interval(lo, hi); }
};

// Precomputed enclosures for every prime in a list; indexed by prime value.
// Immutable after construction, safe for concurrent readers.
class Log2Table {
 public:
  Log2Table(const std::vector<std::uint32_t>& primes, std::uint32_t limit);

  const FixedLog2& at(std::uint64_t p) const { return table_[p]; }

 private:
  std::vector<FixedLog2> table_;
};

}  // namespace vforge
