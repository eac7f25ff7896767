#pragma once

#include <cstdint>
#include <string>

#include "vforge/factored.hpp"
#include "vforge/products.hpp"
#include "vforge/valuation.hpp"

namespace vforge {

// Ids accepted by the `verify` command: thm1 thm2 thm3 thm4 thm5 cor1 eq9.
//   thm1: f(1)*...*f(n) is an integer.
//   thm2: that product is a multiple of odd(lcm(1..n)); inner claim: the
//         factorial quotient has v_p >= valuation of lcm(1..n) for every p.
//   thm3: h(1)*...*h(n) <= c^n with c = P(1023)^(1/1023); tie at n = 1023.
//   thm4: sum v2(r) vp(r) <= sum vp(r) - lcm_vp(n, p) for odd primes p.
//   thm5: sum of v2(r)(3 - v2(r))/2 over r <= n equals the weighted binary
//         digit sum of n.
//   cor1: f-product <= c^n (and f-product <= h-product).
//   eq9:  h-product <= n^(log2 n) * 4^n.
struct Verdict {
  std::string theorem;
  std::uint64_t n = 0;
  std::uint64_t p = 0;  // thm4 only
  bool passed = false;
  // Slack enclosure in theorem-specific units (exact integers where the
  // check is integral, log2 bits where it is interval-based).
  double margin_lo = 0.0;
  double margin_hi = 0.0;
  bool tie = false;
  std::string witness;  // populated iff !passed
};

// The sharp constant c, held exactly as the pair (P(1023), 1023) where
// P(n) is the h-product.  The decimal 4.01055487... is only a display
// form; every c^n comparison cross-powers the exact representation.
struct ConstantC {
  std::uint64_t base_n = 0;
  FactoredRational exact_rep;
  Log2Sum log2_p;      // fixed-point enclosure of log2 P(base_n)
  Interval log2_c;     // log2_p / base_n

  // Enclosure of c as decimal strings, correctly rounded outward.
  std::string decimal_lo(int digits) const;
  std::string decimal_hi(int digits) const;
};

// Builds c from scratch; requires sieve.limit() >= 1023.  Throws
// std::logic_error if the enclosure misses the expected 4.01055487 prefix.
ConstantC constant_c(const SpfSieve& sieve);

// Exact decision of prod <=> c^n for an integer-valued product with log
// enclosure acc: fixed-point fast path, cross-powered big-integer
// comparison when inconclusive.  Sets *escalated when the exact path ran.
Order compare_with_c_power(const FactoredRational& prod, const Log2Sum& acc,
                           std::uint64_t n, const ConstantC& c,
                           bool* escalated = nullptr);

Verdict check_thm1(std::uint64_t n, const SpfSieve& sieve);
Verdict check_thm2(std::uint64_t n, const SpfSieve& sieve);
Verdict check_thm3(std::uint64_t n, const ConstantC& c, const SpfSieve& sieve);
Verdict check_thm4(std::uint64_t n, std::uint64_t p);  // p odd prime
Verdict check_thm5(std::uint64_t n);
Verdict check_cor1(std::uint64_t n, const ConstantC& c, const SpfSieve& sieve);
Verdict check_eq9(std::uint64_t n, const SpfSieve& sieve);

}  // namespace vforge
