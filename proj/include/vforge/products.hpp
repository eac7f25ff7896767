#pragma once

#include <cstdint>

#include "vforge/factored.hpp"
#include "vforge/functions.hpp"
#include "vforge/valuation.hpp"

namespace vforge {

enum class ProductKind { F, H };

// Running product of f(1..n) or h(1..n), advanced one index at a time with
// O(log n) map updates.  This is the scan-time representation; the closed
// forms below give O(1) random access per n.  Single-owner mutable state.
class ProductAccumulator {
 public:
  explicit ProductAccumulator(ProductKind kind) : kind_(kind) {}

  ProductKind kind() const { return kind_; }
  std::uint64_t n() const { return n_; }
  const FactoredRational& value() const { return value_; }

  // Multiplies in f(n+1) or h(n+1).  Throws std::out_of_range past the
  // sieve limit.
  void step(const SpfSieve& sieve);

  void advance_to(std::uint64_t n, const SpfSieve& sieve);

 private:
  ProductKind kind_;
  std::uint64_t n_ = 0;
  FactoredRational value_;
};

// Exponent of p in h(1)*...*h(n), from the factorial-quotient form
// n! / (floor(n/2)! floor(n/4)! ...): v_p(n!) minus the same sum for every
// floor(n/2^j).  Never negative.
std::int64_t product_h_exponent(std::uint64_t n, std::uint64_t p);

// h(1)*...*h(n) via per-prime factorial-quotient exponents.  Iterates only
// primes <= n; needs sieve.limit() >= n.  This route never materializes a
// factorial.
FactoredRational product_h_closed(std::uint64_t n, const SpfSieve& sieve);

// f(1)*...*f(n) = odd part of the h-product; integer-valued for every n.
FactoredRational product_f(std::uint64_t n, const SpfSieve& sieve);

// v2 of the h-product; equals the sum of v2(r)(3 - v2(r))/2 over r <= n.
std::int64_t v2_of_product_h(std::uint64_t n);

// The multinomial coefficient S! / (floor(n/2)! floor(n/4)! ...) with
// S = floor(n/2) + floor(n/4) + ..., as a factored value.  Always an
// integer, and the h-product divided by it is n!/S!, also an integer —
// which is the integrality chain the checkers assert.
FactoredRational multinomial_witness(std::uint64_t n, const SpfSieve& sieve);

// S = floor(n/2) + floor(n/4) + ...; strictly less than n for n >= 1.
std::uint64_t floor_halving_sum(std::uint64_t n);

}  // namespace vforge
