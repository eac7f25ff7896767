#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>

#include <gmpxx.h>

#include "vforge/errors.hpp"
#include "vforge/interval.hpp"

namespace vforge {

// Arbitrary-precision nonnegative integer; materialization target for
// integer-valued factored products.
using BigNatural = mpz_class;

// A strictly positive rational stored as a finite prime -> exponent map.
//
// Canonical form: every key is prime, no exponent is zero, and the empty
// map represents 1.  Structural equality therefore coincides with value
// equality.  Values are immutable in spirit: all mutators are private to
// construction-style helpers, and shared instances are safe to read
// concurrently.
class FactoredRational {
 public:
  using ExponentMap = std::map<std::uint64_t, std::int64_t>;

  FactoredRational() = default;

  static FactoredRational one() { return FactoredRational{}; }

  // p must be prime (checked).  e may be any signed exponent; e == 0 gives 1.
  static FactoredRational prime_power(std::uint64_t p, std::int64_t e);

  const ExponentMap& exponents() const { return exp_; }
  std::size_t term_count() const { return exp_.size(); }
  std::int64_t exponent_of(std::uint64_t p) const;

  bool is_one() const { return exp_.empty(); }

  // True iff every exponent is >= 0.
  bool is_integer() const;

  std::int64_t v2() const { return exponent_of(2); }

  // Same map with the key 2 removed.
  FactoredRational odd_part() const;

  // Exponent-wise sum / difference / scale.  Exponent overflow beyond
  // 64 bits is a hard error (std::overflow_error).
  FactoredRational operator*(const FactoredRational& rhs) const;
  FactoredRational operator/(const FactoredRational& rhs) const;
  FactoredRational pow(std::int64_t k) const;

  bool operator==(const FactoredRational& rhs) const = default;

  // In-place multiply by p^e.  p is trusted to be prime (callers pass sieve
  // output); only cheap sanity is asserted.  Hot path of the scanners.
  void multiply_by(std::uint64_t p, std::int64_t e);
  void multiply_by(const FactoredRational& rhs);

  // Exact integer value, via a balanced product over prime powers.
  // Throws NotAnIntegerError if any exponent is negative.
  BigNatural materialize() const;

  // (numerator, denominator) in lowest terms; both integers, coprime by
  // construction since each prime appears on one side only.
  std::pair<BigNatural, BigNatural> materialize_fraction() const;

  // "num/den" in lowest terms ("num" when the value is an integer).
  std::string to_fraction_string() const;

  // "2^1 * 3^-1" style dump in increasing prime order; "1" for the empty map.
  std::string to_factored_string() const;

 private:
  ExponentMap exp_;
};

// Rigorous enclosure of log2 of the value.  Exact for powers of two.
Interval log2_enclosure(const FactoredRational& a);

// Exact three-way comparison of two factored values.  Cancels common
// content first, then compares materialized numerator against denominator,
// so near-ties stay cheap even when the operands themselves are enormous.
enum class Order { Less, Equal, Greater };
Order compare_exact(const FactoredRational& a, const FactoredRational& b);

}  // namespace vforge
