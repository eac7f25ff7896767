#pragma once

#include <cstdint>

#include "vforge/factored.hpp"
#include "vforge/valuation.hpp"

namespace vforge {

// The three arithmetic functions exposed by the `eval` command.  f maps
// 2^k * ell (ell odd) to ell^(1-k); g keeps positive integers and collapses
// every other positive rational to 1; h divides r by the product of
// g(r/2), g(r/4), g(r/8), ...
//
// h is implemented twice on purpose: the definitional product and the
// closed form 2^(k(3-k)/2) * ell^(1-k) act as mutual oracles, and both are
// part of the shipped library.

// f(r) = ell^(1-k).  Needs sieve.limit() >= odd part of r.
FactoredRational f_value(std::uint64_t r, const SpfSieve& sieve);

// g of the exact rational num/den: the integer value if den | num, else 1.
// Inputs are taken as an exact pair so integrality is never a float test.
// Throws std::domain_error when num or den is zero.
std::uint64_t g_value(std::uint64_t num, std::uint64_t den);

// h(r) evaluated directly from its definition.  The g-product stops at the
// first i with 2^i > r; beyond that every factor is 1.
FactoredRational h_definitional(std::uint64_t r, const SpfSieve& sieve);

// h(r) = 2^(k(3-k)/2) * ell^(1-k); the power-of-2 exponent goes negative
// for k >= 4.
FactoredRational h_closed(std::uint64_t r, const SpfSieve& sieve);

// f recovered from the definitional h via f(r) = 2^(k(k-3)/2) * h(r);
// must agree with f_value everywhere.
FactoredRational f_from_h(std::uint64_t r, const SpfSieve& sieve);

}  // namespace vforge
