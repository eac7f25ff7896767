#include "vforge/factored.hpp"

#include <cassert>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "vforge/valuation.hpp"

namespace vforge {

namespace {

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t out;
  if (__builtin_add_overflow(a, b, &out))
    throw std::overflow_error("FactoredRational: exponent overflow");
  return out;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t out;
  if (__builtin_mul_overflow(a, b, &out))
    throw std::overflow_error("FactoredRational: exponent overflow");
  return out;
}

// Balanced product of a term list; keeps operand sizes comparable so the
// large multiplications happen at the top of the tree.
BigNatural balanced_product(std::vector<BigNatural>& terms) {
  if (terms.empty()) return BigNatural(1);
  while (terms.size() > 1) {
    std::size_t half = (terms.size() + 1) / 2;
    for (std::size_t i = 0; i + half < terms.size(); ++i)
      terms[i] *= terms[i + half];
    terms.resize(half);
  }
  return std::move(terms[0]);
}

}  // namespace

FactoredRational FactoredRational::prime_power(std::uint64_t p,
                                               std::int64_t e) {
  if (!is_prime(p))
    throw std::domain_error("FactoredRational: key is not prime");
  FactoredRational out;
  if (e != 0) out.exp_.emplace(p, e);
  return out;
}

std::int64_t FactoredRational::exponent_of(std::uint64_t p) const {
  auto it = exp_.find(p);
  return it == exp_.end() ? 0 : it->second;
}

bool FactoredRational::is_integer() const {
  for (const auto& [p, e] : exp_)
    if (e < 0) return false;
  return true;
}

FactoredRational FactoredRational::odd_part() const {
  FactoredRational out = *this;
  out.exp_.erase(2);
  return out;
}

void FactoredRational::multiply_by(std::uint64_t p, std::int64_t e) {
  assert(p >= 2);
  if (e == 0) return;
  auto [it, inserted] = exp_.emplace(p, e);
  if (!inserted) {
    it->second = checked_add(it->second, e);
    if (it->second == 0) exp_.erase(it);
  }
}

void FactoredRational::multiply_by(const FactoredRational& rhs) {
  for (const auto& [p, e] : rhs.exp_) multiply_by(p, e);
}

FactoredRational FactoredRational::operator*(
    const FactoredRational& rhs) const {
  FactoredRational out = *this;
  out.multiply_by(rhs);
  return out;
}

FactoredRational FactoredRational::operator/(
    const FactoredRational& rhs) const {
  FactoredRational out = *this;
  for (const auto& [p, e] : rhs.exp_) out.multiply_by(p, checked_mul(e, -1));
  return out;
}

FactoredRational FactoredRational::pow(std::int64_t k) const {
  FactoredRational out;
  if (k == 0) return out;
  for (const auto& [p, e] : exp_)
    out.exp_.emplace_hint(out.exp_.end(), p, checked_mul(e, k));
  return out;
}

BigNatural FactoredRational::materialize() const {
  std::vector<BigNatural> terms;
  terms.reserve(exp_.size());
  for (const auto& [p, e] : exp_) {
    if (e < 0)
      throw NotAnIntegerError("materialize: negative exponent at prime " +
                              std::to_string(p));
    BigNatural t;
    mpz_ui_pow_ui(t.get_mpz_t(), static_cast<unsigned long>(p),
                  static_cast<unsigned long>(e));
    terms.push_back(std::move(t));
  }
  return balanced_product(terms);
}

std::pair<BigNatural, BigNatural> FactoredRational::materialize_fraction()
    const {
  std::vector<BigNatural> num, den;
  for (const auto& [p, e] : exp_) {
    BigNatural t;
    mpz_ui_pow_ui(t.get_mpz_t(), static_cast<unsigned long>(p),
                  static_cast<unsigned long>(e < 0 ? -e : e));
    (e > 0 ? num : den).push_back(std::move(t));
  }
  return {balanced_product(num), balanced_product(den)};
}

std::string FactoredRational::to_fraction_string() const {
  auto [num, den] = materialize_fraction();
  std::string out = num.get_str();
  if (den != 1) out += "/" + den.get_str();
  return out;
}

std::string FactoredRational::to_factored_string() const {
  if (exp_.empty()) return "1";
  std::ostringstream os;
  bool first = true;
  for (const auto& [p, e] : exp_) {
    if (!first) os << " * ";
    os << p << "^" << e;
    first = false;
  }
  return os.str();
}

Interval log2_enclosure(const FactoredRational& a) {
  Log2Sum sum;
  for (const auto& [p, e] : a.exponents()) sum.add(prime_log2_fixed(p), e);
  return sum.to_interval();
}

Order compare_exact(const FactoredRational& a, const FactoredRational& b) {
  // a <=> b reduces to num <=> den of the ratio a/b; cancelling first keeps
  // the materialized integers small when a and b share most of their content.
  auto [num, den] = (a / b).materialize_fraction();
  int c = cmp(num, den);
  if (c < 0) return Order::Less;
  if (c > 0) return Order::Greater;
  return Order::Equal;
}

}  // namespace vforge
