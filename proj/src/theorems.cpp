#include "vforge/theorems.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <mpfr.h>

#include "int128_mpfr.hpp"

namespace vforge {

namespace {

using detail::mpfr_set_int128;

__int128 floor_div(__int128 a, __int128 b) {
  __int128 q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

__int128 ceil_div(__int128 a, __int128 b) { return -floor_div(-a, b); }

Log2Sum log2_sum_of(const FactoredRational& a) {
  Log2Sum sum;
  for (const auto& [p, e] : a.exponents()) sum.add(prime_log2_fixed(p), e);
  return sum;
}

std::string describe_order(Order o) {
  switch (o) {
    case Order::Less: return "<";
    case Order::Equal: return "=";
    default: return ">";
  }
}

// c as an mpfr value with directed rounding, from the exact fixed-point
// enclosure of log2 P(1023).
void constant_c_mpfr(mpfr_t out, const ConstantC& c, mpfr_rnd_t rnd) {
  mpfr_t t;
  mpfr_init2(t, 128);
  mpfr_set_int128(t, rnd == MPFR_RNDD ? c.log2_p.lo : c.log2_p.hi);
  mpfr_div_ui(t, t, static_cast<unsigned long>(c.base_n), rnd);
  mpfr_div_2ui(t, t, kLog2FracBits, rnd);  // exact
  mpfr_exp2(out, t, rnd);
  mpfr_clear(t);
}

std::string mpfr_decimal(mpfr_t v, int digits, mpfr_rnd_t rnd) {
  std::string fmt = "%." + std::to_string(digits) +
                    (rnd == MPFR_RNDD ? "RDf" : "RUf");
  char buf[128];
  mpfr_snprintf(buf, sizeof(buf), fmt.c_str(), v);
  return buf;
}

}  // namespace

std::string ConstantC::decimal_lo(int digits) const {
  mpfr_t v;
  mpfr_init2(v, 128);
  constant_c_mpfr(v, *this, MPFR_RNDD);
  std::string s = mpfr_decimal(v, digits, MPFR_RNDD);
  mpfr_clear(v);
  return s;
}

std::string ConstantC::decimal_hi(int digits) const {
  mpfr_t v;
  mpfr_init2(v, 128);
  constant_c_mpfr(v, *this, MPFR_RNDU);
  std::string s = mpfr_decimal(v, digits, MPFR_RNDU);
  mpfr_clear(v);
  return s;
}

ConstantC constant_c(const SpfSieve& sieve) {
  constexpr std::uint64_t kBase = 1023;
  if (sieve.limit() < kBase)
    throw std::out_of_range("constant_c: sieve limit must cover 1023");
  ConstantC c;
  c.base_n = kBase;
  c.exact_rep = product_h_closed(kBase, sieve);
  c.log2_p = log2_sum_of(c.exact_rep);
  c.log2_c = fixed_log2_interval(floor_div(c.log2_p.lo, kBase),
                                 ceil_div(c.log2_p.hi, kBase));
  // The published decimal prefix must fall inside the enclosure.
  std::string lo = c.decimal_lo(9), hi = c.decimal_hi(9);
  if (lo.substr(0, 10) != "4.01055487" || hi.substr(0, 10) != "4.01055487")
    throw std::logic_error("constant_c: enclosure excludes 4.01055487 [" +
                           lo + ", " + hi + "]");
  return c;
}

Order compare_with_c_power(const FactoredRational& prod, const Log2Sum& acc,
                           std::uint64_t n, const ConstantC& c,
                           bool* escalated) {
  // prod <= c^n  <=>  base_n * log2(prod) <= n * log2 P(base_n).
  auto base = static_cast<__int128>(c.base_n);
  auto nn = static_cast<__int128>(n);
  if (acc.hi * base < c.log2_p.lo * nn) return Order::Less;
  if (acc.lo * base > c.log2_p.hi * nn) return Order::Greater;
  if (escalated) *escalated = true;
  return compare_exact(prod.pow(static_cast<std::int64_t>(c.base_n)),
                       c.exact_rep.pow(static_cast<std::int64_t>(n)));
}

Verdict check_thm1(std::uint64_t n, const SpfSieve& sieve) {
  Verdict v;
  v.theorem = "thm1";
  v.n = n;
  FactoredRational pf = product_f(n, sieve);
  std::int64_t min_e = std::numeric_limits<std::int64_t>::max();
  std::uint64_t min_p = 0;
  for (const auto& [p, e] : pf.exponents()) {
    if (e < min_e) {
      min_e = e;
      min_p = p;
    }
  }
  if (pf.exponents().empty()) min_e = 0;
  v.passed = min_e >= 0;
  v.margin_lo = v.margin_hi = static_cast<double>(min_e);
  if (!v.passed) {
    v.witness = "exponent of " + std::to_string(min_p) + " in f-product is " +
                std::to_string(min_e);
  }
  return v;
}

Verdict check_thm2(std::uint64_t n, const SpfSieve& sieve) {
  Verdict v;
  v.theorem = "thm2";
  v.n = n;
  if (n > sieve.limit())
    throw std::out_of_range("check_thm2: n exceeds sieve limit");
  std::int64_t min_slack = std::numeric_limits<std::int64_t>::max();
  bool inner_ok = true;
  std::ostringstream bad;
  // Inner claim at p = 2 checks the h-product; the odd primes check the
  // f-product (same exponents, the odd part only strips 2).
  std::int64_t e2 = v2_of_product_h(n);
  auto a2 = static_cast<std::int64_t>(lcm_vp(n, 2));
  if (n >= 2 && e2 < a2) {
    inner_ok = false;
    bad << "v_2(h-product)=" << e2 << " < " << a2;
  }
  for (std::uint32_t p : sieve.primes()) {
    if (p > n) break;
    if (p == 2) continue;
    std::int64_t e = product_h_exponent(n, p);
    auto alpha = static_cast<std::int64_t>(lcm_vp(n, p));
    std::int64_t slack = e - alpha;
    if (slack < min_slack) min_slack = slack;
    if (slack < 0 && bad.tellp() == 0)
      bad << "v_" << p << "(f-product)=" << e << " < " << alpha;
  }
  if (min_slack == std::numeric_limits<std::int64_t>::max())
    min_slack = 0;  // no odd prime <= n: vacuous
  v.passed = min_slack >= 0 && inner_ok;
  v.margin_lo = v.margin_hi = static_cast<double>(min_slack);
  if (!v.passed) v.witness = bad.str();
  return v;
}

namespace {

Verdict check_against_c(const char* id, std::uint64_t n,
                        const FactoredRational& prod, const ConstantC& c) {
  Verdict v;
  v.theorem = id;
  v.n = n;
  Log2Sum acc = log2_sum_of(prod);
  bool escalated = false;
  Order o = compare_with_c_power(prod, acc, n, c, &escalated);
  v.passed = o != Order::Greater;
  v.tie = o == Order::Equal;
  if (v.tie) {
    v.margin_lo = v.margin_hi = 0.0;
  } else {
    auto nn = static_cast<__int128>(n);
    auto base = static_cast<__int128>(c.base_n);
    v.margin_lo = fixed_log2_down(floor_div(c.log2_p.lo * nn, base) - acc.hi);
    v.margin_hi = fixed_log2_up(ceil_div(c.log2_p.hi * nn, base) - acc.lo);
  }
  if (!v.passed)
    v.witness = "product " + describe_order(o) + " c^n (exact cross-power)";
  return v;
}

}  // namespace

Verdict check_thm3(std::uint64_t n, const ConstantC& c,
                   const SpfSieve& sieve) {
  return check_against_c("thm3", n, product_h_closed(n, sieve), c);
}

Verdict check_cor1(std::uint64_t n, const ConstantC& c,
                   const SpfSieve& sieve) {
  Verdict v = check_against_c("cor1", n, product_f(n, sieve), c);
  // Bridge: f-product <= h-product, exactly their ratio 2^{v2(h-product)}.
  std::int64_t e2 = v2_of_product_h(n);
  if (e2 < 0) {
    v.passed = false;
    v.witness = "f-product > h-product: v2(h-product)=" + std::to_string(e2);
  }
  return v;
}

Verdict check_thm4(std::uint64_t n, std::uint64_t p) {
  if (p == 2) throw std::domain_error("check_thm4: p must be odd");
  if (!is_prime(p)) throw std::domain_error("check_thm4: p must be prime");
  Verdict v;
  v.theorem = "thm4";
  v.n = n;
  v.p = p;
  std::int64_t lhs = 0, vp_sum = 0;
  for (std::uint64_t m = p; m <= n; m += p) {
    auto a = static_cast<std::int64_t>(vp(m, p));
    vp_sum += a;
    lhs += static_cast<std::int64_t>(v2(m)) * a;
    if (m > n - p) break;  // overflow-safe bound on the stride
  }
  std::int64_t rhs = vp_sum - static_cast<std::int64_t>(lcm_vp(n, p));
  v.passed = lhs <= rhs;
  v.margin_lo = v.margin_hi = static_cast<double>(rhs - lhs);
  if (!v.passed) {
    v.witness = "lhs=" + std::to_string(lhs) + " rhs=" + std::to_string(rhs);
  }
  return v;
}

Verdict check_thm5(std::uint64_t n) {
  Verdict v;
  v.theorem = "thm5";
  v.n = n;
  std::int64_t lhs = 0;
  for (std::uint64_t r = 1; r <= n; ++r) {
    auto k = static_cast<std::int64_t>(v2(r));
    std::int64_t t = k * (3 - k);
    // k(3-k) is even for every k, so halving is exact.
    lhs += t / 2;
    if (r == n) break;
  }
  auto rhs = static_cast<std::int64_t>(binary_digits(n).weighted_sum());
  v.passed = lhs == rhs;
  v.margin_lo = v.margin_hi = static_cast<double>(rhs - lhs);
  if (!v.passed) {
    v.witness = "lhs=" + std::to_string(lhs) + " rhs=" + std::to_string(rhs);
  }
  return v;
}

namespace {

// Squared enclosure of a nonnegative interval, outward-rounded.
Interval square_outward(Interval a) {
  double lo = a.lo * a.lo;
  double hi = a.hi * a.hi;
  return Interval{std::nextafter(lo, -HUGE_VAL), std::nextafter(hi, HUGE_VAL)};
}

// High-precision retry of the n^(log2 n) 4^n bound comparison.
// Returns +1 (holds), -1 (violated), 0 (still inconclusive).
int eq9_escalate(std::uint64_t n, const FactoredRational& ph,
                 const FactoredRational& nf) {
  constexpr int kBits = 192;
  mpfr_t lhs, rhs, t;
  mpfr_inits2(kBits, lhs, rhs, t, static_cast<mpfr_ptr>(nullptr));
  int result = 0;
  for (int pass = 0; pass < 2 && result == 0; ++pass) {
    // pass 0: upper bound of lhs vs lower bound of rhs (proves the bound);
    // pass 1: the reverse (proves violation).
    mpfr_rnd_t up = pass == 0 ? MPFR_RNDU : MPFR_RNDD;
    mpfr_rnd_t dn = pass == 0 ? MPFR_RNDD : MPFR_RNDU;
    mpfr_set_zero(lhs, 1);
    for (const auto& [p, e] : ph.exponents()) {
      mpfr_set_uj(t, p, MPFR_RNDN);
      mpfr_log2(t, t, up);
      mpfr_mul_si(t, t, e, up);
      mpfr_add(lhs, lhs, t, up);
    }
    mpfr_set_zero(rhs, 1);
    for (const auto& [p, e] : nf.exponents()) {
      mpfr_set_uj(t, p, MPFR_RNDN);
      mpfr_log2(t, t, dn);
      mpfr_mul_si(t, t, e, dn);
      mpfr_add(rhs, rhs, t, dn);
    }
    mpfr_sqr(rhs, rhs, dn);
    mpfr_add_ui(rhs, rhs, 2 * n, dn);
    if (pass == 0 && mpfr_cmp(lhs, rhs) <= 0) result = 1;
    if (pass == 1 && mpfr_cmp(lhs, rhs) > 0) result = -1;
  }
  mpfr_clears(lhs, rhs, t, static_cast<mpfr_ptr>(nullptr));
  return result;
}

}  // namespace

Verdict check_eq9(std::uint64_t n, const SpfSieve& sieve) {
  Verdict v;
  v.theorem = "eq9";
  v.n = n;
  FactoredRational ph = product_h_closed(n, sieve);
  Interval lhs = log2_sum_of(ph).to_interval();
  FactoredRational nf = n == 1 ? FactoredRational::one() : sieve.factor(n);
  Interval log2n = log2_enclosure(nf);
  Interval sq = square_outward(log2n);
  auto shift = static_cast<double>(2 * n);
  Interval rhs{std::nextafter(sq.lo + shift, -HUGE_VAL),
               std::nextafter(sq.hi + shift, HUGE_VAL)};
  v.margin_lo = rhs.lo - lhs.hi;
  v.margin_hi = rhs.hi - lhs.lo;
  if (lhs.hi <= rhs.lo) {
    v.passed = true;
  } else if (lhs.lo > rhs.hi) {
    v.passed = false;
    v.witness = "log2 h-product exceeds (log2 n)^2 + 2n";
  } else {
    int r = eq9_escalate(n, ph, nf);
    v.passed = r > 0;
    if (r == 0) v.witness = "inconclusive at escalated precision";
    if (r < 0) v.witness = "bound violated (escalated comparison)";
  }
  return v;
}

}  // namespace vforge
