#include "vacca/numerics.hpp"

#include <cmath>
#include <cstdio>
#include <optional>
#include <tuple>
#include <utility>

namespace vacca {

namespace {

void check_precision(mpfr_prec_t p, const char* fn) {
  if (p < kMinPrecisionBits) {
    throw std::invalid_argument(std::string(fn) + ": precision_bits must be >= 16");
  }
}

}  // namespace

Enclosure log_ratio(std::uint64_t n, mpfr_prec_t precision_bits) {
  if (n < 1) throw std::domain_error("log_ratio: n must be >= 1");
  check_precision(precision_bits, "log_ratio");
  const mpfr_prec_t work = precision_bits + 16;

  const mpz_class m = 2 * mpz_class(static_cast<unsigned long>(n)) + 1;
  const mpz_class m2 = m * m;
  const mpq_class one_minus_x2_inv(m2, m2 - 1);  // 1/(1 - x^2) for x = 1/m

  mpq_class pw(mpz_class(1), m);  // x^(2k+1), starting at k = 0
  mpq_class inner(0);  // sum of x^(2k+1)/(2k+1) so far
  mpq_class bound;     // certified bound on the omitted part of 2*inner
  const Rational target = Rational::pow2(-static_cast<long>(precision_bits) - 8);

  for (unsigned long k = 0;; ++k) {
    mpq_class t(pw);
    t /= 2 * k + 1;
    inner += t;
    pw /= m2;
    bound = 2 * pw;
    bound /= 2 * k + 3;
    bound *= one_minus_x2_inv;
    if (cmp(bound, target.raw()) <= 0) break;
  }

  // The exact value lies in [total, total + bound].
  const mpq_class total = 2 * inner;
  const Rational lo = Rational::from_raw(total);
  const Rational hi = Rational::from_raw(total + bound);
  return Enclosure::from_bounds(lo, hi, work);
}

ATerm a_term(std::uint64_t n, mpfr_prec_t precision_bits) {
  if (n < 1) throw std::domain_error("a_term: n must be >= 1");
  check_precision(precision_bits, "a_term");
  const Enclosure lr = log_ratio(n, precision_bits);
  const Rational inv_n(mpz_class(1), mpz_class(static_cast<unsigned long>(n)));
  return ATerm{n, -(lr - inv_n)};
}

std::string decimal_render(const Rational& r, std::uint64_t digits) {
  if (digits < 1 || digits > 100000) {
    throw std::invalid_argument("decimal_render: digits out of range");
  }
  const bool neg = r.sgn() < 0;
  mpz_class num = abs(r.numerator());
  const mpz_class den = r.denominator();
  num *= int_pow(10ul, digits);
  mpz_class q, rem;
  mpz_fdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  if (2 * rem >= den) ++q;

  std::string ds = q.get_str();
  if (ds.size() <= digits) ds.insert(0, digits + 1 - ds.size(), '0');
  ds.insert(ds.size() - digits, ".");
  if (neg && q != 0) ds.insert(0, "-");
  return ds;
}

namespace {

// For 0 <= alo <= ahi: the longest d <= cap with floor(alo*10^d) ==
// floor(ahi*10^d), together with that shared floor.  nullopt when even the
// integer parts disagree.
std::optional<std::pair<std::uint64_t, mpz_class>> agreed_floor(
    const Rational& alo, const Rational& ahi, std::uint64_t cap) {
  const mpz_class scale = int_pow(10ul, cap);
  mpz_class slo, shi, r;
  mpz_class t = alo.numerator() * scale;
  mpz_fdiv_q(slo.get_mpz_t(), t.get_mpz_t(), alo.denominator().get_mpz_t());
  t = ahi.numerator() * scale;
  mpz_fdiv_q(shi.get_mpz_t(), t.get_mpz_t(), ahi.denominator().get_mpz_t());

  for (std::uint64_t d = cap;; --d) {
    const mpz_class p = int_pow(10ul, cap - d);
    mpz_class flo, fhi;
    mpz_fdiv_q(flo.get_mpz_t(), slo.get_mpz_t(), p.get_mpz_t());
    mpz_fdiv_q(fhi.get_mpz_t(), shi.get_mpz_t(), p.get_mpz_t());
    if (flo == fhi) return std::make_pair(d, flo);
    if (d == 0) break;
  }
  return std::nullopt;
}

// Splits an enclosure into (sign prefix, |lo|, |hi|) when it does not
// straddle zero.
std::optional<std::tuple<std::string, Rational, Rational>> signed_magnitudes(
    const Enclosure& e) {
  const Rational lo = e.lo();
  const Rational hi = e.hi();
  if (lo.sgn() >= 0) return std::make_tuple(std::string(), lo, hi);
  if (hi.sgn() <= 0) return std::make_tuple(std::string("-"), -hi, -lo);
  return std::nullopt;
}

std::string format_digits(const mpz_class& shared, std::uint64_t d,
                          const std::string& sign) {
  std::string ds = shared.get_str();
  if (d > 0) {
    if (ds.size() <= d) ds.insert(0, d + 1 - ds.size(), '0');
    ds.insert(ds.size() - d, ".");
  }
  return sign + ds;
}

}  // namespace

std::string agreed_prefix(const Enclosure& e, std::uint64_t max_digits) {
  const auto split = signed_magnitudes(e);
  if (!split) return "";
  const auto& [sign, alo, ahi] = *split;
  const auto agreed = agreed_floor(alo, ahi, max_digits);
  if (!agreed) return "";
  return format_digits(agreed->second, agreed->first, sign);
}

std::uint64_t agreed_fractional_digits(const Enclosure& e, std::uint64_t max_digits) {
  const auto split = signed_magnitudes(e);
  if (!split) return 0;
  const auto& [sign, alo, ahi] = *split;
  (void)sign;
  const auto agreed = agreed_floor(alo, ahi, max_digits);
  return agreed ? agreed->first : 0;
}

std::string decimal_render(const Enclosure& e, std::uint64_t digits) {
  if (digits < 1 || digits > 100000) {
    throw std::invalid_argument("decimal_render: digits out of range");
  }
  const auto split = signed_magnitudes(e);
  if (!split) {
    throw PrecisionUnreachableError(
        "decimal_render: enclosure straddles zero, no digits agree", 0);
  }
  const auto& [sign, alo, ahi] = *split;
  const auto agreed = agreed_floor(alo, ahi, digits);
  const std::uint64_t achieved = agreed ? agreed->first : 0;
  if (!agreed || achieved < digits) {
    throw PrecisionUnreachableError(
        "decimal_render: only " + std::to_string(achieved) +
            " fractional digits agree, " + std::to_string(digits) + " requested",
        achieved);
  }

  std::string out = format_digits(agreed->second, digits, sign);
  const Rational radius = e.width() / Rational(2);
  if (radius.is_zero()) {
    out += " (± 0)";
  } else {
    char buf[32];
    std::snprintf(buf, sizeof buf, " (± 1e%+03ld)", pow10_ceiling(radius));
    out += buf;
  }
  return out;
}

Rational pow10(long e) {
  if (e >= 0) return Rational(int_pow(10ul, static_cast<unsigned long>(e)));
  return Rational(mpz_class(1), int_pow(10ul, static_cast<unsigned long>(-e)));
}

long pow10_ceiling(const Rational& x) {
  if (x.sgn() <= 0) throw std::domain_error("pow10_ceiling: x must be positive");
  const long bn = static_cast<long>(mpz_sizeinbase(x.numerator().get_mpz_t(), 2));
  const long bd = static_cast<long>(mpz_sizeinbase(x.denominator().get_mpz_t(), 2));
  long e = static_cast<long>(std::floor(static_cast<double>(bn - bd) * 0.30103)) - 1;
  while (x > pow10(e)) ++e;
  while (x <= pow10(e - 1)) --e;
  return e;
}

}  // namespace vacca
