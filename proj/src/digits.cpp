#include "vacca/digits.hpp"

#include <bit>
#include <stdexcept>

namespace vacca {

namespace {

void require_positive(bool ok, const char* fn) {
  if (!ok) throw std::domain_error(std::string(fn) + ": n must be >= 1");
}

void require_base(unsigned q, const char* fn) {
  if (q < 2) throw std::domain_error(std::string(fn) + ": q must be >= 2");
}

}  // namespace

std::string to_string(Sign s) { return s == Sign::plus ? "plus" : "minus"; }

DigitCounts count_binary_digits(std::uint64_t n) {
  require_positive(n >= 1, "count_binary_digits");
  const std::uint64_t bits = std::bit_width(n);
  const std::uint64_t ones = std::popcount(n);
  return DigitCounts{bits - ones, ones};
}

DigitCounts count_binary_digits(const mpz_class& n) {
  require_positive(sgn(n) > 0, "count_binary_digits");
  const std::uint64_t bits = mpz_sizeinbase(n.get_mpz_t(), 2);
  const std::uint64_t ones = mpz_popcount(n.get_mpz_t());
  return DigitCounts{bits - ones, ones};
}

std::int64_t delta(std::uint64_t n, Sign sign) {
  const DigitCounts c = count_binary_digits(n);
  return sign == Sign::plus
             ? static_cast<std::int64_t>(c.ones + c.zeros)
             : static_cast<std::int64_t>(c.ones) - static_cast<std::int64_t>(c.zeros);
}

std::int64_t delta(const mpz_class& n, Sign sign) {
  const DigitCounts c = count_binary_digits(n);
  return sign == Sign::plus
             ? static_cast<std::int64_t>(c.ones + c.zeros)
             : static_cast<std::int64_t>(c.ones) - static_cast<std::int64_t>(c.zeros);
}

SignedDelta signed_delta(std::uint64_t n, Sign sign) {
  return SignedDelta{sign, delta(n, sign)};
}

std::uint64_t floor_log(std::uint64_t n, unsigned q) {
  require_positive(n >= 1, "floor_log");
  require_base(q, "floor_log");
  if (q == 2) return std::bit_width(n) - 1;
  // p <= n/q in integer arithmetic is exactly p*q <= n, so p never overflows.
  std::uint64_t p = 1;
  std::uint64_t level = 0;
  while (p <= n / q) {
    p *= q;
    ++level;
  }
  return level;
}

std::uint64_t floor_log(const mpz_class& n, unsigned q) {
  require_positive(sgn(n) > 0, "floor_log");
  require_base(q, "floor_log");
  if (n.fits_ulong_p()) return floor_log(static_cast<std::uint64_t>(n.get_ui()), q);
  if (q == 2) return mpz_sizeinbase(n.get_mpz_t(), 2) - 1;
  mpz_class p = q;
  std::uint64_t level = 0;
  while (p <= n) {
    p *= q;
    ++level;
  }
  return level;
}

std::int64_t epsilon(std::uint64_t n, unsigned q) {
  require_positive(n >= 1, "epsilon");
  require_base(q, "epsilon");
  return n % q == 0 ? static_cast<std::int64_t>(q) - 1 : -1;
}

std::int64_t epsilon(const mpz_class& n, unsigned q) {
  require_positive(sgn(n) > 0, "epsilon");
  require_base(q, "epsilon");
  return mpz_divisible_ui_p(n.get_mpz_t(), q) ? static_cast<std::int64_t>(q) - 1 : -1;
}

}  // namespace vacca
