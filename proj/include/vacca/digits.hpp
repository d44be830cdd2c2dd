#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace vacca {

// Sign tag shared by the paired constants: plus selects the Euler constant
// gamma, minus its alternating analog ln(4/pi).
enum class Sign { plus, minus };

constexpr int sign_unit(Sign s) { return s == Sign::plus ? 1 : -1; }
std::string to_string(Sign s);

// Exact binary digit statistics of a positive integer n: zeros = N0(n),
// ones = N1(n).  zeros + ones is the bit length, ones >= 1.
struct DigitCounts {
  std::uint64_t zeros = 0;
  std::uint64_t ones = 0;

  std::uint64_t bit_length() const { return zeros + ones; }
};

// delta(n, plus)  = N1(n) + N0(n)  (bit length, equals floor(log2 n) + 1)
// delta(n, minus) = N1(n) - N0(n)  (negation of the "binary digit excess"
//                                   sequence that counts zeros minus ones)
struct SignedDelta {
  Sign sign = Sign::plus;
  std::int64_t value = 0;
};

DigitCounts count_binary_digits(std::uint64_t n);
DigitCounts count_binary_digits(const mpz_class& n);

std::int64_t delta(std::uint64_t n, Sign sign);
std::int64_t delta(const mpz_class& n, Sign sign);
SignedDelta signed_delta(std::uint64_t n, Sign sign);

// floor(log_q n) for n >= 1, q >= 2, via exact integer powers.
std::uint64_t floor_log(std::uint64_t n, unsigned q);
std::uint64_t floor_log(const mpz_class& n, unsigned q);

// epsilon(n) = q - 1 when q divides n, otherwise -1.  Sums to zero over
// every block of q consecutive arguments.
std::int64_t epsilon(std::uint64_t n, unsigned q);
std::int64_t epsilon(const mpz_class& n, unsigned q);

}  // namespace vacca
