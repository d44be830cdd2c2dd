#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include "vacca/enclosure.hpp"
#include "vacca/rational.hpp"

namespace vacca {

inline constexpr mpfr_prec_t kMinPrecisionBits = 16;

// Thrown when an enclosure is too wide to guarantee the requested number of
// decimal digits.
class PrecisionUnreachableError : public std::runtime_error {
 public:
  PrecisionUnreachableError(std::string msg, std::uint64_t achieved_digits)
      : std::runtime_error(std::move(msg)), achieved_digits_(achieved_digits) {}

  std::uint64_t achieved_digits() const { return achieved_digits_; }

 private:
  std::uint64_t achieved_digits_;
};

// Certified enclosure of ln((n+1)/n), width at most 2^(1-p) for p =
// precision_bits.  Computed from the odd-power expansion
//   ln((n+1)/n) = 2 * sum_{k>=0} x^(2k+1)/(2k+1),  x = 1/(2n+1),
// summed exactly in rationals; the truncation error is bounded by the first
// omitted term divided by (1 - x^2) and added to the upper bound.
Enclosure log_ratio(std::uint64_t n, mpfr_prec_t precision_bits);

// a_term(n) encloses A(n) = 1/n - ln((n+1)/n), the shared building block of
// the logarithmic series; 0 < A(n) < 1/(n(n+1)).  Width at most 2^(2-p).
struct ATerm {
  std::uint64_t n = 0;
  Enclosure value;
};

ATerm a_term(std::uint64_t n, mpfr_prec_t precision_bits);

// Correctly rounded decimal expansion of r with `digits` fractional digits
// (ties rounded away from zero), e.g. (1/3, 10) -> "0.3333333333".
std::string decimal_render(const Rational& r, std::uint64_t digits);

// Decimal digits guaranteed by an enclosure: the longest common prefix of
// the truncated decimal expansions of the two endpoints.  Throws
// PrecisionUnreachableError if fewer than `digits` fractional digits agree;
// otherwise returns the prefix with an appended radius report, e.g.
// "0.577215 (± 1e-07)".
std::string decimal_render(const Enclosure& e, std::uint64_t digits);

// The longest agreed prefix itself (no radius report), capped at max_digits
// fractional digits.  Empty when the enclosure straddles zero.
std::string agreed_prefix(const Enclosure& e, std::uint64_t max_digits = 48);

// Number of agreed fractional digits, capped at max_digits.
std::uint64_t agreed_fractional_digits(const Enclosure& e,
                                       std::uint64_t max_digits = 48);

// Smallest integer exponent e with x <= 10^e; x must be positive.
long pow10_ceiling(const Rational& x);

// 10^e for e of either sign.
Rational pow10(long e);

}  // namespace vacca
