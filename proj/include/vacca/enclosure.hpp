#pragma once

#include <mpfr.h>

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "vacca/rational.hpp"

namespace vacca {

inline constexpr mpfr_prec_t kDefaultPrecisionBits = 64;

// Closed interval [lo, hi] of binary floating-point numbers.  Every
// operation rounds lo down and hi up, so an enclosure built from enclosures
// of x and y contains every possible value of the combined expression.
// Bounds are finite dyadic rationals; lo <= hi always holds.
class Enclosure {
 public:
  explicit Enclosure(mpfr_prec_t precision_bits = kDefaultPrecisionBits);
  Enclosure(const Enclosure& o);
  Enclosure(Enclosure&& o) noexcept;
  Enclosure& operator=(const Enclosure& o);
  Enclosure& operator=(Enclosure&& o) noexcept;
  ~Enclosure();

  // Tightest enclosure of r at the given precision.
  static Enclosure from_rational(const Rational& r, mpfr_prec_t precision_bits);
  // Outward-rounded [lo, hi]; requires lo <= hi.
  static Enclosure from_bounds(const Rational& lo, const Rational& hi,
                               mpfr_prec_t precision_bits);
  // Exact [lo, hi] from dyadic rationals, grown to whatever precision
  // represents them without rounding.  Throws if either bound has a
  // denominator that is not a power of two.
  static Enclosure from_dyadic_bounds(const Rational& lo, const Rational& hi);

  mpfr_prec_t precision() const;

  // Bounds and width, recovered exactly (every mpfr value is rational).
  Rational lo() const;
  Rational hi() const;
  Rational width() const;
  Rational midpoint() const;

  bool contains(const Rational& x) const;
  bool contains(const Enclosure& inner) const;
  bool contains_zero() const;
  bool is_positive() const;  // lo > 0
  bool is_negative() const;  // hi < 0

  friend bool intersects(const Enclosure& a, const Enclosure& b);
  friend std::optional<Enclosure> intersection(const Enclosure& a, const Enclosure& b);

  friend Enclosure operator+(const Enclosure& a, const Enclosure& b);
  friend Enclosure operator-(const Enclosure& a, const Enclosure& b);
  friend Enclosure operator*(const Enclosure& a, const Enclosure& b);
  // Requires b to exclude zero.
  friend Enclosure operator/(const Enclosure& a, const Enclosure& b);
  Enclosure operator-() const;
  friend Enclosure abs(const Enclosure& a);

  friend Enclosure operator+(const Enclosure& a, const Rational& b);
  friend Enclosure operator-(const Enclosure& a, const Rational& b);
  friend Enclosure operator*(const Enclosure& a, const Rational& b);
  friend Enclosure operator/(const Enclosure& a, const Rational& b);

  // In-place accumulation used by the summation kernels; no temporaries.
  Enclosure& accumulate(const Enclosure& term);
  Enclosure& accumulate(const Rational& term);
  // *this += c * term, for an exact integer coefficient.
  Enclosure& accumulate_scaled(long c, const Enclosure& term);

  Enclosure scaled_by(long c) const;
  // Enclosure widened outward by radius >= 0 on both sides.
  Enclosure widened_by(const Rational& radius) const;

  std::string str(size_t digits = 20) const;  // "[lo, hi]" diagnostic form

 private:
  void assert_valid() const;

  mpfr_t lo_;
  mpfr_t hi_;
};

std::ostream& operator<<(std::ostream& os, const Enclosure& e);

}  // namespace vacca
