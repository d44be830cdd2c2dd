#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>

namespace vacca {

// Arbitrary-precision rational, always held in canonical form: gcd(num, den)
// = 1 and den > 0.  Every constructor and operator re-establishes that
// invariant, so equality is plain value equality.
class Rational {
 public:
  Rational() : v_(0) {}
  Rational(long v) : v_(v) {}  // NOLINT(google-explicit-constructor)
  Rational(long num, long den);
  explicit Rational(mpz_class num) : v_(std::move(num)) {}
  Rational(const mpz_class& num, const mpz_class& den);

  // Adopts an mpq value, canonicalizing it first.
  static Rational from_raw(mpq_class v);
  // 2^e for e of either sign.
  static Rational pow2(long e);

  mpz_class numerator() const { return v_.get_num(); }
  mpz_class denominator() const { return v_.get_den(); }
  const mpq_class& raw() const { return v_; }

  int sgn() const { return mpq_sgn(v_.get_mpq_t()); }
  bool is_zero() const { return sgn() == 0; }
  bool is_integer() const { return v_.get_den() == 1; }

  Rational& operator+=(const Rational& o);
  Rational& operator-=(const Rational& o);
  Rational& operator*=(const Rational& o);
  Rational& operator/=(const Rational& o);  // throws std::domain_error on /0

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  Rational operator-() const;

  friend bool operator==(const Rational& a, const Rational& b) {
    return mpq_equal(a.v_.get_mpq_t(), b.v_.get_mpq_t()) != 0;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = mpq_cmp(a.v_.get_mpq_t(), b.v_.get_mpq_t());
    return c <=> 0;
  }

  friend Rational abs(const Rational& a);

  // "num/den", or just "num" for integers.
  std::string str() const;

 private:
  mpq_class v_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

// base^exp as an exact integer.
mpz_class int_pow(unsigned long base, unsigned long exp);
mpz_class int_pow(const mpz_class& base, unsigned long exp);

}  // namespace vacca
