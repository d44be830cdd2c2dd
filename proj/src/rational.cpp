#include "vacca/rational.hpp"

#include <ostream>
#include <stdexcept>
#include <utility>

namespace vacca {

namespace {

void require_nonzero_den(bool ok) {
  if (!ok) throw std::domain_error("Rational: zero denominator");
}

}  // namespace

Rational::Rational(long num, long den) {
  require_nonzero_den(den != 0);
  v_ = mpq_class(mpz_class(num), mpz_class(den));
  v_.canonicalize();
}

Rational::Rational(const mpz_class& num, const mpz_class& den) {
  require_nonzero_den(::sgn(den) != 0);
  v_ = mpq_class(num, den);
  v_.canonicalize();
}

Rational Rational::from_raw(mpq_class v) {
  require_nonzero_den(mpz_sgn(mpq_denref(v.get_mpq_t())) != 0);
  v.canonicalize();
  Rational r;
  r.v_ = std::move(v);
  return r;
}

Rational Rational::pow2(long e) {
  mpq_class v(1);
  if (e >= 0) {
    mpz_mul_2exp(mpq_numref(v.get_mpq_t()), mpq_numref(v.get_mpq_t()),
                 static_cast<unsigned long>(e));
  } else {
    mpz_mul_2exp(mpq_denref(v.get_mpq_t()), mpq_denref(v.get_mpq_t()),
                 static_cast<unsigned long>(-e));
  }
  Rational r;
  r.v_ = std::move(v);
  return r;
}

Rational& Rational::operator+=(const Rational& o) {
  v_ += o.v_;
  return *this;
}

Rational& Rational::operator-=(const Rational& o) {
  v_ -= o.v_;
  return *this;
}

Rational& Rational::operator*=(const Rational& o) {
  v_ *= o.v_;
  return *this;
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw std::domain_error("Rational: division by zero");
  v_ /= o.v_;
  return *this;
}

Rational Rational::operator-() const {
  Rational r;
  r.v_ = -v_;
  return r;
}

Rational abs(const Rational& a) {
  Rational r;
  r.v_ = abs(a.v_);
  return r;
}

std::string Rational::str() const { return v_.get_str(); }

std::ostream& operator<<(std::ostream& os, const Rational& r) {
  return os << r.str();
}

mpz_class int_pow(unsigned long base, unsigned long exp) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), base, exp);
  return r;
}

mpz_class int_pow(const mpz_class& base, unsigned long exp) {
  mpz_class r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
  return r;
}

}  // namespace vacca
