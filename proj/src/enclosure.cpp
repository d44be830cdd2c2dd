#include "vacca/enclosure.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>

namespace vacca {

namespace {

void require(bool ok, const char* msg) {
  if (!ok) throw std::invalid_argument(msg);
}

mpfr_prec_t checked_precision(mpfr_prec_t p) {
  require(p >= MPFR_PREC_MIN && p <= 1'000'000, "Enclosure: precision out of range");
  return p;
}

}  // namespace

Enclosure::Enclosure(mpfr_prec_t precision_bits) {
  const mpfr_prec_t p = checked_precision(precision_bits);
  mpfr_init2(lo_, p);
  mpfr_init2(hi_, p);
  mpfr_set_zero(lo_, 1);
  mpfr_set_zero(hi_, 1);
}

Enclosure::Enclosure(const Enclosure& o) {
  mpfr_init2(lo_, mpfr_get_prec(o.lo_));
  mpfr_init2(hi_, mpfr_get_prec(o.hi_));
  mpfr_set(lo_, o.lo_, MPFR_RNDD);
  mpfr_set(hi_, o.hi_, MPFR_RNDU);
}

Enclosure::Enclosure(Enclosure&& o) noexcept {
  mpfr_init2(lo_, MPFR_PREC_MIN);
  mpfr_init2(hi_, MPFR_PREC_MIN);
  mpfr_set_zero(lo_, 1);
  mpfr_set_zero(hi_, 1);
  mpfr_swap(lo_, o.lo_);
  mpfr_swap(hi_, o.hi_);
}

Enclosure& Enclosure::operator=(const Enclosure& o) {
  if (this != &o) {
    mpfr_set_prec(lo_, mpfr_get_prec(o.lo_));
    mpfr_set_prec(hi_, mpfr_get_prec(o.hi_));
    mpfr_set(lo_, o.lo_, MPFR_RNDD);
    mpfr_set(hi_, o.hi_, MPFR_RNDU);
  }
  return *this;
}

Enclosure& Enclosure::operator=(Enclosure&& o) noexcept {
  if (this != &o) {
    mpfr_swap(lo_, o.lo_);
    mpfr_swap(hi_, o.hi_);
  }
  return *this;
}

Enclosure::~Enclosure() {
  mpfr_clear(lo_);
  mpfr_clear(hi_);
}

void Enclosure::assert_valid() const {
  if (!mpfr_number_p(lo_) || !mpfr_number_p(hi_) || mpfr_cmp(lo_, hi_) > 0) {
    throw std::logic_error("Enclosure: invalid bounds " + str());
  }
}

Enclosure Enclosure::from_rational(const Rational& r, mpfr_prec_t precision_bits) {
  Enclosure e(precision_bits);
  mpfr_set_q(e.lo_, r.raw().get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(e.hi_, r.raw().get_mpq_t(), MPFR_RNDU);
  e.assert_valid();
  return e;
}

Enclosure Enclosure::from_bounds(const Rational& lo, const Rational& hi,
                                 mpfr_prec_t precision_bits) {
  require(lo <= hi, "Enclosure::from_bounds: lo > hi");
  Enclosure e(precision_bits);
  mpfr_set_q(e.lo_, lo.raw().get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(e.hi_, hi.raw().get_mpq_t(), MPFR_RNDU);
  e.assert_valid();
  return e;
}

Enclosure Enclosure::from_dyadic_bounds(const Rational& lo, const Rational& hi) {
  require(lo <= hi, "Enclosure::from_dyadic_bounds: lo > hi");
  const auto dyadic_bits = [](const Rational& r) -> mpfr_prec_t {
    const mpz_class den = r.denominator();
    require(mpz_popcount(den.get_mpz_t()) == 1,
            "Enclosure::from_dyadic_bounds: denominator not a power of two");
    const mpz_class num = r.numerator();
    const size_t n = num == 0 ? 1 : mpz_sizeinbase(num.get_mpz_t(), 2);
    return static_cast<mpfr_prec_t>(std::max<size_t>(n, MPFR_PREC_MIN));
  };
  Enclosure e(std::max({dyadic_bits(lo), dyadic_bits(hi), kDefaultPrecisionBits}));
  const int tl = mpfr_set_q(e.lo_, lo.raw().get_mpq_t(), MPFR_RNDN);
  const int th = mpfr_set_q(e.hi_, hi.raw().get_mpq_t(), MPFR_RNDN);
  if (tl != 0 || th != 0) {
    throw std::logic_error("Enclosure::from_dyadic_bounds: inexact conversion");
  }
  e.assert_valid();
  return e;
}

mpfr_prec_t Enclosure::precision() const {
  return std::max(mpfr_get_prec(lo_), mpfr_get_prec(hi_));
}

Rational Enclosure::lo() const {
  mpq_class q;
  mpfr_get_q(q.get_mpq_t(), lo_);
  return Rational::from_raw(std::move(q));
}

Rational Enclosure::hi() const {
  mpq_class q;
  mpfr_get_q(q.get_mpq_t(), hi_);
  return Rational::from_raw(std::move(q));
}

Rational Enclosure::width() const { return hi() - lo(); }

Rational Enclosure::midpoint() const { return (lo() + hi()) / Rational(2); }

bool Enclosure::contains(const Rational& x) const {
  return mpfr_cmp_q(lo_, x.raw().get_mpq_t()) <= 0 &&
         mpfr_cmp_q(hi_, x.raw().get_mpq_t()) >= 0;
}

bool Enclosure::contains(const Enclosure& inner) const {
  return mpfr_cmp(lo_, inner.lo_) <= 0 && mpfr_cmp(inner.hi_, hi_) <= 0;
}

bool Enclosure::contains_zero() const {
  return mpfr_sgn(lo_) <= 0 && mpfr_sgn(hi_) >= 0;
}

bool Enclosure::is_positive() const { return mpfr_sgn(lo_) > 0; }

bool Enclosure::is_negative() const { return mpfr_sgn(hi_) < 0; }

bool intersects(const Enclosure& a, const Enclosure& b) {
  return mpfr_cmp(a.hi_, b.lo_) >= 0 && mpfr_cmp(b.hi_, a.lo_) >= 0;
}

std::optional<Enclosure> intersection(const Enclosure& a, const Enclosure& b) {
  if (!intersects(a, b)) return std::nullopt;
  Enclosure r(std::max(a.precision(), b.precision()));
  mpfr_set(r.lo_, mpfr_cmp(a.lo_, b.lo_) >= 0 ? a.lo_ : b.lo_, MPFR_RNDD);
  mpfr_set(r.hi_, mpfr_cmp(a.hi_, b.hi_) <= 0 ? a.hi_ : b.hi_, MPFR_RNDU);
  r.assert_valid();
  return r;
}

Enclosure operator+(const Enclosure& a, const Enclosure& b) {
  Enclosure r(std::max(a.precision(), b.precision()));
  mpfr_add(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
  mpfr_add(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
  r.assert_valid();
  return r;
}

Enclosure operator-(const Enclosure& a, const Enclosure& b) {
  Enclosure r(std::max(a.precision(), b.precision()));
  mpfr_sub(r.lo_, a.lo_, b.hi_, MPFR_RNDD);
  mpfr_sub(r.hi_, a.hi_, b.lo_, MPFR_RNDU);
  r.assert_valid();
  return r;
}

Enclosure operator*(const Enclosure& a, const Enclosure& b) {
  const mpfr_prec_t p = std::max(a.precision(), b.precision());
  Enclosure r(p);
  mpfr_t t;
  mpfr_init2(t, p);
  mpfr_mul(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
  mpfr_mul(t, a.lo_, b.hi_, MPFR_RNDD);
  mpfr_min(r.lo_, r.lo_, t, MPFR_RNDD);
  mpfr_mul(t, a.hi_, b.lo_, MPFR_RNDD);
  mpfr_min(r.lo_, r.lo_, t, MPFR_RNDD);
  mpfr_mul(t, a.hi_, b.hi_, MPFR_RNDD);
  mpfr_min(r.lo_, r.lo_, t, MPFR_RNDD);
  mpfr_mul(r.hi_, a.lo_, b.lo_, MPFR_RNDU);
  mpfr_mul(t, a.lo_, b.hi_, MPFR_RNDU);
  mpfr_max(r.hi_, r.hi_, t, MPFR_RNDU);
  mpfr_mul(t, a.hi_, b.lo_, MPFR_RNDU);
  mpfr_max(r.hi_, r.hi_, t, MPFR_RNDU);
  mpfr_mul(t, a.hi_, b.hi_, MPFR_RNDU);
  mpfr_max(r.hi_, r.hi_, t, MPFR_RNDU);
  mpfr_clear(t);
  r.assert_valid();
  return r;
}

Enclosure operator/(const Enclosure& a, const Enclosure& b) {
  require(b.is_positive() || b.is_negative(),
          "Enclosure: division by an interval containing zero");
  const mpfr_prec_t p = std::max(a.precision(), b.precision());
  Enclosure r(p);
  mpfr_t t;
  mpfr_init2(t, p);
  mpfr_div(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
  mpfr_div(t, a.lo_, b.hi_, MPFR_RNDD);
  mpfr_min(r.lo_, r.lo_, t, MPFR_RNDD);
  mpfr_div(t, a.hi_, b.lo_, MPFR_RNDD);
  mpfr_min(r.lo_, r.lo_, t, MPFR_RNDD);
  mpfr_div(t, a.hi_, b.hi_, MPFR_RNDD);
  mpfr_min(r.lo_, r.lo_, t, MPFR_RNDD);
  mpfr_div(r.hi_, a.lo_, b.lo_, MPFR_RNDU);
  mpfr_div(t, a.lo_, b.hi_, MPFR_RNDU);
  mpfr_max(r.hi_, r.hi_, t, MPFR_RNDU);
  mpfr_div(t, a.hi_, b.lo_, MPFR_RNDU);
  mpfr_max(r.hi_, r.hi_, t, MPFR_RNDU);
  mpfr_div(t, a.hi_, b.hi_, MPFR_RNDU);
  mpfr_max(r.hi_, r.hi_, t, MPFR_RNDU);
  mpfr_clear(t);
  r.assert_valid();
  return r;
}

Enclosure Enclosure::operator-() const {
  Enclosure r(precision());
  mpfr_neg(r.lo_, hi_, MPFR_RNDD);
  mpfr_neg(r.hi_, lo_, MPFR_RNDU);
  r.assert_valid();
  return r;
}

Enclosure abs(const Enclosure& a) {
  Enclosure r(a.precision());
  if (a.is_positive() || (mpfr_sgn(a.lo_) == 0)) {
    mpfr_set(r.lo_, a.lo_, MPFR_RNDD);
    mpfr_set(r.hi_, a.hi_, MPFR_RNDU);
  } else if (a.is_negative() || (mpfr_sgn(a.hi_) == 0)) {
    mpfr_neg(r.lo_, a.hi_, MPFR_RNDD);
    mpfr_neg(r.hi_, a.lo_, MPFR_RNDU);
  } else {
    mpfr_set_zero(r.lo_, 1);
    mpfr_neg(r.hi_, a.lo_, MPFR_RNDU);
    mpfr_max(r.hi_, r.hi_, a.hi_, MPFR_RNDU);
  }
  r.assert_valid();
  return r;
}

Enclosure operator+(const Enclosure& a, const Rational& b) {
  Enclosure r(a.precision());
  mpfr_add_q(r.lo_, a.lo_, b.raw().get_mpq_t(), MPFR_RNDD);
  mpfr_add_q(r.hi_, a.hi_, b.raw().get_mpq_t(), MPFR_RNDU);
  r.assert_valid();
  return r;
}

Enclosure operator-(const Enclosure& a, const Rational& b) {
  Enclosure r(a.precision());
  mpfr_sub_q(r.lo_, a.lo_, b.raw().get_mpq_t(), MPFR_RNDD);
  mpfr_sub_q(r.hi_, a.hi_, b.raw().get_mpq_t(), MPFR_RNDU);
  r.assert_valid();
  return r;
}

Enclosure operator*(const Enclosure& a, const Rational& b) {
  Enclosure r(a.precision());
  if (b.sgn() >= 0) {
    mpfr_mul_q(r.lo_, a.lo_, b.raw().get_mpq_t(), MPFR_RNDD);
    mpfr_mul_q(r.hi_, a.hi_, b.raw().get_mpq_t(), MPFR_RNDU);
  } else {
    mpfr_mul_q(r.lo_, a.hi_, b.raw().get_mpq_t(), MPFR_RNDD);
    mpfr_mul_q(r.hi_, a.lo_, b.raw().get_mpq_t(), MPFR_RNDU);
  }
  r.assert_valid();
  return r;
}

Enclosure operator/(const Enclosure& a, const Rational& b) {
  require(!b.is_zero(), "Enclosure: division by zero rational");
  Enclosure r(a.precision());
  if (b.sgn() > 0) {
    mpfr_div_q(r.lo_, a.lo_, b.raw().get_mpq_t(), MPFR_RNDD);
    mpfr_div_q(r.hi_, a.hi_, b.raw().get_mpq_t(), MPFR_RNDU);
  } else {
    mpfr_div_q(r.lo_, a.hi_, b.raw().get_mpq_t(), MPFR_RNDD);
    mpfr_div_q(r.hi_, a.lo_, b.raw().get_mpq_t(), MPFR_RNDU);
  }
  r.assert_valid();
  return r;
}

Enclosure& Enclosure::accumulate(const Enclosure& term) {
  mpfr_add(lo_, lo_, term.lo_, MPFR_RNDD);
  mpfr_add(hi_, hi_, term.hi_, MPFR_RNDU);
  return *this;
}

Enclosure& Enclosure::accumulate(const Rational& term) {
  mpfr_add_q(lo_, lo_, term.raw().get_mpq_t(), MPFR_RNDD);
  mpfr_add_q(hi_, hi_, term.raw().get_mpq_t(), MPFR_RNDU);
  return *this;
}

Enclosure& Enclosure::accumulate_scaled(long c, const Enclosure& term) {
  if (c == 0) return *this;
  mpfr_t t;
  mpfr_init2(t, std::max(precision(), term.precision()));
  if (c > 0) {
    mpfr_mul_si(t, term.lo_, c, MPFR_RNDD);
    mpfr_add(lo_, lo_, t, MPFR_RNDD);
    mpfr_mul_si(t, term.hi_, c, MPFR_RNDU);
    mpfr_add(hi_, hi_, t, MPFR_RNDU);
  } else {
    mpfr_mul_si(t, term.hi_, c, MPFR_RNDD);
    mpfr_add(lo_, lo_, t, MPFR_RNDD);
    mpfr_mul_si(t, term.lo_, c, MPFR_RNDU);
    mpfr_add(hi_, hi_, t, MPFR_RNDU);
  }
  mpfr_clear(t);
  return *this;
}

Enclosure Enclosure::scaled_by(long c) const {
  Enclosure r(precision());
  if (c >= 0) {
    mpfr_mul_si(r.lo_, lo_, c, MPFR_RNDD);
    mpfr_mul_si(r.hi_, hi_, c, MPFR_RNDU);
  } else {
    mpfr_mul_si(r.lo_, hi_, c, MPFR_RNDD);
    mpfr_mul_si(r.hi_, lo_, c, MPFR_RNDU);
  }
  r.assert_valid();
  return r;
}

Enclosure Enclosure::widened_by(const Rational& radius) const {
  require(radius.sgn() >= 0, "Enclosure::widened_by: negative radius");
  Enclosure r(precision());
  mpfr_sub_q(r.lo_, lo_, radius.raw().get_mpq_t(), MPFR_RNDD);
  mpfr_add_q(r.hi_, hi_, radius.raw().get_mpq_t(), MPFR_RNDU);
  r.assert_valid();
  return r;
}

std::string Enclosure::str(size_t digits) const {
  char* s = nullptr;
  const int n = mpfr_asprintf(&s, "[%.*RDe, %.*RUe]", static_cast<int>(digits),
                              lo_, static_cast<int>(digits), hi_);
  if (n < 0 || s == nullptr) return "[?, ?]";
  std::string out(s);
  mpfr_free_str(s);
  return out;
}

std::ostream& operator<<(std::ostream& os, const Enclosure& e) {
  return os << e.str();
}

}  // namespace vacca
