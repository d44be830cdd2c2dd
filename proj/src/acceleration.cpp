#include "vacca/acceleration.hpp"

#include <stdexcept>

#include "vacca/numerics.hpp"

namespace vacca {

namespace {

void require_base(unsigned q, const char* fn) {
  if (q < 2) throw std::domain_error(std::string(fn) + ": q must be >= 2");
}

// poly *= (qx + j), coefficients ascending.
void mul_linear(std::vector<mpz_class>& poly, unsigned q, unsigned j) {
  std::vector<mpz_class> out(poly.size() + 1);
  for (size_t i = 0; i < poly.size(); ++i) {
    out[i] += poly[i] * j;
    out[i + 1] += poly[i] * q;
  }
  poly = std::move(out);
}

}  // namespace

mpz_class PPoly::eval(const mpz_class& x) const {
  mpz_class acc = 0;
  for (size_t i = coefficients.size(); i-- > 0;) {
    acc = acc * x + coefficients[i];
  }
  return acc;
}

PPoly build_p_poly(unsigned q) {
  require_base(q, "build_p_poly");
  std::vector<mpz_class> total(q - 1);
  for (unsigned m = 1; m <= q - 1; ++m) {
    std::vector<mpz_class> prod{mpz_class(static_cast<unsigned long>(m) * (q - m))};
    for (unsigned j = 1; j <= q - 1; ++j) {
      if (j != m) mul_linear(prod, q, j);
    }
    for (size_t i = 0; i < prod.size(); ++i) total[i] += prod[i];
  }
  return PPoly{q, std::move(total)};
}

mpz_class p_poly_direct_eval(unsigned q, const mpz_class& n) {
  require_base(q, "p_poly_direct_eval");
  mpz_class total = 0;
  for (unsigned m = 1; m <= q - 1; ++m) {
    mpz_class prod = static_cast<unsigned long>(m) * (q - m);
    for (unsigned j = 1; j <= q - 1; ++j) {
      if (j != m) prod *= q * n + j;
    }
    total += prod;
  }
  return total;
}

Rational averaged_identity_residual(unsigned q, std::uint64_t n) {
  return averaged_identity_residual(build_p_poly(q), n);
}

Rational averaged_identity_residual(const PPoly& poly, std::uint64_t n) {
  if (n < 1) throw std::domain_error("averaged_identity_residual: n must be >= 1");
  const unsigned q = poly.q;
  const mpz_class a = mpz_class(static_cast<unsigned long>(n)) * q;

  Rational lhs(mpz_class(q - 1), a);
  for (unsigned m = 1; m <= q - 1; ++m) {
    lhs -= Rational(mpz_class(2), a + m);
  }
  lhs += Rational(mpz_class(q - 1), a + q);

  mpz_class den = a;
  for (unsigned j = 1; j <= q; ++j) den *= a + j;
  const Rational rhs(2 * poly.eval(mpz_class(static_cast<unsigned long>(n))), den);
  return lhs - rhs;
}

long two_m_minus_q_sum(unsigned q) {
  require_base(q, "two_m_minus_q_sum");
  long s = 0;
  for (unsigned m = 1; m <= q - 1; ++m) {
    s += 2 * static_cast<long>(m) - static_cast<long>(q);
  }
  return s;
}

Enclosure speedup_factor(unsigned q, mpfr_prec_t precision_bits) {
  require_base(q, "speedup_factor");
  Enclosure ln_q(precision_bits + 16);
  for (unsigned j = 1; j <= q - 1; ++j) {
    ln_q.accumulate(log_ratio(j, precision_bits));
  }
  const Rational factor(mpz_class(static_cast<unsigned long>(q)) * q - 1,
                        mpz_class(static_cast<unsigned long>(q)) * q);
  return Enclosure::from_rational(factor, precision_bits + 16) / ln_q;
}

Rational shape_ratio(unsigned q, std::uint64_t n) {
  return shape_ratio(build_p_poly(q), n);
}

Rational shape_ratio(const PPoly& poly, std::uint64_t n) {
  if (n < 1) throw std::domain_error("shape_ratio: n must be >= 1");
  const unsigned q = poly.q;
  const mpz_class nz(static_cast<unsigned long>(n));
  const mpz_class a = nz * q;
  mpz_class den = a;
  for (unsigned j = 1; j <= q; ++j) den *= a + j;
  const Rational term(poly.eval(nz), den);

  const mpz_class q2(mpz_class(static_cast<unsigned long>(q)) * q);
  const Rational model(q2 - 1, q2 * 6 * nz * nz * nz);
  return term / model;
}

}  // namespace vacca
