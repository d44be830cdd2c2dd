#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "vacca/acceleration.hpp"

#include <cstdint>
#include <vector>

#include "vacca/enclosure.hpp"
#include "vacca/rational.hpp"

using namespace vacca;

TEST_CASE("small acceleration polynomials are known exactly") {
  CHECK(build_p_poly(2).coefficients == std::vector<mpz_class>{1});
  CHECK(build_p_poly(3).coefficients == std::vector<mpz_class>{6, 12});
  CHECK(build_p_poly(4).coefficients == std::vector<mpz_class>{36, 160, 160});
  CHECK(build_p_poly(2).degree() == 0);
  CHECK(build_p_poly(5).degree() == 3);
  CHECK_THROWS_AS(build_p_poly(1), std::domain_error);
}

TEST_CASE("polynomial shape invariants hold for every base") {
  for (unsigned q = 2; q <= 12; ++q) {
    const PPoly p = build_p_poly(q);
    CAPTURE(q);
    CHECK(p.q == q);
    CHECK(p.coefficients.size() == q - 1);
    CHECK(p.degree() == q - 2);
    for (const mpz_class& c : p.coefficients) CHECK(c > 0);
    const mpz_class want_leading =
        int_pow(mpz_class(q), q - 2) * q * (mpz_class(q) * q - 1) / 6;
    CHECK(p.leading() == want_leading);
  }
}

TEST_CASE("expanded coefficients match the unexpanded evaluation") {
  for (unsigned q = 2; q <= 12; ++q) {
    const PPoly p = build_p_poly(q);
    for (std::uint64_t n = 0; n < 100; ++n) {
      CAPTURE(q);
      CAPTURE(n);
      const mpz_class x(static_cast<unsigned long>(n));
      CHECK(p.eval(x) == p_poly_direct_eval(q, x));
    }
  }
}

TEST_CASE("averaging identity residual vanishes identically") {
  CHECK(averaged_identity_residual(2, 1) == Rational(0));
  CHECK(averaged_identity_residual(3, 5) == Rational(0));
  CHECK(averaged_identity_residual(12, 100) == Rational(0));
  for (unsigned q = 2; q <= 12; ++q) {
    for (std::uint64_t n = 1; n <= 40; ++n) {
      CAPTURE(q);
      CAPTURE(n);
      CHECK(averaged_identity_residual(q, n) == Rational(0));
    }
  }
  CHECK_THROWS_AS(averaged_identity_residual(2, 0), std::domain_error);
}

TEST_CASE("a perturbed polynomial breaks the averaging identity") {
  for (unsigned q : {2u, 5u}) {
    PPoly p = build_p_poly(q);
    p.coefficients[0] += 1;
    CAPTURE(q);
    CHECK(averaged_identity_residual(p, 7) != Rational(0));
    CHECK(averaged_identity_residual(build_p_poly(q), 7) == Rational(0));
  }
}

TEST_CASE("the symmetric weight sum is zero") {
  for (unsigned q = 2; q <= 200; ++q) {
    CHECK(two_m_minus_q_sum(q) == 0);
  }
}

TEST_CASE("speedup factors are positive and strictly decreasing in q") {
  const Enclosure base = speedup_factor(2, 96);
  CHECK(base.lo() > Rational(1082, 1000));
  CHECK(base.hi() < Rational(10821, 10000));
  Enclosure prev = base;
  for (unsigned q = 3; q <= 12; ++q) {
    const Enclosure next = speedup_factor(q, 96);
    CAPTURE(q);
    CHECK(next.is_positive());
    CHECK(next.hi() < prev.lo());
    prev = next;
  }
}

TEST_CASE("shape ratio starts at 1/3 and approaches 1") {
  CHECK(shape_ratio(2, 1) == Rational(1, 3));
  for (unsigned q : {2u, 3u, 10u}) {
    for (std::uint64_t n : {10u, 100u, 1000u}) {
      const Rational dev = abs(shape_ratio(q, n) - Rational(1));
      CAPTURE(q);
      CAPTURE(n);
      CHECK(dev <= Rational(3, 2) / Rational(static_cast<long>(n)));
    }
  }
  CHECK_THROWS_AS(shape_ratio(2, 0), std::domain_error);
}

TEST_CASE("shape ratio reacts to a perturbed polynomial") {
  const PPoly honest = build_p_poly(3);
  PPoly bent = honest;
  bent.coefficients[1] += 6;
  CHECK(shape_ratio(honest, 50) != shape_ratio(bent, 50));
}
