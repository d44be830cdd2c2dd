#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "vacca/numerics.hpp"

#include <cstdint>
#include <vector>

#include "vacca/enclosure.hpp"
#include "vacca/rational.hpp"

using namespace vacca;

namespace {

// Independent bracket for ln((n+1)/n), written against the textbook
// expansion -ln(1 - 1/(n+1)) = sum_{k>=1} 1/(k (n+1)^k) rather than the
// odd-power form the library uses.  Every partial sum is a strict lower
// bound; the omitted tail is below (n+1)^(-K) / ((K+1) n), so the window
// [S_K, S_K + tail] contains the exact logarithm.
struct LogBracket {
  Rational lo;
  Rational hi;
};

LogBracket mercator_bracket(std::uint64_t n, const Rational& eps) {
  const mpz_class base = mpz_class(static_cast<unsigned long>(n)) + 1;
  Rational sum(0);
  mpz_class power(1);
  for (unsigned long k = 1;; ++k) {
    power *= base;
    sum += Rational(mpz_class(1), mpz_class(k * power));
    const Rational tail(mpz_class(1),
                        mpz_class((k + 1) * power * static_cast<unsigned long>(n)));
    if (tail <= eps) return LogBracket{sum, sum + tail};
  }
}

const std::vector<std::uint64_t> kSampleN = {1, 2, 3, 7, 10, 100, 12345};

}  // namespace

TEST_CASE("log_ratio straddles the independent series bracket") {
  for (const std::uint64_t n : kSampleN) {
    for (const mpfr_prec_t p : {24, 53, 96}) {
      CAPTURE(n);
      CAPTURE(p);
      const Enclosure e = log_ratio(n, p);
      // The bracket pins the logarithm 2^40 times tighter than e's width
      // contract, so an enclosure off by more than that fails one side.
      const LogBracket b = mercator_bracket(n, Rational::pow2(-(p + 40)));
      CHECK(e.hi() > b.lo);
      CHECK(e.lo() < b.hi);
      CHECK(e.width() <= Rational::pow2(1 - p));
    }
  }
}

TEST_CASE("log_ratio rejects bad arguments") {
  CHECK_THROWS_AS(log_ratio(0, 96), std::domain_error);
  CHECK_THROWS_AS(log_ratio(5, 8), std::invalid_argument);
}

TEST_CASE("a_term complements log_ratio to exactly 1/n") {
  for (const std::uint64_t n : kSampleN) {
    const ATerm a = a_term(n, 96);
    const Enclosure lr = log_ratio(n, 96);
    CHECK(a.n == n);
    CHECK((a.value + lr).contains(Rational(1, static_cast<long>(n))));
  }
}

TEST_CASE("a_term stays inside the strict positivity window") {
  for (const std::uint64_t n : kSampleN) {
    const ATerm a = a_term(n, 96);
    const long ln = static_cast<long>(n);
    CAPTURE(n);
    CHECK(a.value.lo() > Rational(0));
    CHECK(a.value.hi() < Rational(1, ln) - Rational(1, ln + 1));
    CHECK(a.value.width() <= Rational::pow2(2 - 96));
  }
}

TEST_CASE("decimal_render of rationals rounds ties away from zero") {
  CHECK(decimal_render(Rational(1, 3), 10) == "0.3333333333");
  CHECK(decimal_render(Rational(2, 3), 3) == "0.667");
  CHECK(decimal_render(Rational(-1, 8), 2) == "-0.13");
  CHECK(decimal_render(Rational(5, 4), 1) == "1.3");
  CHECK(decimal_render(Rational(7), 2) == "7.00");
  CHECK(decimal_render(Rational(0), 3) == "0.000");
  CHECK_THROWS_AS(decimal_render(Rational(1, 3), 0), std::invalid_argument);
}

TEST_CASE("decimal_render of enclosures reports the radius") {
  const Enclosure point = Enclosure::from_dyadic_bounds(Rational(1, 4), Rational(1, 4));
  CHECK(decimal_render(point, 4) == "0.2500 (± 0)");

  const Enclosure wide =
      Enclosure::from_bounds(Rational(3, 25), Rational(13, 100), 96);
  CHECK(decimal_render(wide, 1) == "0.1 (± 1e-02)");
  try {
    decimal_render(wide, 3);
    FAIL("expected PrecisionUnreachableError");
  } catch (const PrecisionUnreachableError& e) {
    CHECK(e.achieved_digits() == 1);
  }

  const Enclosure straddling =
      Enclosure::from_bounds(Rational(-1), Rational(1), 64);
  try {
    decimal_render(straddling, 1);
    FAIL("expected PrecisionUnreachableError");
  } catch (const PrecisionUnreachableError& e) {
    CHECK(e.achieved_digits() == 0);
  }
}

TEST_CASE("agreed_prefix returns the shared decimal head") {
  const Enclosure half = Enclosure::from_dyadic_bounds(Rational(1, 2), Rational(1, 2));
  CHECK(agreed_prefix(half, 3) == "0.500");

  const Enclosure wide =
      Enclosure::from_bounds(Rational(3, 25), Rational(13, 100), 96);
  CHECK(agreed_prefix(wide) == "0.1");
  CHECK(agreed_fractional_digits(wide) == 1);

  const Enclosure negative = Enclosure::from_bounds(
      Rational(-25002, 100000), Rational(-24998, 100000), 96);
  CHECK(agreed_prefix(negative) == "-0.2");
  CHECK(agreed_fractional_digits(negative) == 1);

  const Enclosure tight = Enclosure::from_bounds(
      Rational(577215, 1000000), Rational(577216, 1000000), 96);
  CHECK(agreed_prefix(tight) == "0.57721");
  CHECK(agreed_fractional_digits(tight) == 5);

  const Enclosure straddling = Enclosure::from_bounds(Rational(-1, 3), Rational(1, 3), 64);
  CHECK(agreed_prefix(straddling) == "");
  CHECK(agreed_fractional_digits(straddling) == 0);

  const Enclosure integers = Enclosure::from_bounds(Rational(9), Rational(11), 64);
  CHECK(agreed_prefix(integers) == "");
}

TEST_CASE("pow10 and its ceiling exponent") {
  CHECK(pow10(3) == Rational(1000));
  CHECK(pow10(0) == Rational(1));
  CHECK(pow10(-2) == Rational(1, 100));

  CHECK(pow10_ceiling(Rational(1)) == 0);
  CHECK(pow10_ceiling(Rational(1, 1000)) == -3);
  CHECK(pow10_ceiling(Rational(3, 100)) == -1);
  CHECK(pow10_ceiling(Rational(11)) == 2);
  CHECK(pow10_ceiling(Rational(10)) == 1);
  CHECK(pow10_ceiling(pow10(-7)) == -7);
  CHECK_THROWS_AS(pow10_ceiling(Rational(0)), std::domain_error);
  CHECK_THROWS_AS(pow10_ceiling(Rational(-1)), std::domain_error);
}
