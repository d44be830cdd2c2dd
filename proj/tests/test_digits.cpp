#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "vacca/digits.hpp"

#include <cstdint>
#include <vector>

using namespace vacca;

namespace {

// Digit statistics recomputed by repeated division, independent of the bit
// tricks in the implementation.
DigitCounts counts_by_division(std::uint64_t n) {
  DigitCounts c;
  while (n > 0) {
    if (n % 2 == 1) {
      ++c.ones;
    } else {
      ++c.zeros;
    }
    n /= 2;
  }
  return c;
}

}  // namespace

TEST_CASE("binary digit counts match repeated division") {
  for (std::uint64_t n = 1; n <= 4096; ++n) {
    const DigitCounts got = count_binary_digits(n);
    const DigitCounts want = counts_by_division(n);
    CAPTURE(n);
    CHECK(got.zeros == want.zeros);
    CHECK(got.ones == want.ones);
    CHECK(got.bit_length() == want.zeros + want.ones);
    CHECK(got.ones >= 1);
  }
}

TEST_CASE("digit counts agree across integer representations") {
  const std::vector<std::uint64_t> ns = {1, 2, 3, 1023, 1024, 999999937,
                                         (std::uint64_t{1} << 40) + 12345};
  for (const std::uint64_t n : ns) {
    const DigitCounts a = count_binary_digits(n);
    const DigitCounts b = count_binary_digits(mpz_class(static_cast<unsigned long>(n)));
    CHECK(a.zeros == b.zeros);
    CHECK(a.ones == b.ones);
  }
}

TEST_CASE("delta plus is the bit length") {
  CHECK(delta(1, Sign::plus) == 1);
  CHECK(delta(2, Sign::plus) == 2);
  CHECK(delta(255, Sign::plus) == 8);
  CHECK(delta(256, Sign::plus) == 9);
  for (std::uint64_t n = 1; n <= 2048; ++n) {
    CHECK(delta(n, Sign::plus) == static_cast<std::int64_t>(floor_log(n, 2)) + 1);
  }
}

TEST_CASE("delta minus leading values") {
  const std::vector<std::int64_t> want = {1, 0, 2, -1, 1, 1, 3, -2};
  for (std::size_t i = 0; i < want.size(); ++i) {
    CHECK(delta(i + 1, Sign::minus) == want[i]);
  }
  CHECK(delta(mpz_class(4), Sign::minus) == -1);
  CHECK(signed_delta(7, Sign::minus).value == 3);
  CHECK(signed_delta(7, Sign::plus).value == 3);
}

TEST_CASE("halving recursion holds for both deltas") {
  for (std::uint64_t n = 2; n <= (std::uint64_t{1} << 16); ++n) {
    const std::int64_t parity = n % 2 == 1 ? 1 : -1;
    CAPTURE(n);
    CHECK(delta(n / 2, Sign::plus) + 1 == delta(n, Sign::plus));
    CHECK(delta(n / 2, Sign::minus) + parity == delta(n, Sign::minus));
  }
}

TEST_CASE("floor_log brackets exact powers") {
  for (unsigned q = 2; q <= 12; ++q) {
    std::uint64_t p = 1;
    for (unsigned k = 0; k <= 12 && p <= UINT64_MAX / q / q; ++k) {
      CAPTURE(q);
      CAPTURE(k);
      CHECK(floor_log(p, q) == k);
      if (p > 1) CHECK(floor_log(p - 1, q) == k - 1);
      CHECK(floor_log(p + 1, q) == (p + 1 == static_cast<std::uint64_t>(q) ? k + 1 : k));
      p *= q;
    }
  }
  CHECK(floor_log(mpz_class("1000000000000000000000000"), 10) == 24);
  CHECK(floor_log(mpz_class("999999999999999999999999"), 10) == 23);
}

TEST_CASE("floor_log base 10 counts decimal digits") {
  for (std::uint64_t n = 1; n <= 100000; ++n) {
    CHECK(floor_log(n, 10) + 1 == std::to_string(n).size());
  }
}

TEST_CASE("epsilon vanishes over every block of q consecutive integers") {
  for (unsigned q = 2; q <= 12; ++q) {
    for (std::uint64_t start = 1; start <= 500; ++start) {
      std::int64_t sum = 0;
      for (unsigned m = 0; m < q; ++m) sum += epsilon(start + m, q);
      CAPTURE(q);
      CAPTURE(start);
      CHECK(sum == 0);
    }
    CHECK(epsilon(q, q) == static_cast<std::int64_t>(q) - 1);
    CHECK(epsilon(q + 1, q) == -1);
    CHECK(epsilon(mpz_class(3) * q, q) == static_cast<std::int64_t>(q) - 1);
  }
}

TEST_CASE("domain errors on invalid inputs") {
  CHECK_THROWS_AS(count_binary_digits(std::uint64_t{0}), std::domain_error);
  CHECK_THROWS_AS(count_binary_digits(mpz_class(-3)), std::domain_error);
  CHECK_THROWS_AS(floor_log(0, 2), std::domain_error);
  CHECK_THROWS_AS(floor_log(5, 1), std::domain_error);
  CHECK_THROWS_AS(epsilon(0, 3), std::domain_error);
  CHECK_THROWS_AS(epsilon(5, 0), std::domain_error);
}

TEST_CASE("sign helpers") {
  CHECK(sign_unit(Sign::plus) == 1);
  CHECK(sign_unit(Sign::minus) == -1);
  CHECK(to_string(Sign::plus) == "plus");
  CHECK(to_string(Sign::minus) == "minus");
}
