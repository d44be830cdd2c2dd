#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "vacca/series.hpp"

#include <cstdint>
#include <vector>

#include "vacca/numerics.hpp"
#include "vacca/rational.hpp"

using namespace vacca;

namespace {

// 30-digit reference windows for the two limits, used only to confirm that
// certified enclosures straddle the true constants.
Rational gamma_lo() {
  return Rational(mpz_class("577215664901532860606512090082"), int_pow(10ul, 30));
}
Rational ln4pi_lo() {
  return Rational(mpz_class("241564475270490444691036891563"), int_pow(10ul, 30));
}
Rational unit_in_last_place() { return Rational(mpz_class(1), int_pow(10ul, 30)); }

bool straddles(const Enclosure& e, const Rational& ref_lo) {
  return e.lo() <= ref_lo + unit_in_last_place() && e.hi() >= ref_lo;
}

bool straddles_limit(const Enclosure& e, const SeriesId& id) {
  return straddles(e, id.sign == Sign::plus ? gamma_lo() : ln4pi_lo());
}

SeriesId make(Family f, Sign s = Sign::plus, unsigned q = 2) {
  return SeriesId::make(f, s, q);
}

const std::vector<SeriesId> kGammaCatalog = {
    make(Family::base4),
    make(Family::vacca),
    make(Family::rational5),
    make(Family::paired6),
    make(Family::addison),
    make(Family::theorem2, Sign::plus, 2),
    make(Family::theorem2, Sign::plus, 5),
    make(Family::carlitz, Sign::plus, 2),
    make(Family::carlitz, Sign::plus, 3),
    make(Family::grouped17, Sign::plus, 3),
    make(Family::grouped17, Sign::plus, 10),
    make(Family::grouped18, Sign::plus, 2),
    make(Family::grouped18, Sign::plus, 7),
};

const std::vector<SeriesId> kMinusCatalog = {
    make(Family::base4, Sign::minus),
    make(Family::rational5, Sign::minus),
    make(Family::paired6, Sign::minus),
};

}  // namespace

TEST_CASE("family catalog metadata") {
  const std::vector<Family> all = {
      Family::base4,   Family::vacca,     Family::rational5,
      Family::paired6, Family::addison,   Family::theorem2,
      Family::carlitz, Family::grouped17, Family::grouped18};
  for (const Family f : all) {
    CHECK(family_from_name(family_name(f)) == f);
  }
  CHECK(!family_from_name("nope").has_value());
  CHECK(family_has_minus(Family::base4));
  CHECK(family_has_minus(Family::rational5));
  CHECK(family_has_minus(Family::paired6));
  CHECK(!family_has_minus(Family::addison));
  CHECK(!family_has_minus(Family::vacca));
  CHECK(family_has_q(Family::theorem2));
  CHECK(family_has_q(Family::carlitz));
  CHECK(family_has_q(Family::grouped17));
  CHECK(family_has_q(Family::grouped18));
  CHECK(!family_has_q(Family::addison));
  CHECK(!family_is_rational(Family::base4));
  CHECK(family_is_rational(Family::vacca));
  CHECK(start_index(Family::vacca) == 2);
  CHECK(start_index(Family::rational5) == 2);
  CHECK(start_index(Family::paired6) == 1);
  CHECK(start_index(Family::carlitz) == 1);
}

TEST_CASE("series ids validate their combinations") {
  CHECK(make(Family::paired6, Sign::minus).name() == "paired6-");
  CHECK(make(Family::paired6).name() == "paired6+");
  CHECK(make(Family::theorem2, Sign::plus, 10).name() == "theorem2(q=10)");
  CHECK(make(Family::addison).name() == "addison");
  CHECK_THROWS_AS(SeriesId::make(Family::addison, Sign::minus), std::invalid_argument);
  CHECK_THROWS_AS(SeriesId::make(Family::vacca, Sign::minus), std::invalid_argument);
  CHECK_THROWS_AS(SeriesId::make(Family::theorem2, Sign::plus, 1), std::invalid_argument);
  CHECK_THROWS_AS(SeriesId::make(Family::vacca, Sign::plus, 3), std::invalid_argument);
  CHECK(constant_prefix(make(Family::addison)) == Rational(1, 2));
  CHECK(constant_prefix(make(Family::theorem2, Sign::plus, 7)) == Rational(1, 2));
  CHECK(constant_prefix(make(Family::grouped18, Sign::plus, 3)) == Rational(1));
  CHECK(constant_prefix(make(Family::paired6)) == Rational(0));
}

TEST_CASE("rational terms match hand-computed values") {
  CHECK(rational_term(make(Family::rational5, Sign::minus), 8) == Rational(-1, 8));
  CHECK(rational_term(make(Family::rational5), 16) == Rational(1, 4));
  CHECK(rational_term(make(Family::paired6), 3) == Rational(1, 21));
  CHECK(rational_term(make(Family::paired6, Sign::minus), 4) == Rational(-1, 72));
  CHECK(rational_term(make(Family::vacca), 2) == Rational(1, 2));
  CHECK(rational_term(make(Family::vacca), 3) == Rational(-1, 3));
  CHECK(rational_term(make(Family::vacca), 5) == Rational(-2, 5));
  CHECK(rational_term(make(Family::addison), 2) == Rational(1, 60));
  CHECK(rational_term(make(Family::theorem2, Sign::plus, 3), 1) == Rational(1, 20));
  CHECK(rational_term(make(Family::theorem2, Sign::plus, 2), 5) ==
        rational_term(make(Family::addison), 5));
  CHECK(rational_term(make(Family::carlitz, Sign::plus, 3), 1) == Rational(0));
  CHECK(rational_term(make(Family::carlitz, Sign::plus, 3), 3) == Rational(2, 3));
  CHECK(rational_term(make(Family::carlitz, Sign::plus, 3), 4) == Rational(-1, 4));
  CHECK(rational_term(make(Family::carlitz, Sign::plus, 3), 9) == Rational(4, 9));
  CHECK(rational_term(make(Family::carlitz, Sign::plus, 3), 10) == Rational(-1, 5));
  CHECK(rational_term(make(Family::grouped17, Sign::plus, 2), 1) == Rational(1, 6));
  CHECK(rational_term(make(Family::grouped17, Sign::plus, 3), 2) == Rational(11, 168));
  CHECK(rational_term(make(Family::grouped18, Sign::plus, 2), 1) == Rational(-1, 12));

  CHECK_THROWS_AS(rational_term(make(Family::base4), 1), std::invalid_argument);
  CHECK_THROWS_AS(rational_term(make(Family::vacca), 1), std::invalid_argument);
  CHECK_THROWS_AS(rational_term(make(Family::paired6), 0), std::invalid_argument);
}

TEST_CASE("mother-series terms wrap the shared building block") {
  const ATerm a2 = a_term(2, 96);
  const Enclosure plus = base_term(Sign::plus, 2, 96);
  CHECK(plus.lo() == a2.value.lo());
  CHECK(plus.hi() == a2.value.hi());
  const Enclosure minus = base_term(Sign::minus, 2, 96);
  CHECK((minus + a2.value).contains_zero());
  const Enclosure odd = base_term(Sign::minus, 3, 96);
  CHECK(odd.lo() == a_term(3, 96).value.lo());
}

TEST_CASE("partial sums match hand-computed values") {
  CHECK(std::get<Rational>(partial_sum(make(Family::paired6), 3)) == Rational(11, 35));
  CHECK(std::get<Rational>(partial_sum(make(Family::addison), 1)) == Rational(13, 24));
  CHECK(std::get<Rational>(partial_sum(make(Family::grouped18, Sign::plus, 2), 0)) ==
        Rational(1));
  CHECK(std::get<Rational>(partial_sum(make(Family::grouped18, Sign::plus, 2), 1)) ==
        Rational(11, 12));
  CHECK(std::get<Rational>(partial_sum(make(Family::theorem2, Sign::plus, 3), 1)) ==
        Rational(11, 20));
  CHECK(std::get<Rational>(partial_sum(make(Family::carlitz, Sign::plus, 3), 5)) ==
        Rational(13, 60));
  CHECK(std::get<Rational>(partial_sum(make(Family::vacca), 2)) == Rational(1, 6));
  CHECK(std::get<Rational>(partial_sum(make(Family::rational5), 2)) == Rational(1, 6));
  CHECK(std::get<Rational>(partial_sum(make(Family::paired6), 0)) == Rational(0));
}

TEST_CASE("adjacent alternating terms pair into the positive series") {
  for (const Sign s : {Sign::plus, Sign::minus}) {
    const SeriesId alt = make(Family::rational5, s);
    const SeriesId paired = make(Family::paired6, s);
    for (std::uint64_t n = 1; n <= 50; ++n) {
      CAPTURE(n);
      CHECK(rational_term(alt, 2 * n) + rational_term(alt, 2 * n + 1) ==
            rational_term(paired, n));
    }
    for (const std::uint64_t N : {1, 2, 3, 10, 40}) {
      CHECK(std::get<Rational>(partial_sum(alt, 2 * N)) ==
            std::get<Rational>(partial_sum(paired, N)));
    }
  }
}

TEST_CASE("serial and parallel partial sums agree") {
  for (const SeriesId& id : kGammaCatalog) {
    const std::uint64_t N = align_cut_up(id, 3000);
    const PartialSum a = partial_sum(id, N, 96, Exec::serial);
    const PartialSum b = partial_sum(id, N, 96, Exec::parallel);
    CAPTURE(id.name());
    if (const Rational* ra = std::get_if<Rational>(&a)) {
      CHECK(*ra == std::get<Rational>(b));
    } else {
      CHECK(intersects(std::get<Enclosure>(a), std::get<Enclosure>(b)));
    }
  }
}

TEST_CASE("aligned cuts and their neighbors") {
  const SeriesId vacca = make(Family::vacca);
  CHECK(is_aligned_cut(vacca, 4));
  CHECK(!is_aligned_cut(vacca, 3));
  CHECK(align_cut_up(vacca, 3) == 4);
  CHECK(align_cut_down(vacca, 3) == 2);

  const SeriesId carlitz3 = make(Family::carlitz, Sign::plus, 3);
  CHECK(is_aligned_cut(carlitz3, 5));
  CHECK(is_aligned_cut(carlitz3, 8));
  CHECK(!is_aligned_cut(carlitz3, 2));
  CHECK(!is_aligned_cut(carlitz3, 6));
  CHECK(align_cut_up(carlitz3, 1) == 5);
  CHECK(align_cut_up(carlitz3, 6) == 8);
  CHECK(!align_cut_down(carlitz3, 4).has_value());
  CHECK(align_cut_down(carlitz3, 9) == 8);

  const SeriesId paired = make(Family::paired6);
  CHECK(is_aligned_cut(paired, 1));
  CHECK(is_aligned_cut(paired, 7));
  CHECK(align_cut_up(paired, 7) == 7);
  CHECK(align_cut_down(paired, 7) == 7);

  CHECK_THROWS_AS(tail_bound(vacca, 3), UnalignedCutError);
  CHECK_THROWS_AS(tail_bound(carlitz3, 6), UnalignedCutError);
  CHECK(tail_bound(paired, 7).sgn() == 1);
}

TEST_CASE("tail bounds shrink along the cut grid") {
  for (const SeriesId& id : kGammaCatalog) {
    Rational prev;
    bool have_prev = false;
    std::uint64_t N = align_cut_up(id, 1);
    for (int step = 0; step < 40; ++step) {
      const Rational bound = tail_bound(id, N);
      CAPTURE(id.name());
      CAPTURE(N);
      CHECK(bound.sgn() == 1);
      if (have_prev) CHECK(bound <= prev);
      prev = bound;
      have_prev = true;
      N = align_cut_up(id, N + 1);
    }
  }
}

TEST_CASE("certified enclosures straddle the limit at every cut") {
  for (const SeriesId& id : kGammaCatalog) {
    std::vector<Enclosure> values;
    for (const std::uint64_t want : {10, 100, 1000}) {
      const std::uint64_t N = align_cut_up(id, want);
      const EvalReport r = report_at_cut(id, N, 96);
      CAPTURE(id.name());
      CAPTURE(N);
      CHECK(straddles_limit(r.value, id));
      values.push_back(r.value);
    }
    for (size_t i = 0; i < values.size(); ++i) {
      for (size_t j = i + 1; j < values.size(); ++j) {
        CHECK(intersects(values[i], values[j]));
      }
    }
  }
  for (const SeriesId& id : kMinusCatalog) {
    const EvalReport r = report_at_cut(id, align_cut_up(id, 200), 96);
    CAPTURE(id.name());
    CHECK(straddles_limit(r.value, id));
  }
}

TEST_CASE("the first carlitz cut already certifies the limit") {
  const EvalReport r = report_at_cut(make(Family::carlitz, Sign::plus, 3), 5, 96);
  CHECK(std::get<Rational>(r.partial) == Rational(13, 60));
  CHECK(straddles_limit(r.value, r.series));
}

TEST_CASE("report_at_cut keeps the exact partial inside the value window") {
  const EvalReport r = report_at_cut(make(Family::paired6), 3, 96);
  const Rational exact = std::get<Rational>(r.partial);
  CHECK(exact == Rational(11, 35));
  CHECK(r.value.contains(exact));
  CHECK(r.achieved_error == r.tail);
  CHECK(r.terms_used == 3);
  CHECK(r.status == EvalStatus::converged);
  CHECK(straddles_limit(r.value, r.series));

  const EvalReport rb = report_at_cut(make(Family::base4), 7, 96);
  const Enclosure& partial = std::get<Enclosure>(rb.partial);
  CHECK(rb.value.contains(partial));
  CHECK(rb.achieved_error == rb.tail + partial.width());
  CHECK(straddles_limit(rb.value, rb.series));
}

TEST_CASE("evaluate converges to the requested error") {
  const EvalReport r = evaluate(make(Family::paired6), pow10(-6), 96);
  CHECK(r.status == EvalStatus::converged);
  CHECK(r.achieved_error <= pow10(-6));
  CHECK(is_aligned_cut(r.series, r.terms_used));
  CHECK(r.value.contains(std::get<Enclosure>(r.partial)));
  CHECK(straddles_limit(r.value, r.series));
  CHECK(r.value.width() <= Rational(3) * pow10(-6));

  const EvalReport rb = evaluate(make(Family::base4, Sign::minus), pow10(-5), 96);
  CHECK(rb.status == EvalStatus::converged);
  CHECK(rb.achieved_error <= pow10(-5));
  CHECK(straddles_limit(rb.value, rb.series));
}

TEST_CASE("evaluate reports budget exhaustion honestly") {
  const EvalReport r = evaluate(make(Family::paired6), pow10(-12), 96, 100);
  CHECK(r.status == EvalStatus::budget_exhausted);
  CHECK(r.terms_used == 100);
  CHECK(r.achieved_error > pow10(-12));
  CHECK(straddles_limit(r.value, r.series));
}

TEST_CASE("evaluate validates its inputs") {
  CHECK_THROWS_AS(evaluate(make(Family::paired6), Rational(0), 96),
                  std::invalid_argument);
  CHECK_THROWS_AS(evaluate(make(Family::carlitz, Sign::plus, 3), pow10(-4), 96, 4),
                  std::invalid_argument);
}

TEST_CASE("checkpoint_run walks the series once") {
  const SeriesId id = make(Family::paired6);
  const auto cps = checkpoint_run(id, {10, 100, 1000}, 96);
  REQUIRE(cps.size() == 3);
  Rational prev_tail;
  for (size_t i = 0; i < cps.size(); ++i) {
    const Checkpoint& cp = cps[i];
    CHECK(cp.n_terms == std::vector<std::uint64_t>{10, 100, 1000}[i]);
    CHECK(cp.partial.contains(std::get<Rational>(partial_sum(id, cp.n_terms))));
    CHECK(straddles_limit(cp.value, id));
    if (i > 0) {
      CHECK(cp.tail <= prev_tail);
      CHECK(cp.elapsed >= cps[i - 1].elapsed);
    }
    prev_tail = cp.tail;
  }

  const auto aligned = checkpoint_run(make(Family::vacca), {9, 99}, 96);
  REQUIRE(aligned.size() == 2);
  CHECK(aligned[0].n_terms == 10);
  CHECK(aligned[1].n_terms == 100);

  CHECK_THROWS_AS(checkpoint_run(id, {100, 10}, 96), std::invalid_argument);
}
