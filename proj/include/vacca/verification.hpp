#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "vacca/acceleration.hpp"
#include "vacca/parallel.hpp"
#include "vacca/rational.hpp"
#include "vacca/series.hpp"

namespace vacca {

// A failing input, carrying enough of the parameters to re-run the same
// case in isolation.  Fields that a suite does not use keep their
// defaults.
struct Witness {
  std::uint64_t n = 0;
  unsigned q = 2;
  Sign sign = Sign::plus;
  std::string detail;
};

struct LemmaReport {
  std::string suite;
  std::uint64_t cases_checked = 0;
  Rational max_residual;  // identity residual magnitude or enclosure width
  bool passed = true;     // true iff witnesses is empty
  std::vector<Witness> witnesses;
};

// Ranges and seams for run_all.  The defaults are a fast smoke pass; the
// acceptance harness dials the ranges up.  p_poly_builder substitutes the
// polynomial constructor used by the averaged-identity suite, so a
// deliberately perturbed polynomial can demonstrate that the suite reacts.
struct VerifyConfig {
  mpfr_prec_t precision_bits = 96;
  Exec exec = Exec::parallel;
  std::uint64_t lemma1_n_max = 200;
  std::uint64_t lemma2_n_max = 1 << 18;
  unsigned lemma3_k_max = 10;
  unsigned remainder_k_max = 10;
  std::uint64_t pairing_n_max = 1000;
  std::uint64_t vacca_n_max = 20000;
  std::uint64_t grouping_n_max = 300;
  std::vector<unsigned> grouping_qs = {2, 3, 5, 10};
  std::uint64_t q2_n_max = 20000;
  unsigned averaged_q_max = 12;
  std::uint64_t averaged_n_max = 100;
  std::vector<unsigned> shape_qs = {2, 3, 10};
  std::vector<std::uint64_t> shape_samples = {10, 100, 1000};
  std::uint64_t theorem1_n_terms = 512;
  std::function<PPoly(unsigned)> p_poly_builder;  // build_p_poly when empty
};

// A(n) = 1/(2n(2n+1)) + A(2n) + A(2n+1) as a residual enclosure straddling
// zero within width 2^(4-p), plus the strict bounds 0 < A(n) < 1/n-1/(n+1),
// for every n <= n_max.
LemmaReport check_lemma1(std::uint64_t n_max, mpfr_prec_t precision_bits,
                         Exec exec = Exec::parallel);

// delta(floor(n/2), s) + (+/-1)^(n-1) = delta(n, s) for 2 <= n <= n_max,
// both signs, exactly.
LemmaReport check_lemma2(std::uint64_t n_max, Exec exec = Exec::parallel);

// Partial-sum decomposition of the mother series at the dyadic cut 2^k-1:
// S = (exact paired sum through 2^(k-1)-1) + R, where R is the dyadic-block
// remainder; checked as a residual enclosure straddling zero within width
// 2^(k+4-p).  Requires 1 <= k <= 24.
LemmaReport check_lemma3(unsigned k, Sign sign, mpfr_prec_t precision_bits);

// Certified |R_k| strictly below k/2^k.  When the enclosure straddles the
// bound the precision is escalated rather than the strictness relaxed.
// Requires 1 <= k <= 24.
LemmaReport check_remainder_bound(unsigned k, Sign sign,
                                  mpfr_prec_t precision_bits);

// The paired series and the mother series certify intersecting enclosures
// of the same limit at comparable cuts near n_terms.
LemmaReport check_theorem1_limits(Sign sign, std::uint64_t n_terms,
                                  mpfr_prec_t precision_bits,
                                  Exec exec = Exec::parallel);

// Pairing of the alternating digit series into the positive paired series:
// termwise pair identity for all n <= n_max (which carries the partial-sum
// identity by induction from the base case), plus exact full partial-sum
// comparisons at spot cuts, both signs.
LemmaReport check_pairing(std::uint64_t n_max, Exec exec = Exec::parallel);

// vacca and rational5(plus) have identical terms for 2 <= n <= n_max.
LemmaReport check_vacca_identity(std::uint64_t n_max,
                                 Exec exec = Exec::parallel);

// Regrouping of the base-q alternating series into q-tuples with positive
// first member: groupwise identity for all n <= n_max plus exact spot
// partial-sum comparisons.
LemmaReport check_grouping(unsigned q, std::uint64_t n_max,
                           Exec exec = Exec::parallel);

// theorem2 at q = 2 has exactly the addison terms for n <= n_max.
LemmaReport check_q2_addison(std::uint64_t n_max, Exec exec = Exec::parallel);

// The averaging identity residual is exactly zero for 2 <= q <= q_max and
// n <= n_max.  builder substitutes the polynomial constructor (fault
// injection seam); empty means build_p_poly.
LemmaReport check_averaged_identity(
    unsigned q_max, std::uint64_t n_max,
    const std::function<PPoly(unsigned)>& builder = {});

// |shape_ratio(q, n) - 1| <= (3/2)/n at each sample, and the staircase
// coefficient window q^(L-2) <= n < q^(L+2) for L = floor_log(n, q) + 1,
// checked exactly.
LemmaReport check_shape_ratio(const std::vector<unsigned>& qs,
                              const std::vector<std::uint64_t>& samples);

// One suite by name at the configured ranges.  Accepts the run_all suite
// ids plus "theorem1-limits" (both signs at theorem1_n_terms); throws
// std::invalid_argument for unknown names.  Multi-case suites aggregate
// into a single report.
LemmaReport run_suite(const std::string& suite, const VerifyConfig& config);

// Every suite at the configured ranges, in a fixed deterministic order:
// lemma1, lemma2, lemma3, remainder, pairing, vacca-identity, grouping,
// q2-addison, averaged-identity, shape-ratio.
std::vector<LemmaReport> run_all(const VerifyConfig& config = {});

}  // namespace vacca
