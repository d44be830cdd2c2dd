#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "vacca/digits.hpp"
#include "vacca/enclosure.hpp"
#include "vacca/parallel.hpp"
#include "vacca/rational.hpp"

namespace vacca {

// The series catalog.  base4 is the logarithmic mother series; all others
// have exact rational terms.  vacca and rational5 are the alternating
// digit-count forms; paired6 pairs them; addison and theorem2 are the
// accelerated forms (theorem2 at q = 2 IS addison); carlitz is the base-q
// alternating form and grouped17/grouped18 are its q-tuple regroupings with
// positive first and positive last member respectively.
enum class Family {
  base4,
  vacca,
  rational5,
  paired6,
  addison,
  theorem2,
  carlitz,
  grouped17,
  grouped18,
};

std::string family_name(Family f);
std::optional<Family> family_from_name(const std::string& name);

// plus-limit is gamma; the minus analog (only base4, rational5, paired6)
// converges to ln(4/pi).
bool family_has_minus(Family f);
// theorem2, carlitz, grouped17, grouped18 take the base parameter q.
bool family_has_q(Family f);
// Every family except base4 has exact rational terms.
bool family_is_rational(Family f);
// vacca and rational5 start at n = 2 (their n = 1 coefficient vanishes);
// everything else starts at n = 1.
std::uint64_t start_index(Family f);

struct SeriesId {
  Family family = Family::paired6;
  Sign sign = Sign::plus;
  unsigned q = 2;

  // Validates the combination: sign=minus and q != 2 are only accepted
  // where meaningful.
  static SeriesId make(Family f, Sign s = Sign::plus, unsigned q = 2);

  std::string name() const;  // e.g. "paired6-", "theorem2(q=10)"
  bool operator==(const SeriesId&) const = default;
};

// Additive constant owned by partial_sum, not by the terms: 1/2 for
// addison/theorem2, 1 for grouped18, 0 otherwise.
Rational constant_prefix(const SeriesId& id);

// Exact n-th term of a rational family (n is the series index, not a term
// count).  Rejects base4, indices below the start index, and invalid ids.
Rational rational_term(const SeriesId& id, std::uint64_t n);

// Enclosure of (+/-1)^(n-1) * A(n), the n-th term of the mother series.
Enclosure base_term(Sign sign, std::uint64_t n, mpfr_prec_t precision_bits);

using PartialSum = std::variant<Rational, Enclosure>;

// Sum of the first N terms (from the start index), plus the family's
// constant prefix.  Exact Rational for rational families, Enclosure for
// base4.
PartialSum partial_sum(const SeriesId& id, std::uint64_t n_terms,
                       mpfr_prec_t precision_bits = kDefaultPrecisionBits,
                       Exec exec = Exec::parallel);

// Thrown by tail_bound when N is not a certified cut point for the series.
class UnalignedCutError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// True when N terms end at a certified cut: any N for the one-signed
// families and base4 (alternating but with monotone term magnitudes);
// even N for vacca/rational5; N = qM+q-1 with M >= 1 for carlitz.
bool is_aligned_cut(const SeriesId& id, std::uint64_t n_terms);
// Smallest aligned cut >= n_terms, and largest aligned cut <= n_terms
// (nullopt when none exists below).
std::uint64_t align_cut_up(const SeriesId& id, std::uint64_t n_terms);
std::optional<std::uint64_t> align_cut_down(const SeriesId& id, std::uint64_t n_terms);

// Certified upper bound B on |limit - partial_sum(id, N)|, nonincreasing
// along aligned cuts.  Throws UnalignedCutError at unaligned N.
Rational tail_bound(const SeriesId& id, std::uint64_t n_terms);

enum class EvalStatus { converged, budget_exhausted };

struct EvalReport {
  SeriesId series;
  std::uint64_t terms_used = 0;
  PartialSum partial;
  Rational tail;       // certified bound, >= the true remainder magnitude
  Enclosure value;     // partial widened outward by tail
  std::chrono::nanoseconds elapsed{0};
  EvalStatus status = EvalStatus::converged;
  Rational achieved_error;  // tail + width(partial)
};

inline constexpr std::uint64_t kDefaultTermBudget = 10'000'000;

// Grows the partial sum along aligned cuts (roughly doubling) until
// tail + enclosure width <= target_error, or the term budget is hit
// (status budget_exhausted, best achieved error reported).
EvalReport evaluate(const SeriesId& id, const Rational& target_error,
                    mpfr_prec_t precision_bits = kDefaultPrecisionBits,
                    std::uint64_t term_budget = kDefaultTermBudget,
                    Exec exec = Exec::parallel);

// Single-cut report: exact/enclosure partial at N plus its tail bound.
EvalReport report_at_cut(const SeriesId& id, std::uint64_t n_terms,
                         mpfr_prec_t precision_bits = kDefaultPrecisionBits,
                         Exec exec = Exec::parallel);

// One pass over the series recording the state at each requested term
// count (ascending; aligned automatically by rounding up).  The partial is
// accumulated as an enclosure so large checkpoints stay cheap.
struct Checkpoint {
  std::uint64_t n_terms = 0;
  Enclosure partial;
  Rational tail;
  Enclosure value;
  std::chrono::nanoseconds elapsed{0};
};

std::vector<Checkpoint> checkpoint_run(const SeriesId& id,
                                       const std::vector<std::uint64_t>& at_terms,
                                       mpfr_prec_t precision_bits = kDefaultPrecisionBits,
                                       Exec exec = Exec::parallel);

}  // namespace vacca
