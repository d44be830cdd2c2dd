#include "vacca/series.hpp"

#include <algorithm>

#include "vacca/acceleration.hpp"
#include "vacca/numerics.hpp"

namespace vacca {

namespace {

mpz_class mpz_of(std::uint64_t n) { return mpz_class(static_cast<unsigned long>(n)); }

struct FamilyInfo {
  Family family;
  const char* name;
  bool has_minus;
  bool has_q;
  bool rational;
  std::uint64_t start;
};

constexpr FamilyInfo kFamilies[] = {
    {Family::base4, "base4", true, false, false, 1},
    {Family::vacca, "vacca", false, false, true, 2},
    {Family::rational5, "rational5", true, false, true, 2},
    {Family::paired6, "paired6", true, false, true, 1},
    {Family::addison, "addison", false, false, true, 1},
    {Family::theorem2, "theorem2", false, true, true, 1},
    {Family::carlitz, "carlitz", false, true, true, 1},
    {Family::grouped17, "grouped17", false, true, true, 1},
    {Family::grouped18, "grouped18", false, true, true, 1},
};

const FamilyInfo& info(Family f) {
  for (const auto& fi : kFamilies) {
    if (fi.family == f) return fi;
  }
  throw std::invalid_argument("unknown series family");
}

void validate(const SeriesId& id) { SeriesId::make(id.family, id.sign, id.q); }

}  // namespace

std::string family_name(Family f) { return info(f).name; }

std::optional<Family> family_from_name(const std::string& name) {
  for (const auto& fi : kFamilies) {
    if (name == fi.name) return fi.family;
  }
  return std::nullopt;
}

bool family_has_minus(Family f) { return info(f).has_minus; }
bool family_has_q(Family f) { return info(f).has_q; }
bool family_is_rational(Family f) { return info(f).rational; }
std::uint64_t start_index(Family f) { return info(f).start; }

SeriesId SeriesId::make(Family f, Sign s, unsigned q) {
  const FamilyInfo& fi = info(f);
  if (s == Sign::minus && !fi.has_minus) {
    throw std::invalid_argument(std::string(fi.name) + " has no minus analog");
  }
  if (fi.has_q) {
    if (q < 2) throw std::invalid_argument(std::string(fi.name) + ": q must be >= 2");
  } else if (q != 2) {
    throw std::invalid_argument(std::string(fi.name) + " does not take a base q");
  }
  return SeriesId{f, s, q};
}

std::string SeriesId::name() const {
  std::string s = family_name(family);
  if (family_has_minus(family)) s += sign == Sign::plus ? "+" : "-";
  if (family_has_q(family)) s += "(q=" + std::to_string(q) + ")";
  return s;
}

Rational constant_prefix(const SeriesId& id) {
  switch (id.family) {
    case Family::addison:
    case Family::theorem2:
      return Rational(1, 2);
    case Family::grouped18:
      return Rational(1);
    default:
      return Rational(0);
  }
}

namespace {

// Product (qn)(qn+1)...(qn+q) as an exact integer.
mpz_class falling_block(const mpz_class& qn, unsigned q) {
  mpz_class prod = qn;
  for (unsigned j = 1; j <= q; ++j) prod *= qn + j;
  return prod;
}

// Term generator with the per-series state (the acceleration polynomial)
// built once.  operator() is const and safe for concurrent use.
struct TermGen {
  SeriesId id;
  std::optional<PPoly> poly;

  explicit TermGen(const SeriesId& id_) : id(id_) {
    if (id.family == Family::theorem2) poly = build_p_poly(id.q);
  }

  Rational operator()(std::uint64_t n) const {
    switch (id.family) {
      case Family::vacca: {
        // (-1)^n * floor(log2 n) / n
        const std::int64_t num =
            (n % 2 == 0 ? 1 : -1) * static_cast<std::int64_t>(floor_log(n, 2));
        return Rational(mpz_class(static_cast<long>(num)), mpz_of(n));
      }
      case Family::rational5: {
        // (-1)^n * (N1(floor(n/2)) +/- N0(floor(n/2))) / n
        std::int64_t num = delta(n / 2, id.sign);
        if (n % 2 == 1) num = -num;
        return Rational(mpz_class(static_cast<long>(num)), mpz_of(n));
      }
      case Family::paired6: {
        // (N1(n) +/- N0(n)) / (2n(2n+1))
        const mpz_class two_n = 2 * mpz_of(n);
        return Rational(mpz_class(static_cast<long>(delta(n, id.sign))),
                        two_n * (two_n + 1));
      }
      case Family::addison: {
        // floor(log2 2n) / (2n(2n+1)(2n+2))
        const mpz_class two_n = 2 * mpz_of(n);
        return Rational(mpz_of(floor_log(n, 2) + 1),
                        two_n * (two_n + 1) * (two_n + 2));
      }
      case Family::theorem2: {
        // floor(log_q qn) * P_q(n) / ((qn)(qn+1)...(qn+q))
        const mpz_class nz = mpz_of(n);
        const mpz_class num = mpz_of(floor_log(n, id.q) + 1) * poly->eval(nz);
        return Rational(num, falling_block(nz * id.q, id.q));
      }
      case Family::carlitz: {
        // eps(n) * floor(log_q n) / n, zero for n < q
        const std::int64_t num = epsilon(n, id.q) *
                                 static_cast<std::int64_t>(floor_log(n, id.q));
        return Rational(mpz_class(static_cast<long>(num)), mpz_of(n));
      }
      case Family::grouped17: {
        // floor(log_q qn) * [(q-1)/(qn) - sum_m 1/(qn+m)]
        const mpz_class qn = mpz_of(n) * id.q;
        Rational inner(mpz_class(id.q - 1), qn);
        for (unsigned m = 1; m <= id.q - 1; ++m) {
          inner -= Rational(mpz_class(1), qn + m);
        }
        return inner * Rational(mpz_of(floor_log(n, id.q) + 1));
      }
      case Family::grouped18: {
        // floor(log_q qn) * [(q-1)/(qn+q) - sum_m 1/(qn+m)]
        const mpz_class qn = mpz_of(n) * id.q;
        Rational inner(mpz_class(id.q - 1), qn + id.q);
        for (unsigned m = 1; m <= id.q - 1; ++m) {
          inner -= Rational(mpz_class(1), qn + m);
        }
        return inner * Rational(mpz_of(floor_log(n, id.q) + 1));
      }
      default:
        throw std::invalid_argument("rational_term: base4 terms are not rational");
    }
  }
};

}  // namespace

Rational rational_term(const SeriesId& id, std::uint64_t n) {
  validate(id);
  if (!family_is_rational(id.family)) {
    throw std::invalid_argument("rational_term: base4 terms are not rational");
  }
  if (n < start_index(id.family)) {
    throw std::invalid_argument("rational_term: index below the series start");
  }
  return TermGen(id)(n);
}

Enclosure base_term(Sign sign, std::uint64_t n, mpfr_prec_t precision_bits) {
  const Enclosure a = a_term(n, precision_bits).value;
  if (sign == Sign::plus || n % 2 == 1) return a;
  return -a;
}

PartialSum partial_sum(const SeriesId& id, std::uint64_t n_terms,
                       mpfr_prec_t precision_bits, Exec exec) {
  validate(id);
  if (id.family == Family::base4) {
    return enclosure_range_sum(
        [&id, precision_bits](std::uint64_t n) {
          return base_term(id.sign, n, precision_bits);
        },
        1, n_terms, precision_bits, exec);  // empty range when n_terms = 0
  }
  Rational s = constant_prefix(id);
  if (n_terms > 0) {
    const TermGen gen(id);
    const std::uint64_t start = start_index(id.family);
    s += rational_range_sum([&gen](std::uint64_t n) { return gen(n); }, start,
                            start + n_terms - 1, exec);
  }
  return s;
}

bool is_aligned_cut(const SeriesId& id, std::uint64_t n_terms) {
  if (n_terms < 1) return false;
  switch (id.family) {
    case Family::vacca:
    case Family::rational5:
      return n_terms % 2 == 0;
    case Family::carlitz:
      return n_terms % id.q == id.q - 1 && n_terms >= 2 * std::uint64_t{id.q} - 1;
    default:
      return true;
  }
}

std::uint64_t align_cut_up(const SeriesId& id, std::uint64_t n_terms) {
  std::uint64_t n = std::max<std::uint64_t>(n_terms, 1);
  switch (id.family) {
    case Family::vacca:
    case Family::rational5:
      return n + n % 2;
    case Family::carlitz: {
      const std::uint64_t q = id.q;
      n = std::max(n, 2 * q - 1);
      const std::uint64_t r = n % q;
      return n + (q - 1 - r + q) % q;
    }
    default:
      return n;
  }
}

std::optional<std::uint64_t> align_cut_down(const SeriesId& id, std::uint64_t n_terms) {
  switch (id.family) {
    case Family::vacca:
    case Family::rational5:
      if (n_terms < 2) return std::nullopt;
      return n_terms - n_terms % 2;
    case Family::carlitz: {
      const std::uint64_t q = id.q;
      if (n_terms < 2 * q - 1) return std::nullopt;
      const std::uint64_t r = n_terms % q;
      return n_terms - (r >= q - 1 ? r - (q - 1) : r + 1);
    }
    default:
      return n_terms >= 1 ? std::optional<std::uint64_t>(n_terms) : std::nullopt;
  }
}

namespace {

enum class DecayKind { harmonic, quadratic };

// Certified tail bound for series whose n-th term magnitude is at most
// (floor(log_b n) + 1) * g(n) with g(n) <= C*d(n) for n >= 2, where
//   harmonic:  d(n) = 1/((n-1)n),      D(N) = sum_{n>=N} d(n) = 1/(N-1)
//   quadratic: d(n) = 1/((n-1)n(n+1)), D(N) = 1/(2(N-1)N).
// Splitting the tail at base-b block boundaries and Abel-summing the
// staircase coefficient gives, with J0 = floor(log_b(N+1)),
//   sum_{n>N} (floor(log_b n)+1) d(n)
//     = (J0+1)*D(N+1) + D(b^(J0+1)) + sum_{j>=J0+2} D(b^j),
// and the last sum is bounded by the geometric overestimate
//   harmonic:  D(b^j) <= (b/(b-1))*b^(-j)   => G = b^2/((b-1)^2 b^J)
//   quadratic: D(b^j) <= (b/(2(b-1)))*b^(-2j) => G = b^3/(2(b-1)(b^2-1) b^(2J))
// at J = J0+2.  Both overestimates dominate the true block decrements, so
// the bound is nonincreasing in N across block boundaries as well as inside
// blocks.
Rational staircase_tail(std::uint64_t N, unsigned b, const Rational& C,
                        DecayKind kind) {
  const auto D = [kind](const mpz_class& x) {
    return kind == DecayKind::harmonic ? Rational(mpz_class(1), x - 1)
                                       : Rational(mpz_class(1), 2 * (x - 1) * x);
  };
  const std::uint64_t J0 = floor_log(N + 1, b);
  const mpz_class bz(static_cast<unsigned long>(b));
  const mpz_class b_j1 = int_pow(bz, J0 + 1);
  const Rational G =
      kind == DecayKind::harmonic
          ? Rational(bz * bz, (bz - 1) * (bz - 1) * b_j1 * bz)
          : Rational(bz * bz * bz,
                     2 * (bz - 1) * (bz * bz - 1) * b_j1 * b_j1 * bz * bz);
  const Rational ladder =
      Rational(mpz_of(J0 + 1)) * D(mpz_of(N) + 1) + D(b_j1) + G;
  return C * ladder;
}

}  // namespace

Rational tail_bound(const SeriesId& id, std::uint64_t n_terms) {
  validate(id);
  if (!is_aligned_cut(id, n_terms)) {
    throw UnalignedCutError("tail_bound: " + id.name() + " has no certified cut at N=" +
                            std::to_string(n_terms) +
                            (id.family == Family::carlitz
                                 ? " (cuts are N = qM+q-1 with M >= 1)"
                                 : " (cuts are at even N)"));
  }
  const std::uint64_t N = n_terms;
  switch (id.family) {
    case Family::base4:
      // plus: all terms positive, tail = sum_{n>N} A(n) < telescoped
      // sum of 1/n - 1/(n+1) = 1/(N+1).  minus: A(n) = integral of
      // u/(n(n+u)) over [0,1] is strictly decreasing, so the alternating
      // tail is bounded by its first term A(N+1) < 1/((N+1)(N+2)).
      if (id.sign == Sign::plus) return Rational(mpz_class(1), mpz_of(N) + 1);
      return Rational(mpz_class(1), (mpz_of(N) + 1) * (mpz_of(N) + 2));
    case Family::vacca:
    case Family::rational5:
      // N terms cover indices 2..N+1, i.e. N/2 complete pairs; the paired
      // partial sums agree exactly, so the paired tail applies.
      return tail_bound(SeriesId{Family::paired6, id.sign, 2}, N / 2);
    case Family::paired6:
      // |Delta(n)| <= floor(log2 n)+1 and 1/(2n(2n+1)) <= (1/4)/((n-1)n).
      return staircase_tail(N, 2, Rational(1, 4), DecayKind::harmonic);
    case Family::addison:
      // coefficient floor(log2 2n) = floor(log2 n)+1 and
      // 1/(2n(2n+1)(2n+2)) <= (1/8)/((n-1)n(n+1)).
      return staircase_tail(N, 2, Rational(1, 8), DecayKind::quadratic);
    case Family::theorem2: {
      // Unexpanded form of the term: P_q(n)/((qn)...(qn+q)) =
      // sum_m m(q-m)/(qn (qn+m) (qn+q)) <= [q(q^2-1)/6]/(qn (qn+1) (qn+q)),
      // and qn(qn+1)(qn+q) = q^2 n(n+1)(qn+1) > q^3 (n-1)n(n+1), so the
      // floor-free part is <= (q^2-1)/(6q^2) * 1/((n-1)n(n+1)).  At q=2
      // this is exactly the addison constant 1/8, so the two bounds agree.
      const unsigned q = id.q;
      const mpz_class qz(static_cast<unsigned long>(q));
      return staircase_tail(N, q, Rational(qz * qz - 1, 6 * qz * qz),
                            DecayKind::quadratic);
    }
    case Family::carlitz:
      // Indices 1..qM+q-1 are the zero-coefficient prefix plus M complete
      // q-tuples; the grouped partial sums agree exactly.
      return tail_bound(SeriesId{Family::grouped17, Sign::plus, id.q},
                        (N + 1) / id.q - 1);
    case Family::grouped17: {
      // Group value = L * sum_m m/(qn(qn+m)) <= L * (q-1)/(2q) / n^2.
      const unsigned q = id.q;
      return staircase_tail(N, q, Rational(mpz_class(q - 1), mpz_class(2) * q),
                            DecayKind::harmonic);
    }
    case Family::grouped18: {
      // |group| = L * sum_m (q-m)/((qn+m)(qn+q)) <= L * (q-1)/(2q) / (n(n+1)).
      const unsigned q = id.q;
      return staircase_tail(N, q, Rational(mpz_class(q - 1), mpz_class(2) * q),
                            DecayKind::harmonic);
    }
  }
  throw std::logic_error("tail_bound: unhandled family");
}

namespace {

// Rounds `bound` up to a value exactly representable at the given
// precision, so the widened enclosure below is exact and the reported tail
// still dominates the true remainder.
Rational dyadic_round_up(const Rational& bound, mpfr_prec_t precision_bits) {
  mpfr_t t;
  mpfr_init2(t, precision_bits);
  mpfr_set_q(t, bound.raw().get_mpq_t(), MPFR_RNDU);
  mpq_class q;
  mpfr_get_q(q.get_mpq_t(), t);
  mpfr_clear(t);
  return Rational::from_raw(std::move(q));
}

// value = partial widened outward by the dyadic tail T; exact, so
// width(value) = width(partial) + 2T.
std::pair<Enclosure, Rational> widen_by_tail(const Enclosure& partial,
                                             const Rational& bound,
                                             mpfr_prec_t precision_bits) {
  const Rational T = dyadic_round_up(bound, precision_bits);
  Enclosure value =
      Enclosure::from_dyadic_bounds(partial.lo() - T, partial.hi() + T);
  return {std::move(value), T};
}

// Incremental enclosure accumulation of one series, extendable to larger
// term counts without recomputing the prefix.
class Accumulator {
 public:
  Accumulator(const SeriesId& id, mpfr_prec_t precision_bits, Exec exec)
      : id_(id), prec_(precision_bits), exec_(exec), partial_(precision_bits) {
    if (family_is_rational(id.family)) {
      gen_.emplace(id);
      partial_.accumulate(constant_prefix(id));
    }
    start_ = start_index(id.family);
    next_ = start_;
  }

  void extend_to(std::uint64_t n_terms) {
    if (n_terms == 0) return;
    const std::uint64_t last = start_ + n_terms - 1;
    if (last < next_) return;
    Enclosure chunk =
        gen_ ? enclosure_range_sum(
                   [this](std::uint64_t n) { return (*gen_)(n); }, next_, last,
                   prec_, exec_)
             : enclosure_range_sum(
                   [this](std::uint64_t n) {
                     return base_term(id_.sign, n, prec_);
                   },
                   next_, last, prec_, exec_);
    partial_.accumulate(chunk);
    next_ = last + 1;
  }

  std::uint64_t terms() const { return next_ - start_; }
  const Enclosure& partial() const { return partial_; }

 private:
  SeriesId id_;
  mpfr_prec_t prec_;
  Exec exec_;
  std::optional<TermGen> gen_;
  Enclosure partial_;
  std::uint64_t start_ = 1;
  std::uint64_t next_ = 1;
};

std::chrono::nanoseconds since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration_cast<std::chrono::nanoseconds>(
      std::chrono::steady_clock::now() - t0);
}

}  // namespace

EvalReport evaluate(const SeriesId& id, const Rational& target_error,
                    mpfr_prec_t precision_bits, std::uint64_t term_budget,
                    Exec exec) {
  validate(id);
  if (target_error.sgn() <= 0) {
    throw std::invalid_argument("evaluate: target_error must be positive");
  }
  const auto budget_cut = align_cut_down(id, term_budget);
  if (!budget_cut) {
    throw std::invalid_argument("evaluate: term budget below the first certified cut");
  }
  const auto t0 = std::chrono::steady_clock::now();
  Accumulator acc(id, precision_bits, exec);
  std::uint64_t N = std::min(align_cut_up(id, 8), *budget_cut);
  for (;;) {
    acc.extend_to(N);
    const Rational bound = tail_bound(id, N);
    auto [value, T] = widen_by_tail(acc.partial(), bound, precision_bits);
    const Rational achieved = T + acc.partial().width();
    const bool converged = achieved <= target_error;
    if (converged || N >= *budget_cut) {
      return EvalReport{id,
                        acc.terms(),
                        acc.partial(),
                        T,
                        std::move(value),
                        since(t0),
                        converged ? EvalStatus::converged
                                  : EvalStatus::budget_exhausted,
                        achieved};
    }
    N = std::min(align_cut_up(id, 2 * N), *budget_cut);
  }
}

EvalReport report_at_cut(const SeriesId& id, std::uint64_t n_terms,
                         mpfr_prec_t precision_bits, Exec exec) {
  const auto t0 = std::chrono::steady_clock::now();
  const Rational bound = tail_bound(id, n_terms);  // validates alignment
  PartialSum ps = partial_sum(id, n_terms, precision_bits, exec);
  if (const Rational* exact = std::get_if<Rational>(&ps)) {
    const Rational T = dyadic_round_up(bound, precision_bits);
    Enclosure value =
        Enclosure::from_bounds(*exact - T, *exact + T, precision_bits);
    return EvalReport{id,    n_terms,   std::move(ps),
                      T,     std::move(value), since(t0),
                      EvalStatus::converged, T};
  }
  const Enclosure& partial = std::get<Enclosure>(ps);
  auto [value, T] = widen_by_tail(partial, bound, precision_bits);
  const Rational achieved = T + partial.width();
  return EvalReport{id,
                    n_terms,
                    std::move(ps),
                    T,
                    std::move(value),
                    since(t0),
                    EvalStatus::converged,
                    achieved};
}

std::vector<Checkpoint> checkpoint_run(const SeriesId& id,
                                       const std::vector<std::uint64_t>& at_terms,
                                       mpfr_prec_t precision_bits, Exec exec) {
  validate(id);
  const auto t0 = std::chrono::steady_clock::now();
  Accumulator acc(id, precision_bits, exec);
  std::vector<Checkpoint> out;
  out.reserve(at_terms.size());
  std::uint64_t prev = 0;
  for (const std::uint64_t req : at_terms) {
    if (req < prev) {
      throw std::invalid_argument("checkpoint_run: checkpoints must be ascending");
    }
    prev = req;
    const std::uint64_t N = align_cut_up(id, req);
    acc.extend_to(N);
    const Rational bound = tail_bound(id, N);
    auto [value, T] = widen_by_tail(acc.partial(), bound, precision_bits);
    out.push_back(Checkpoint{N, acc.partial(), T, std::move(value), since(t0)});
  }
  return out;
}

}  // namespace vacca
