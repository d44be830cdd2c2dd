#include "vacca/verification.hpp"

#include <algorithm>
#include <utility>

#include "vacca/numerics.hpp"

namespace vacca {

namespace {

constexpr size_t kMaxWitnesses = 8;

struct ScanPart {
  Rational max_res;
  std::vector<Witness> wit;
};

void merge_part(ScanPart& acc, ScanPart&& part) {
  if (part.max_res > acc.max_res) acc.max_res = std::move(part.max_res);
  for (auto& w : part.wit) {
    if (acc.wit.size() >= kMaxWitnesses) break;
    acc.wit.push_back(std::move(w));
  }
}

LemmaReport finish(std::string suite, std::uint64_t cases, ScanPart&& part) {
  LemmaReport r;
  r.suite = std::move(suite);
  r.cases_checked = cases;
  r.max_residual = std::move(part.max_res);
  r.witnesses = std::move(part.wit);
  r.passed = r.witnesses.empty();
  return r;
}

void note_width(ScanPart& part, const Rational& w) {
  if (w > part.max_res) part.max_res = w;
}

void add_witness(ScanPart& part, Witness w) {
  if (part.wit.size() < kMaxWitnesses) part.wit.push_back(std::move(w));
}

// Spot cuts for exact full partial-sum comparisons: decades up to n_max,
// plus n_max itself.
std::vector<std::uint64_t> spot_cuts(std::uint64_t n_max) {
  std::vector<std::uint64_t> cuts;
  for (std::uint64_t c : {std::uint64_t{10}, std::uint64_t{100},
                          std::uint64_t{1000}, std::uint64_t{10000}}) {
    if (c < n_max) cuts.push_back(c);
  }
  if (n_max >= 1) cuts.push_back(n_max);
  return cuts;
}

}  // namespace

LemmaReport check_lemma1(std::uint64_t n_max, mpfr_prec_t precision_bits,
                         Exec exec) {
  const Rational tol = Rational::pow2(4 - precision_bits);
  auto per_chunk = [precision_bits, &tol](std::uint64_t a, std::uint64_t b) {
    ScanPart part;
    for (std::uint64_t n = a; n <= b; ++n) {
      const Enclosure an = a_term(n, precision_bits).value;
      const Enclosure a2 = a_term(2 * n, precision_bits).value;
      const Enclosure a3 = a_term(2 * n + 1, precision_bits).value;
      const mpz_class two_n = 2 * mpz_class(static_cast<unsigned long>(n));
      const Rational pair_weight(mpz_class(1), two_n * (two_n + 1));
      const Enclosure resid = an - a2 - a3 - pair_weight;
      note_width(part, resid.width());
      if (!resid.contains_zero() || resid.width() > tol) {
        add_witness(part, Witness{n, 2, Sign::plus,
                                  "recursion residual " + resid.str(8) +
                                      " not a tight zero enclosure"});
      }
      const Rational gap = Rational(1, static_cast<long>(n)) -
                           Rational(1, static_cast<long>(n) + 1);
      if (!an.is_positive() || !(an.hi() < gap)) {
        add_witness(part, Witness{n, 2, Sign::plus,
                                  "bounds 0 < A(n) < 1/n - 1/(n+1) violated"});
      }
    }
    return part;
  };
  ScanPart part = n_max >= 1
                      ? chunked_reduce<ScanPart>(1, n_max, {}, per_chunk,
                                                 merge_part, exec, 64)
                      : ScanPart{};
  return finish("lemma1", n_max, std::move(part));
}

LemmaReport check_lemma2(std::uint64_t n_max, Exec exec) {
  auto per_chunk = [](std::uint64_t a, std::uint64_t b) {
    ScanPart part;
    for (std::uint64_t n = a; n <= b; ++n) {
      const std::int64_t parity = n % 2 == 1 ? 1 : -1;  // (+/-1)^(n-1)
      if (delta(n / 2, Sign::plus) + 1 != delta(n, Sign::plus)) {
        add_witness(part, Witness{n, 2, Sign::plus, "digit recursion broken"});
      }
      if (delta(n / 2, Sign::minus) + parity != delta(n, Sign::minus)) {
        add_witness(part, Witness{n, 2, Sign::minus, "digit recursion broken"});
      }
    }
    return part;
  };
  ScanPart part = n_max >= 2
                      ? chunked_reduce<ScanPart>(2, n_max, {}, per_chunk,
                                                 merge_part, exec)
                      : ScanPart{};
  const std::uint64_t cases = n_max >= 2 ? 2 * (n_max - 1) : 0;
  return finish("lemma2", cases, std::move(part));
}

namespace {

// Remainder of the mother series over the dyadic block [2^(k-1), 2^k - 1]
// with the digit-delta coefficients.
Enclosure dyadic_block_remainder(unsigned k, Sign sign,
                                 mpfr_prec_t precision_bits) {
  const std::uint64_t lo = std::uint64_t{1} << (k - 1);
  const std::uint64_t hi = (std::uint64_t{1} << k) - 1;
  return enclosure_range_sum(
      [sign, precision_bits](std::uint64_t n) {
        return a_term(n, precision_bits)
            .value.scaled_by(static_cast<long>(delta(n, sign)));
      },
      lo, hi, precision_bits);
}

void require_k(unsigned k) {
  if (k < 1 || k > 24) {
    throw std::invalid_argument("dyadic cut index k must be in [1, 24]");
  }
}

}  // namespace

LemmaReport check_lemma3(unsigned k, Sign sign, mpfr_prec_t precision_bits) {
  require_k(k);
  const std::uint64_t top = (std::uint64_t{1} << k) - 1;
  const std::uint64_t paired_cut = (std::uint64_t{1} << (k - 1)) - 1;
  const SeriesId base = SeriesId::make(Family::base4, sign);
  const SeriesId paired = SeriesId::make(Family::paired6, sign);
  const Enclosure S =
      std::get<Enclosure>(partial_sum(base, top, precision_bits));
  const Rational D =
      std::get<Rational>(partial_sum(paired, paired_cut, precision_bits));
  const Enclosure R = dyadic_block_remainder(k, sign, precision_bits);
  const Enclosure resid = S - R - D;
  const Rational tol =
      Rational::pow2(static_cast<long>(k) + 4 - precision_bits);
  ScanPart part;
  note_width(part, resid.width());
  if (!resid.contains_zero() || resid.width() > tol) {
    add_witness(part, Witness{k, 2, sign,
                              "partial-sum decomposition residual " +
                                  resid.str(8) + " not a tight zero enclosure"});
  }
  return finish("lemma3", 1, std::move(part));
}

LemmaReport check_remainder_bound(unsigned k, Sign sign,
                                  mpfr_prec_t precision_bits) {
  require_k(k);
  const Rational bound =
      Rational(static_cast<long>(k)) * Rational::pow2(-static_cast<long>(k));
  ScanPart part;
  bool decided = false;
  for (int attempt = 0; attempt < 4 && !decided; ++attempt) {
    const mpfr_prec_t p = precision_bits + 64 * attempt;
    const Enclosure magnitude = abs(dyadic_block_remainder(k, sign, p));
    note_width(part, magnitude.width());
    if (magnitude.hi() < bound) {
      decided = true;
    } else if (magnitude.lo() >= bound) {
      decided = true;
      add_witness(part, Witness{k, 2, sign,
                                "|R| = " + magnitude.str(8) +
                                    " not strictly below " + bound.str()});
    }
    // otherwise the enclosure straddles the bound: escalate precision
  }
  if (!decided) {
    add_witness(part, Witness{k, 2, sign,
                              "bound comparison undecided after precision "
                              "escalation"});
  }
  return finish("remainder", 1, std::move(part));
}

LemmaReport check_theorem1_limits(Sign sign, std::uint64_t n_terms,
                                  mpfr_prec_t precision_bits, Exec exec) {
  if (n_terms < 1) {
    throw std::invalid_argument("check_theorem1_limits: n_terms must be >= 1");
  }
  const EvalReport paired = report_at_cut(
      SeriesId::make(Family::paired6, sign), n_terms, precision_bits, exec);
  const EvalReport base = report_at_cut(SeriesId::make(Family::base4, sign),
                                        n_terms, precision_bits, exec);
  ScanPart part;
  note_width(part, paired.value.width() + base.value.width());
  if (!intersects(paired.value, base.value)) {
    add_witness(part,
                Witness{n_terms, 2, sign,
                        "certified enclosures disjoint: " + paired.value.str(12) +
                            " vs " + base.value.str(12)});
  }
  return finish("theorem1-limits", 1, std::move(part));
}

LemmaReport check_pairing(std::uint64_t n_max, Exec exec) {
  ScanPart part;
  std::uint64_t cases = 0;
  for (const Sign sign : {Sign::plus, Sign::minus}) {
    if (n_max < 1) continue;
    const SeriesId alt = SeriesId::make(Family::rational5, sign);
    const SeriesId paired = SeriesId::make(Family::paired6, sign);
    auto per_chunk = [&alt, &paired, sign](std::uint64_t a, std::uint64_t b) {
      ScanPart p;
      for (std::uint64_t n = a; n <= b; ++n) {
        const Rational lhs =
            rational_term(alt, 2 * n) + rational_term(alt, 2 * n + 1);
        if (lhs != rational_term(paired, n)) {
          add_witness(p, Witness{n, 2, sign, "pair sum differs from paired term"});
        }
      }
      return p;
    };
    merge_part(part,
               chunked_reduce<ScanPart>(1, n_max, {}, per_chunk, merge_part, exec));
    cases += n_max;
    for (const std::uint64_t N : spot_cuts(n_max)) {
      const Rational lhs = std::get<Rational>(partial_sum(alt, 2 * N));
      const Rational rhs = std::get<Rational>(partial_sum(paired, N));
      ++cases;
      if (lhs != rhs) {
        add_witness(part, Witness{N, 2, sign,
                                  "full partial sums differ at spot cut"});
      }
    }
  }
  return finish("pairing", cases, std::move(part));
}

LemmaReport check_vacca_identity(std::uint64_t n_max, Exec exec) {
  const SeriesId vac = SeriesId::make(Family::vacca);
  const SeriesId alt = SeriesId::make(Family::rational5, Sign::plus);
  auto per_chunk = [&vac, &alt](std::uint64_t a, std::uint64_t b) {
    ScanPart p;
    for (std::uint64_t n = a; n <= b; ++n) {
      if (rational_term(vac, n) != rational_term(alt, n)) {
        add_witness(p, Witness{n, 2, Sign::plus, "terms differ"});
      }
    }
    return p;
  };
  ScanPart part = n_max >= 2
                      ? chunked_reduce<ScanPart>(2, n_max, {}, per_chunk,
                                                 merge_part, exec)
                      : ScanPart{};
  return finish("vacca-identity", n_max >= 2 ? n_max - 1 : 0, std::move(part));
}

LemmaReport check_grouping(unsigned q, std::uint64_t n_max, Exec exec) {
  if (q < 2) throw std::invalid_argument("check_grouping: q must be >= 2");
  ScanPart part;
  std::uint64_t cases = 0;
  if (n_max >= 1) {
    const SeriesId alt = SeriesId::make(Family::carlitz, Sign::plus, q);
    const SeriesId grouped = SeriesId::make(Family::grouped17, Sign::plus, q);
    auto per_chunk = [&alt, &grouped, q](std::uint64_t a, std::uint64_t b) {
      ScanPart p;
      for (std::uint64_t n = a; n <= b; ++n) {
        Rational lhs;
        for (unsigned m = 0; m < q; ++m) lhs += rational_term(alt, q * n + m);
        if (lhs != rational_term(grouped, n)) {
          add_witness(p, Witness{n, q, Sign::plus,
                                 "q-tuple sum differs from grouped term"});
        }
      }
      return p;
    };
    merge_part(part, chunked_reduce<ScanPart>(1, n_max, {}, per_chunk,
                                              merge_part, exec));
    cases += n_max;
    for (const std::uint64_t N : spot_cuts(n_max)) {
      const Rational lhs =
          std::get<Rational>(partial_sum(alt, q * N + q - 1));
      const Rational rhs = std::get<Rational>(partial_sum(grouped, N));
      ++cases;
      if (lhs != rhs) {
        add_witness(part, Witness{N, q, Sign::plus,
                                  "full partial sums differ at spot cut"});
      }
    }
  }
  return finish("grouping", cases, std::move(part));
}

LemmaReport check_q2_addison(std::uint64_t n_max, Exec exec) {
  const SeriesId accel = SeriesId::make(Family::theorem2, Sign::plus, 2);
  const SeriesId addison = SeriesId::make(Family::addison);
  auto per_chunk = [&accel, &addison](std::uint64_t a, std::uint64_t b) {
    ScanPart p;
    for (std::uint64_t n = a; n <= b; ++n) {
      if (rational_term(accel, n) != rational_term(addison, n)) {
        add_witness(p, Witness{n, 2, Sign::plus, "terms differ"});
      }
    }
    return p;
  };
  ScanPart part = n_max >= 1
                      ? chunked_reduce<ScanPart>(1, n_max, {}, per_chunk,
                                                 merge_part, exec)
                      : ScanPart{};
  return finish("q2-addison", n_max, std::move(part));
}

LemmaReport check_averaged_identity(
    unsigned q_max, std::uint64_t n_max,
    const std::function<PPoly(unsigned)>& builder) {
  ScanPart part;
  std::uint64_t cases = 0;
  for (unsigned q = 2; q <= q_max; ++q) {
    const PPoly poly = builder ? builder(q) : build_p_poly(q);
    for (std::uint64_t n = 1; n <= n_max; ++n) {
      const Rational resid = averaged_identity_residual(poly, n);
      ++cases;
      note_width(part, abs(resid));
      if (!resid.is_zero()) {
        add_witness(part, Witness{n, q, Sign::plus,
                                  "averaging residual " + resid.str() +
                                      " is nonzero"});
      }
    }
  }
  if (q_max >= 2 && n_max >= 1) {
    for (unsigned q = 2; q <= std::max(q_max, 200u); ++q) {
      ++cases;
      if (two_m_minus_q_sum(q) != 0) {
        add_witness(part, Witness{0, q, Sign::plus,
                                  "sum of (2m - q) over m is nonzero"});
      }
    }
  }
  return finish("averaged-identity", cases, std::move(part));
}

LemmaReport check_shape_ratio(const std::vector<unsigned>& qs,
                              const std::vector<std::uint64_t>& samples) {
  ScanPart part;
  std::uint64_t cases = 0;
  for (const unsigned q : qs) {
    for (const std::uint64_t n : samples) {
      ++cases;
      const Rational dev = abs(shape_ratio(q, n) - Rational(1));
      note_width(part, dev);
      // n * |ratio - 1| increases toward 3/2, so 3/(2n) is a uniform bound.
      if (dev * Rational(2 * static_cast<long>(n)) > Rational(3)) {
        add_witness(part, Witness{n, q, Sign::plus,
                                  "|shape ratio - 1| exceeds (3/2)/n"});
      }
      // Staircase window: with L = floor_log(n, q) + 1, the exact integer
      // statement of |L ln q - ln n| <= 2 ln q is q^(L-2) <= n < q^(L+2).
      const std::uint64_t L = floor_log(n, q) + 1;
      const mpz_class qL = int_pow(static_cast<unsigned long>(q),
                                   static_cast<unsigned long>(L));
      const mpz_class nz(static_cast<unsigned long>(n));
      const mpz_class q2 = mpz_class(static_cast<unsigned long>(q)) *
                           static_cast<unsigned long>(q);
      if (nz * q2 < qL || nz >= qL * q2) {
        add_witness(part, Witness{n, q, Sign::plus,
                                  "staircase coefficient window violated"});
      }
    }
  }
  return finish("shape-ratio", cases, std::move(part));
}

namespace {

void merge_report(LemmaReport& agg, LemmaReport&& part) {
  agg.cases_checked += part.cases_checked;
  if (part.max_residual > agg.max_residual) {
    agg.max_residual = std::move(part.max_residual);
  }
  for (auto& w : part.witnesses) {
    if (agg.witnesses.size() >= kMaxWitnesses) break;
    agg.witnesses.push_back(std::move(w));
  }
  agg.passed = agg.witnesses.empty();
}

}  // namespace

LemmaReport run_suite(const std::string& suite, const VerifyConfig& config) {
  if (suite == "lemma1") {
    return check_lemma1(config.lemma1_n_max, config.precision_bits, config.exec);
  }
  if (suite == "lemma2") return check_lemma2(config.lemma2_n_max, config.exec);
  if (suite == "lemma3") {
    LemmaReport agg{"lemma3", 0, Rational(0), true, {}};
    for (unsigned k = 1; k <= config.lemma3_k_max; ++k) {
      for (const Sign sign : {Sign::plus, Sign::minus}) {
        merge_report(agg, check_lemma3(k, sign, config.precision_bits));
      }
    }
    return agg;
  }
  if (suite == "remainder") {
    LemmaReport agg{"remainder", 0, Rational(0), true, {}};
    for (unsigned k = 1; k <= config.remainder_k_max; ++k) {
      for (const Sign sign : {Sign::plus, Sign::minus}) {
        merge_report(agg,
                     check_remainder_bound(k, sign, config.precision_bits));
      }
    }
    return agg;
  }
  if (suite == "pairing") return check_pairing(config.pairing_n_max, config.exec);
  if (suite == "vacca-identity") {
    return check_vacca_identity(config.vacca_n_max, config.exec);
  }
  if (suite == "grouping") {
    LemmaReport agg{"grouping", 0, Rational(0), true, {}};
    for (const unsigned q : config.grouping_qs) {
      merge_report(agg, check_grouping(q, config.grouping_n_max, config.exec));
    }
    return agg;
  }
  if (suite == "q2-addison") return check_q2_addison(config.q2_n_max, config.exec);
  if (suite == "averaged-identity") {
    return check_averaged_identity(config.averaged_q_max, config.averaged_n_max,
                                   config.p_poly_builder);
  }
  if (suite == "shape-ratio") {
    return check_shape_ratio(config.shape_qs, config.shape_samples);
  }
  if (suite == "theorem1-limits") {
    LemmaReport agg{"theorem1-limits", 0, Rational(0), true, {}};
    for (const Sign sign : {Sign::plus, Sign::minus}) {
      merge_report(agg, check_theorem1_limits(sign, config.theorem1_n_terms,
                                              config.precision_bits,
                                              config.exec));
    }
    return agg;
  }
  throw std::invalid_argument("unknown verification suite: " + suite);
}

std::vector<LemmaReport> run_all(const VerifyConfig& config) {
  static const char* const kSuites[] = {
      "lemma1",   "lemma2",         "lemma3",
      "remainder", "pairing",        "vacca-identity",
      "grouping", "q2-addison",     "averaged-identity",
      "shape-ratio"};
  std::vector<LemmaReport> out;
  out.reserve(std::size(kSuites));
  for (const char* suite : kSuites) out.push_back(run_suite(suite, config));
  return out;
}

}  // namespace vacca
