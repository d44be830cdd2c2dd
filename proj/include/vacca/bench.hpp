#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "vacca/parallel.hpp"
#include "vacca/rational.hpp"
#include "vacca/series.hpp"

namespace vacca {

// One (series, checkpoint) measurement: the certified error is the decimal
// rendering of tail + enclosure width at the (auto-aligned) cut, and
// value_prefix is the decimal prefix both enclosure endpoints agree on.
struct ConvergenceRecord {
  SeriesId series;
  std::uint64_t n_terms = 0;
  std::string value_prefix;
  std::string certified_error;
  std::uint64_t elapsed_ns = 0;

  bool operator==(const ConvergenceRecord&) const = default;
};

// True when everything but the timing agrees; reruns with the same inputs
// must satisfy this.
bool same_measurement(const ConvergenceRecord& a, const ConvergenceRecord& b);

// One record per (series, checkpoint), checkpoints ascending and aligned up
// to each series' cut grid.  A series whose run fails contributes a single
// record with n_terms = 0 and the reason in certified_error instead of
// aborting the whole run.
std::vector<ConvergenceRecord> run_convergence(
    const std::vector<SeriesId>& series_list,
    const std::vector<std::uint64_t>& checkpoints,
    mpfr_prec_t precision_bits = kDefaultPrecisionBits,
    Exec exec = Exec::parallel);

// Exact audit table for the asymptotic term-shape claim.
struct ShapeProbeRow {
  std::uint64_t n = 0;
  Rational ratio;      // shape_ratio(q, n)
  Rational deviation;  // |ratio - 1|
};

struct ShapeProbe {
  unsigned q = 2;
  std::vector<ShapeProbeRow> rows;
};

ShapeProbe leading_constant_probe(unsigned q,
                                  const std::vector<std::uint64_t>& samples);

// Max deviation among rows with floor_log(n, 10) = decade, one entry per
// populated decade, ascending.
std::vector<std::pair<std::uint64_t, Rational>> decade_maxima(
    const ShapeProbe& probe);

enum class EmitFormat { csv, json };

// csv: header `series,sign,q,n_terms,value_prefix,certified_error,elapsed_ns`
// then one row per record.  json: an array of objects with the same keys.
// Both locale-independent.
void emit(const std::vector<ConvergenceRecord>& records, EmitFormat format,
          std::ostream& out);

// Inverse of emit(json).
std::vector<ConvergenceRecord> parse_json_records(const std::string& text);

// Ceiling decimal rendering of a positive rational in scientific notation
// with `significand_digits` digits, e.g. "9.099606e-09"; "0" for zero.
// Rounding up keeps a printed error bound dominating the true one.
std::string sci_string_up(const Rational& x, unsigned significand_digits = 7);

}  // namespace vacca
