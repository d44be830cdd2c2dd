#include "vacca/bench.hpp"

#include <json.hpp>

#include <algorithm>
#include <ostream>
#include <sstream>

#include "vacca/acceleration.hpp"
#include "vacca/digits.hpp"
#include "vacca/numerics.hpp"

namespace vacca {

bool same_measurement(const ConvergenceRecord& a, const ConvergenceRecord& b) {
  return a.series == b.series && a.n_terms == b.n_terms &&
         a.value_prefix == b.value_prefix &&
         a.certified_error == b.certified_error;
}

std::string sci_string_up(const Rational& x, unsigned significand_digits) {
  if (x.sgn() == 0) return "0";
  if (significand_digits < 1) {
    throw std::invalid_argument("sci_string_up: need at least one digit");
  }
  const bool negative = x.sgn() < 0;
  const Rational mag = abs(x);
  const mpz_class& num = mag.numerator();
  const mpz_class& den = mag.denominator();
  const mpz_class ten_sig = int_pow(10, significand_digits);
  const mpz_class ten_sig1 = ten_sig / 10;
  // mpz_sizeinbase may overestimate by one; the loops below correct it.
  long e = static_cast<long>(mpz_sizeinbase(num.get_mpz_t(), 10)) -
           static_cast<long>(mpz_sizeinbase(den.get_mpz_t(), 10));
  mpz_class m;
  for (;;) {
    // m = ceil(mag * 10^(significand_digits - 1 - e))
    const long shift = static_cast<long>(significand_digits) - 1 - e;
    mpz_class scaled_num = num;
    mpz_class scaled_den = den;
    if (shift >= 0) {
      scaled_num *= int_pow(10, static_cast<unsigned long>(shift));
    } else {
      scaled_den *= int_pow(10, static_cast<unsigned long>(-shift));
    }
    mpz_class rem;
    mpz_cdiv_qr(m.get_mpz_t(), rem.get_mpz_t(), scaled_num.get_mpz_t(),
                scaled_den.get_mpz_t());
    if (m > ten_sig) {
      ++e;
      continue;
    }
    // An inexact ceiling landing exactly on the smallest significand means
    // the value lives a decade lower, where a tighter bound exists.
    if (m < ten_sig1 || (m == ten_sig1 && rem != 0)) {
      --e;
      continue;
    }
    if (m == ten_sig) {  // ceiling rolled over, e.g. 9.9999... -> 10.000
      m = ten_sig1;
      ++e;
    }
    break;
  }
  std::string digits = m.get_str();
  std::string out = negative ? "-" : "";
  out += digits.substr(0, 1);
  if (significand_digits > 1) out += "." + digits.substr(1);
  char exp[8];
  std::snprintf(exp, sizeof exp, "e%+03ld", e);
  return out + exp;
}

std::vector<ConvergenceRecord> run_convergence(
    const std::vector<SeriesId>& series_list,
    const std::vector<std::uint64_t>& checkpoints,
    mpfr_prec_t precision_bits, Exec exec) {
  std::vector<ConvergenceRecord> out;
  out.reserve(series_list.size() * checkpoints.size());
  for (const SeriesId& id : series_list) {
    try {
      const std::vector<Checkpoint> cps =
          checkpoint_run(id, checkpoints, precision_bits, exec);
      for (const Checkpoint& cp : cps) {
        const Rational error = cp.tail + cp.partial.width();
        out.push_back(ConvergenceRecord{
            id, cp.n_terms, agreed_prefix(cp.value), sci_string_up(error),
            static_cast<std::uint64_t>(cp.elapsed.count())});
      }
    } catch (const std::exception& e) {
      out.push_back(
          ConvergenceRecord{id, 0, "", std::string("failed: ") + e.what(), 0});
    }
  }
  return out;
}

ShapeProbe leading_constant_probe(unsigned q,
                                  const std::vector<std::uint64_t>& samples) {
  ShapeProbe probe;
  probe.q = q;
  probe.rows.reserve(samples.size());
  for (const std::uint64_t n : samples) {
    const Rational ratio = shape_ratio(q, n);
    Rational dev = abs(ratio - Rational(1));
    probe.rows.push_back(ShapeProbeRow{n, ratio, std::move(dev)});
  }
  return probe;
}

std::vector<std::pair<std::uint64_t, Rational>> decade_maxima(
    const ShapeProbe& probe) {
  std::vector<std::pair<std::uint64_t, Rational>> out;
  for (const ShapeProbeRow& row : probe.rows) {
    const std::uint64_t decade = floor_log(row.n, 10);
    auto it = std::find_if(out.begin(), out.end(),
                           [decade](const auto& p) { return p.first == decade; });
    if (it == out.end()) {
      out.emplace_back(decade, row.deviation);
    } else if (row.deviation > it->second) {
      it->second = row.deviation;
    }
  }
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

namespace {

nlohmann::ordered_json record_json(const ConvergenceRecord& r) {
  return nlohmann::ordered_json{{"series", family_name(r.series.family)},
                                {"sign", to_string(r.series.sign)},
                                {"q", r.series.q},
                                {"n_terms", r.n_terms},
                                {"value_prefix", r.value_prefix},
                                {"certified_error", r.certified_error},
                                {"elapsed_ns", r.elapsed_ns}};
}

}  // namespace

void emit(const std::vector<ConvergenceRecord>& records, EmitFormat format,
          std::ostream& out) {
  if (format == EmitFormat::csv) {
    out << "series,sign,q,n_terms,value_prefix,certified_error,elapsed_ns\n";
    for (const ConvergenceRecord& r : records) {
      out << family_name(r.series.family) << ',' << to_string(r.series.sign)
          << ',' << r.series.q << ',' << r.n_terms << ',' << r.value_prefix
          << ',' << r.certified_error << ',' << r.elapsed_ns << '\n';
    }
    return;
  }
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const ConvergenceRecord& r : records) arr.push_back(record_json(r));
  out << arr.dump(2) << '\n';
}

std::vector<ConvergenceRecord> parse_json_records(const std::string& text) {
  const nlohmann::json arr = nlohmann::json::parse(text);
  if (!arr.is_array()) {
    throw std::invalid_argument("records document must be a json array");
  }
  std::vector<ConvergenceRecord> out;
  out.reserve(arr.size());
  for (const auto& item : arr) {
    const auto family = family_from_name(item.at("series").get<std::string>());
    if (!family) {
      throw std::invalid_argument("unknown series family in records document");
    }
    const std::string sign_name = item.at("sign").get<std::string>();
    if (sign_name != "plus" && sign_name != "minus") {
      throw std::invalid_argument("unknown sign in records document");
    }
    const SeriesId id =
        SeriesId::make(*family, sign_name == "plus" ? Sign::plus : Sign::minus,
                       item.at("q").get<unsigned>());
    out.push_back(ConvergenceRecord{
        id, item.at("n_terms").get<std::uint64_t>(),
        item.at("value_prefix").get<std::string>(),
        item.at("certified_error").get<std::string>(),
        item.at("elapsed_ns").get<std::uint64_t>()});
  }
  return out;
}

}  // namespace vacca
