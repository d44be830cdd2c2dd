#include "vacca/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <regex>
#include <sstream>

#include "vacca/bench.hpp"
#include "vacca/digits.hpp"
#include "vacca/verification.hpp"

namespace vacca {

Rational parse_target_error(const std::string& text) {
  static const std::regex fraction(R"(^\+?(\d+)/(\d+)$)");
  static const std::regex decimal(R"(^\+?(\d*)(?:\.(\d+))?(?:[eE]([+-]?\d+))?$)");
  std::smatch m;
  Rational value;
  if (std::regex_match(text, m, fraction)) {
    const mpz_class den(m[2].str(), 10);
    if (den == 0) throw UsageError("target error has a zero denominator");
    value = Rational(mpz_class(m[1].str(), 10), den);
  } else if (std::regex_match(text, m, decimal) &&
             (m[1].length() > 0 || m[2].length() > 0)) {
    // Base 10 explicitly: leading zeros must not trigger octal detection.
    const std::string digits = m[1].str() + m[2].str();
    value = Rational(mpz_class(digits, 10));
    long exponent = m[3].length() > 0 ? std::stol(m[3].str()) : 0;
    exponent -= static_cast<long>(m[2].length());
    value *= pow10(exponent);
  } else {
    throw UsageError("target error '" + text +
                     "' is not a decimal or a fraction");
  }
  if (value.sgn() <= 0) throw UsageError("target error must be positive");
  return value;
}

namespace {

const std::vector<std::string> kSuiteNames = {
    "all",      "lemma1",         "lemma2",           "lemma3",
    "remainder", "pairing",        "vacca-identity",   "grouping",
    "q2-addison", "averaged-identity", "shape-ratio", "theorem1-limits"};

const std::vector<std::string> kSeqKinds = {"delta-plus", "delta-minus",
                                            "floor-log2", "vacca-numerators"};

mpfr_prec_t precision_from_env() {
  const char* env = std::getenv("VACCA_PRECISION_BITS");
  if (!env || !*env) return 0;
  char* end = nullptr;
  const long bits = std::strtol(env, &end, 10);
  if (*end != '\0' || bits < kMinPrecisionBits || bits > (1 << 24)) {
    throw UsageError(
        "VACCA_PRECISION_BITS must be an integer >= " +
        std::to_string(kMinPrecisionBits));
  }
  return static_cast<mpfr_prec_t>(bits);
}

OutFormat parse_format(const std::string& name) {
  if (name == "text") return OutFormat::text;
  if (name == "json") return OutFormat::json;
  if (name == "csv") return OutFormat::csv;
  throw UsageError("unknown format: " + name);
}

}  // namespace

CliConfig parse_args(const std::vector<std::string>& args) {
  CliConfig cfg;
  CLI::App app{"certified evaluation of Euler's constant and ln(4/pi) from "
               "digit-count series"};
  app.require_subcommand(1);

  long precision = 0;
  std::string format;
  app.add_option("--precision-bits", precision,
                 "working precision in bits (>= 16)");
  app.add_option("--format", format, "output format");
  app.add_option("--out", cfg.out_path, "write output to this file");
  app.add_flag("--serial", cfg.serial, "disable the parallel kernels");

  auto* compute = app.add_subcommand(
      "compute", "evaluate one series to a target error or a fixed cut");
  compute->fallthrough();
  std::string constant = "gamma";
  std::string method = "paired6";
  unsigned q = 2;
  std::uint64_t terms = 0;
  std::string target;
  compute->add_option("--constant", constant, "gamma or ln4pi")
      ->check(CLI::IsMember({"gamma", "ln4pi"}));
  compute->add_option("--method", method, "series family");
  auto* q_opt = compute->add_option("--q", q, "base for the q-parameterized families");
  auto* terms_opt = compute->add_option("--terms", terms, "exact cut: number of terms");
  auto* target_opt =
      compute->add_option("--target-error", target,
                          "certified error goal, e.g. 1e-10 (default)");
  terms_opt->excludes(target_opt);
  compute->add_option("--term-budget", cfg.term_budget,
                      "evaluation cap in terms");

  auto* verify = app.add_subcommand("verify", "run the identity/bound suites");
  verify->fallthrough();
  verify->add_option("--suite", cfg.suite, "suite id or 'all'")
      ->check(CLI::IsMember(kSuiteNames));
  verify->add_flag("--full", cfg.full_scale,
                   "acceptance-scale ranges instead of the quick defaults");

  auto* bench = app.add_subcommand(
      "bench", "convergence records across series and checkpoints");
  bench->fallthrough();
  std::vector<std::string> methods;
  bench->add_option("--methods", methods,
                    "series families to benchmark (default: the accelerated "
                    "family plus addison and paired6)")
      ->delimiter(',');
  bench->add_option("--qs", cfg.bench_qs, "bases for q-parameterized families")
      ->delimiter(',');
  bench->add_option("--checkpoints", cfg.checkpoints,
                    "ascending term-count checkpoints")
      ->delimiter(',');
  bench->add_flag("--shape-probe", cfg.shape_probe,
                  "audit the asymptotic term shape instead of convergence");
  bench->add_option("--samples", cfg.shape_samples,
                    "sample indices for --shape-probe")
      ->delimiter(',');

  auto* seq = app.add_subcommand("seq", "print an integer sequence");
  seq->fallthrough();
  seq->add_option("--kind", cfg.seq_kind, "which sequence")
      ->check(CLI::IsMember(kSeqKinds));
  seq->add_option("--count", cfg.seq_count, "how many values, from n = 1");

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("vacca");
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    throw HelpRequest(app.help());
  } catch (const CLI::CallForAllHelp& e) {
    throw HelpRequest(app.help("", CLI::AppFormatMode::All));
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  if (precision != 0) {
    if (precision < kMinPrecisionBits || precision > (1 << 24)) {
      throw UsageError("--precision-bits must be >= " +
                       std::to_string(kMinPrecisionBits));
    }
    cfg.precision_bits = static_cast<mpfr_prec_t>(precision);
  } else if (const mpfr_prec_t env_bits = precision_from_env()) {
    cfg.precision_bits = env_bits;
  }

  if (compute->parsed()) {
    cfg.command = Command::compute;
    cfg.constant = constant == "gamma" ? Constant::gamma : Constant::ln4pi;
    const auto family = family_from_name(method);
    if (!family) throw UsageError("unknown method: " + method);
    if (q_opt->count() > 0 && !family_has_q(*family)) {
      throw UsageError("--q is only valid for the q-parameterized families");
    }
    const Sign sign =
        cfg.constant == Constant::ln4pi ? Sign::minus : Sign::plus;
    try {
      cfg.series = SeriesId::make(*family, sign, q);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    if (terms_opt->count() > 0) cfg.terms = terms;
    if (target_opt->count() > 0) cfg.target_error = parse_target_error(target);
  } else if (verify->parsed()) {
    cfg.command = Command::verify;
  } else if (bench->parsed()) {
    cfg.command = Command::bench;
    cfg.bench_methods = std::move(methods);
    for (const std::string& name : cfg.bench_methods) {
      if (!family_from_name(name)) throw UsageError("unknown method: " + name);
    }
    for (size_t i = 1; i < cfg.checkpoints.size(); ++i) {
      if (cfg.checkpoints[i] < cfg.checkpoints[i - 1]) {
        throw UsageError("--checkpoints must be ascending");
      }
    }
    if (cfg.checkpoints.empty()) throw UsageError("--checkpoints is empty");
  } else {
    cfg.command = Command::seq;
  }

  if (!format.empty()) {
    cfg.format = parse_format(format);
  } else if (cfg.command == Command::bench) {
    cfg.format = OutFormat::csv;
  }
  switch (cfg.command) {
    case Command::compute:
    case Command::verify:
      if (cfg.format == OutFormat::csv) {
        throw UsageError("csv output is only available for bench");
      }
      break;
    case Command::bench:
      if (cfg.format == OutFormat::text && !cfg.shape_probe) {
        throw UsageError("bench records are csv or json");
      }
      if (cfg.shape_probe && cfg.format != OutFormat::text &&
          format != "") {
        throw UsageError("the shape probe prints a text table");
      }
      break;
    case Command::seq:
      if (cfg.format != OutFormat::text) {
        throw UsageError("seq output is text");
      }
      break;
  }
  return cfg;
}

namespace {

std::string sign_name(Sign s) { return to_string(s); }

nlohmann::ordered_json report_json(const EvalReport& r, Constant constant) {
  nlohmann::ordered_json j;
  j["series"] = family_name(r.series.family);
  j["sign"] = sign_name(r.series.sign);
  j["q"] = r.series.q;
  j["constant"] = constant == Constant::gamma ? "gamma" : "ln4pi";
  j["status"] =
      r.status == EvalStatus::converged ? "converged" : "budget-exhausted";
  j["terms"] = r.terms_used;
  if (const Rational* exact = std::get_if<Rational>(&r.partial)) {
    j["exact"] = exact->str();
  } else {
    j["exact"] = nullptr;
  }
  j["value_prefix"] = agreed_prefix(r.value);
  j["certified_error"] = sci_string_up(r.achieved_error);
  j["elapsed_ns"] = static_cast<std::uint64_t>(r.elapsed.count());
  return j;
}

void report_text(const EvalReport& r, Constant constant, std::ostream& out) {
  out << "series: " << r.series.name() << '\n';
  out << "constant: " << (constant == Constant::gamma ? "gamma" : "ln4pi")
      << '\n';
  out << "status: "
      << (r.status == EvalStatus::converged ? "converged" : "budget-exhausted")
      << '\n';
  out << "terms: " << r.terms_used << '\n';
  if (const Rational* exact = std::get_if<Rational>(&r.partial)) {
    out << "exact: " << exact->str() << '\n';
  }
  const std::uint64_t digits = agreed_fractional_digits(r.value);
  out << "value: "
      << (digits > 0 ? decimal_render(r.value, digits)
                     : "no agreed digits, enclosure " + r.value.str(6))
      << '\n';
  out << "certified error <= " << sci_string_up(r.achieved_error) << '\n';
  out << "elapsed_ns: " << r.elapsed.count() << '\n';
}

int run_compute(const CliConfig& cfg, std::ostream& out) {
  const Exec exec = cfg.serial ? Exec::serial : Exec::parallel;
  EvalReport report =
      cfg.terms ? report_at_cut(cfg.series, *cfg.terms, cfg.precision_bits, exec)
                : evaluate(cfg.series, cfg.target_error, cfg.precision_bits,
                           cfg.term_budget, exec);
  if (cfg.format == OutFormat::json) {
    out << report_json(report, cfg.constant).dump(2) << '\n';
  } else {
    report_text(report, cfg.constant, out);
  }
  return report.status == EvalStatus::converged ? 0 : 3;
}

nlohmann::ordered_json witness_json(const Witness& w) {
  return nlohmann::ordered_json{{"n", w.n},
                                {"q", w.q},
                                {"sign", sign_name(w.sign)},
                                {"detail", w.detail}};
}

int run_verify(const CliConfig& cfg, std::ostream& out) {
  VerifyConfig vc;
  vc.precision_bits = cfg.precision_bits;
  vc.exec = cfg.serial ? Exec::serial : Exec::parallel;
  if (cfg.full_scale) {
    vc.lemma1_n_max = 1000;
    vc.lemma2_n_max = std::uint64_t{1} << 22;
    vc.lemma3_k_max = 18;
    vc.remainder_k_max = 18;
    vc.pairing_n_max = 10000;
    vc.vacca_n_max = 100000;
    vc.grouping_n_max = 10000;
    vc.q2_n_max = 100000;
    vc.averaged_n_max = 1000;
    vc.shape_samples = {10, 100, 1000, 10000};
    vc.theorem1_n_terms = 4096;
  }
  const std::vector<LemmaReport> reports =
      cfg.suite == "all" ? run_all(vc)
                         : std::vector<LemmaReport>{run_suite(cfg.suite, vc)};
  bool all_passed = true;
  if (cfg.format == OutFormat::json) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const LemmaReport& r : reports) {
      all_passed = all_passed && r.passed;
      nlohmann::ordered_json j;
      j["suite"] = r.suite;
      j["cases_checked"] = r.cases_checked;
      j["max_residual"] = sci_string_up(r.max_residual);
      j["passed"] = r.passed;
      nlohmann::ordered_json wits = nlohmann::ordered_json::array();
      for (const Witness& w : r.witnesses) wits.push_back(witness_json(w));
      j["witnesses"] = std::move(wits);
      arr.push_back(std::move(j));
    }
    out << arr.dump(2) << '\n';
  } else {
    for (const LemmaReport& r : reports) {
      all_passed = all_passed && r.passed;
      out << r.suite << ": " << (r.passed ? "pass" : "FAIL") << " (cases "
          << r.cases_checked << ", max residual "
          << sci_string_up(r.max_residual) << ")\n";
      for (const Witness& w : r.witnesses) {
        out << "  witness: n=" << w.n << " q=" << w.q << " sign="
            << sign_name(w.sign) << ": " << w.detail << '\n';
      }
    }
    out << (all_passed ? "all suites passed" : "FAILURES above") << '\n';
  }
  return all_passed ? 0 : 1;
}

int run_bench(const CliConfig& cfg, std::ostream& out) {
  const Exec exec = cfg.serial ? Exec::serial : Exec::parallel;
  if (cfg.shape_probe) {
    for (const unsigned q : cfg.bench_qs) {
      const ShapeProbe probe = leading_constant_probe(q, cfg.shape_samples);
      out << "shape ratios, q=" << q << '\n';
      for (const ShapeProbeRow& row : probe.rows) {
        out << "  n=" << row.n << " ratio=" << decimal_render(row.ratio, 10)
            << " deviation=" << sci_string_up(row.deviation) << '\n';
      }
      for (const auto& [decade, dev] : decade_maxima(probe)) {
        out << "  decade 10^" << decade
            << ": max deviation " << sci_string_up(dev) << '\n';
      }
    }
    return 0;
  }
  std::vector<SeriesId> series;
  if (cfg.bench_methods.empty()) {
    for (const unsigned q : cfg.bench_qs) {
      series.push_back(SeriesId::make(Family::theorem2, Sign::plus, q));
    }
    series.push_back(SeriesId::make(Family::addison));
    series.push_back(SeriesId::make(Family::paired6, Sign::plus));
  } else {
    for (const std::string& name : cfg.bench_methods) {
      const Family family = *family_from_name(name);
      if (family_has_q(family)) {
        for (const unsigned q : cfg.bench_qs) {
          series.push_back(SeriesId::make(family, Sign::plus, q));
        }
      } else {
        series.push_back(SeriesId::make(family, Sign::plus));
      }
    }
  }
  const std::vector<ConvergenceRecord> records =
      run_convergence(series, cfg.checkpoints, cfg.precision_bits, exec);
  emit(records,
       cfg.format == OutFormat::json ? EmitFormat::json : EmitFormat::csv, out);
  return 0;
}

int run_seq(const CliConfig& cfg, std::ostream& out) {
  for (std::uint64_t n = 1; n <= cfg.seq_count; ++n) {
    if (n > 1) out << ' ';
    if (cfg.seq_kind == "delta-plus") {
      out << delta(n, Sign::plus);
    } else if (cfg.seq_kind == "delta-minus") {
      out << delta(n, Sign::minus);
    } else if (cfg.seq_kind == "floor-log2") {
      out << floor_log(n, 2);
    } else {  // vacca-numerators: (-1)^n * floor(log2 n)
      const std::int64_t v = static_cast<std::int64_t>(floor_log(n, 2));
      out << (n % 2 == 0 ? v : -v);
    }
  }
  out << '\n';
  return 0;
}

}  // namespace

int run(const CliConfig& config, std::ostream& out, std::ostream& err) {
  std::ofstream file;
  std::ostream* sink = &out;
  if (!config.out_path.empty()) {
    file.open(config.out_path);
    if (!file) {
      err << "cannot open output file: " << config.out_path << '\n';
      return 1;
    }
    sink = &file;
  }
  try {
    switch (config.command) {
      case Command::compute:
        return run_compute(config, *sink);
      case Command::verify:
        return run_verify(config, *sink);
      case Command::bench:
        return run_bench(config, *sink);
      case Command::seq:
        return run_seq(config, *sink);
    }
    return 2;
  } catch (const UnalignedCutError& e) {
    err << e.what() << '\n';
    if (config.command == Command::compute && config.terms) {
      err << "nearest aligned cuts: ";
      const auto down = align_cut_down(config.series, *config.terms);
      if (down) err << *down << " and ";
      err << align_cut_up(config.series, *config.terms) << '\n';
    }
    return 2;
  } catch (const PrecisionUnreachableError& e) {
    err << e.what() << '\n';
    return 3;
  } catch (const UsageError& e) {
    err << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    err << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << e.what() << '\n';
    return 1;
  }
}

int run_cli(int argc, char** argv) {
  try {
    const CliConfig config =
        parse_args(std::vector<std::string>(argv + 1, argv + argc));
    return run(config, std::cout, std::cerr);
  } catch (const HelpRequest& e) {
    std::cout << e.what();
    return 0;
  } catch (const UsageError& e) {
    std::cerr << e.what() << '\n';
    std::cerr << "run with --help for usage" << '\n';
    return 2;
  }
}

}  // namespace vacca
