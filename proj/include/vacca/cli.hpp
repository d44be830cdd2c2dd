#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "vacca/numerics.hpp"
#include "vacca/rational.hpp"
#include "vacca/series.hpp"

namespace vacca {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised by parse_args for --help and friends; the caller prints the text
// and exits 0.
class HelpRequest : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Command { compute, verify, bench, seq };
enum class Constant { gamma, ln4pi };
enum class OutFormat { text, json, csv };

struct CliConfig {
  Command command = Command::compute;
  OutFormat format = OutFormat::text;
  std::string out_path;  // empty: standard output
  mpfr_prec_t precision_bits = 96;
  bool serial = false;

  // compute
  Constant constant = Constant::gamma;
  SeriesId series;
  std::optional<std::uint64_t> terms;
  Rational target_error = pow10(-10);
  std::uint64_t term_budget = kDefaultTermBudget;

  // verify
  std::string suite = "all";
  bool full_scale = false;

  // bench
  std::vector<std::string> bench_methods;
  std::vector<unsigned> bench_qs = {2, 3, 5, 10};
  std::vector<std::uint64_t> checkpoints = {100, 1000, 10000};
  bool shape_probe = false;
  std::vector<std::uint64_t> shape_samples = {10, 100, 1000, 10000};

  // seq
  std::string seq_kind = "delta-plus";
  std::uint64_t seq_count = 16;
};

// Exact positive rational from "1e-10", "0.25", "3/4", etc.
Rational parse_target_error(const std::string& text);

// argv without the program name.  Throws UsageError (exit 2) on bad usage
// and HelpRequest (exit 0) for --help.  Honors VACCA_PRECISION_BITS when
// --precision-bits is absent.
CliConfig parse_args(const std::vector<std::string>& args);

// Executes a parsed config.  Exit codes: 0 success, 1 verification
// failure, 2 usage, 3 precision unreachable or term budget exhausted.
int run(const CliConfig& config, std::ostream& out, std::ostream& err);

// parse_args + run wired to stdout/stderr; what main calls.
int run_cli(int argc, char** argv);

}  // namespace vacca
