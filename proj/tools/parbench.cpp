#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <string>

#include "vacca/digits.hpp"
#include "vacca/numerics.hpp"
#include "vacca/parallel.hpp"
#include "vacca/series.hpp"

namespace {

using vacca::Exec;

double seconds(std::chrono::steady_clock::duration d) {
  return std::chrono::duration<double>(d).count();
}

template <class Fn>
double timed(Fn&& fn) {
  const auto t0 = std::chrono::steady_clock::now();
  fn();
  return seconds(std::chrono::steady_clock::now() - t0);
}

void report(const std::string& kernel, std::uint64_t n, double serial,
            double parallel, bool agree) {
  std::cout << kernel << ": n=" << n << " serial=" << serial
            << "s parallel=" << parallel
            << "s speedup=" << (parallel > 0 ? serial / parallel : 0)
            << " agree=" << (agree ? "yes" : "NO") << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  std::uint64_t scale = 1;
  if (argc > 1) scale = std::strtoull(argv[1], nullptr, 10);
  if (scale < 1) scale = 1;
  std::cout << "worker threads: " << vacca::worker_threads() << '\n';

  {
    const std::uint64_t n = 200000 * scale;
    const auto id = vacca::SeriesId::make(vacca::Family::paired6);
    const auto term = [&id](std::uint64_t i) { return rational_term(id, i); };
    vacca::Rational rs, rp;
    const double ts = timed([&] { rs = vacca::rational_range_sum(term, 1, n, Exec::serial); });
    const double tp = timed([&] { rp = vacca::rational_range_sum(term, 1, n, Exec::parallel); });
    report("rational_range_sum", n, ts, tp, rs == rp);
  }

  {
    const std::uint64_t n = 100000 * scale;
    const auto term = [](std::uint64_t i) {
      return vacca::base_term(vacca::Sign::plus, i, 96);
    };
    vacca::Enclosure es(96), ep(96);
    const double ts = timed([&] { es = vacca::enclosure_range_sum(term, 1, n, 96, Exec::serial); });
    const double tp = timed([&] { ep = vacca::enclosure_range_sum(term, 1, n, 96, Exec::parallel); });
    // Chunking may change widths; both must still enclose the same value.
    const bool agree = intersects(es, ep);
    report("enclosure_range_sum", n, ts, tp, agree);
  }

  {
    const std::uint64_t n = (std::uint64_t{1} << 22) * scale;
    const auto pred = [](std::uint64_t i) {
      return vacca::delta(i / 2, vacca::Sign::minus) +
                 (i % 2 == 1 ? 1 : -1) ==
             vacca::delta(i, vacca::Sign::minus);
    };
    std::vector<std::uint64_t> hs, hp;
    const double ts = timed([&] { hs = vacca::scan_failures(pred, 2, n, Exec::serial); });
    const double tp = timed([&] { hp = vacca::scan_failures(pred, 2, n, Exec::parallel); });
    report("scan_failures", n, ts, tp, hs == hp);
  }

  return 0;
}
