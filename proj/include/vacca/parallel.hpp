#pragma once

#include <algorithm>
#include <cstdint>
#include <exception>
#include <utility>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "vacca/enclosure.hpp"
#include "vacca/rational.hpp"

namespace vacca {

// Execution policy for the summation and scan kernels.  serial is the plain
// reference implementation; parallel uses a fixed chunk grid whose
// boundaries depend only on the index range, never on the thread count, so
// results are reproducible across machines.
enum class Exec { serial, parallel };

inline int worker_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

namespace detail {

struct Chunk {
  std::uint64_t lo;
  std::uint64_t hi;  // inclusive
};

inline std::vector<Chunk> chunk_grid(std::uint64_t lo, std::uint64_t hi,
                                     std::uint64_t min_chunk = 2048,
                                     std::uint64_t max_chunks = 256) {
  const std::uint64_t n = hi - lo + 1;
  const std::uint64_t chunks =
      std::clamp<std::uint64_t>(n / min_chunk, 1, max_chunks);
  const std::uint64_t base = n / chunks;
  const std::uint64_t rem = n % chunks;
  std::vector<Chunk> grid;
  grid.reserve(chunks);
  std::uint64_t at = lo;
  for (std::uint64_t c = 0; c < chunks; ++c) {
    const std::uint64_t len = base + (c < rem ? 1 : 0);
    grid.push_back(Chunk{at, at + len - 1});
    at += len;
  }
  return grid;
}

template <class TermFn>
Rational rational_tree_sum(TermFn& f, std::uint64_t lo, std::uint64_t hi) {
  if (hi - lo < 8) {
    Rational s = f(lo);
    for (std::uint64_t n = lo + 1; n <= hi; ++n) s += f(n);
    return s;
  }
  const std::uint64_t mid = lo + (hi - lo) / 2;
  return rational_tree_sum(f, lo, mid) + rational_tree_sum(f, mid + 1, hi);
}

// Balanced pairwise fold; for exact values the result is independent of the
// grouping, this just keeps operand sizes in the additions comparable.
inline Rational pairwise_fold(std::vector<Rational> v) {
  if (v.empty()) return Rational(0);
  while (v.size() > 1) {
    std::vector<Rational> next;
    next.reserve((v.size() + 1) / 2);
    for (size_t i = 0; i + 1 < v.size(); i += 2) next.push_back(v[i] + v[i + 1]);
    if (v.size() % 2 == 1) next.push_back(v.back());
    v = std::move(next);
  }
  return v[0];
}

}  // namespace detail

// Runs per_chunk on each cell of the fixed chunk grid (in parallel when
// requested) and folds the results with merge in grid order.  Exceptions
// raised inside a chunk are rethrown on the calling thread.
template <class T, class ChunkFn, class MergeFn>
T chunked_reduce(std::uint64_t lo, std::uint64_t hi, T init, ChunkFn per_chunk,
                 MergeFn merge, Exec exec,
                 std::uint64_t min_chunk = 2048) {
  if (lo > hi) return init;
  if (exec == Exec::serial) {
    T acc = std::move(init);
    merge(acc, per_chunk(lo, hi));
    return acc;
  }
  const auto grid = detail::chunk_grid(lo, hi, min_chunk);
  std::vector<T> results(grid.size());
  std::exception_ptr fail;
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t c = 0; c < static_cast<std::int64_t>(grid.size()); ++c) {
    try {
      results[c] = per_chunk(grid[c].lo, grid[c].hi);
    } catch (...) {
#pragma omp critical
      if (!fail) fail = std::current_exception();
    }
  }
  if (fail) std::rethrow_exception(fail);
  T acc = std::move(init);
  for (auto& r : results) merge(acc, std::move(r));
  return acc;
}

// Exact sum of f(n) for n in [lo, hi].  Balanced summation keeps the
// intermediate numerators and denominators near the size of the final
// result instead of the running worst case.  Both execution policies
// produce the identical rational.
template <class TermFn>
Rational rational_range_sum(TermFn&& f, std::uint64_t lo, std::uint64_t hi,
                            Exec exec = Exec::parallel) {
  if (lo > hi) return Rational(0);
  if (exec == Exec::serial) return detail::rational_tree_sum(f, lo, hi);
  const auto grid = detail::chunk_grid(lo, hi);
  std::vector<Rational> partial(grid.size());
  std::exception_ptr fail;
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t c = 0; c < static_cast<std::int64_t>(grid.size()); ++c) {
    try {
      partial[c] = detail::rational_tree_sum(f, grid[c].lo, grid[c].hi);
    } catch (...) {
#pragma omp critical
      if (!fail) fail = std::current_exception();
    }
  }
  if (fail) std::rethrow_exception(fail);
  return detail::pairwise_fold(std::move(partial));
}

// Certified sum of f(n) for n in [lo, hi]; f may return Enclosure or
// Rational terms.  The serial path is the reference left-to-right fold; the
// parallel path sums the fixed chunks and folds their results in grid
// order, so it is equally deterministic.
template <class TermFn>
Enclosure enclosure_range_sum(TermFn&& f, std::uint64_t lo, std::uint64_t hi,
                              mpfr_prec_t precision_bits,
                              Exec exec = Exec::parallel) {
  Enclosure zero(precision_bits);
  if (lo > hi) return zero;
  auto fold_chunk = [&f, precision_bits](std::uint64_t a, std::uint64_t b) {
    Enclosure acc(precision_bits);
    for (std::uint64_t n = a; n <= b; ++n) acc.accumulate(f(n));
    return acc;
  };
  if (exec == Exec::serial) return fold_chunk(lo, hi);
  return chunked_reduce<Enclosure>(
      lo, hi, std::move(zero), fold_chunk,
      [](Enclosure& acc, Enclosure&& part) { acc.accumulate(part); }, exec);
}

// Indices in [lo, hi] where pred returns false, in increasing order, at
// most max_hits of them.  Serial and parallel agree on the result.
template <class Pred>
std::vector<std::uint64_t> scan_failures(Pred&& pred, std::uint64_t lo,
                                         std::uint64_t hi,
                                         Exec exec = Exec::parallel,
                                         size_t max_hits = 8) {
  if (lo > hi) return {};
  auto scan_chunk = [&pred, max_hits](std::uint64_t a, std::uint64_t b) {
    std::vector<std::uint64_t> hits;
    for (std::uint64_t n = a; n <= b && hits.size() < max_hits; ++n) {
      if (!pred(n)) hits.push_back(n);
    }
    return hits;
  };
  return chunked_reduce<std::vector<std::uint64_t>>(
      lo, hi, {}, scan_chunk,
      [max_hits](std::vector<std::uint64_t>& acc, std::vector<std::uint64_t>&& part) {
        for (auto n : part) {
          if (acc.size() >= max_hits) break;
          acc.push_back(n);
        }
      },
      exec);
}

}  // namespace vacca
