#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <string>

#include "gfd/errors.hpp"

namespace gfd {

using uint128 = unsigned __int128;

std::string u128_to_string(uint128 v);

/// Binomial coefficient as a 128-bit integer; throws on overflow.
uint128 binomial_u128(int n, int k);

/// Binomial coefficient as a double. Exact below 2^53, otherwise evaluated
/// through lgamma so that n up to a few hundred stays accurate to ~1e-14
/// relative error.
double binomial(int n, int k);

double log_factorial(int n);

/// Kahan compensated accumulator; keeps profile sums order-stable.
struct KahanSum {
  double sum = 0.0;
  double c = 0.0;
  void add(double x) {
    double y = x - c;
    double t = sum + y;
    c = (t - sum) - y;
    sum = t;
  }
  double value() const { return sum; }
};

inline int popcount64(std::uint64_t v) { return __builtin_popcountll(v); }

/// Runs fn(lo, hi) over a partition of [0, total) on up to `threads`
/// workers. Results must not depend on the partition; callers keep
/// determinism by writing to disjoint slots and reducing serially.
void run_chunked(std::size_t total, int threads,
                 const std::function<void(std::size_t, std::size_t)>& fn);

} // namespace gfd
