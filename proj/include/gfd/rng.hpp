#pragma once

#include <cstdint>
#include <random>

namespace gfd {

/// Derives an independent stream seed from (seed, index). Used for
/// counter-based per-sample streams so chunked and serial Monte-Carlo
/// runs see identical randomness.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

/// Seeded generator with an explicit Box-Muller normal so sequences do not
/// depend on the standard library's distribution implementations.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t bits() { return eng_(); }

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  /// Standard normal.
  double normal();

private:
  std::mt19937_64 eng_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

} // namespace gfd
