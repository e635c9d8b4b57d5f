#pragma once

#include <cstdint>
#include <vector>

#include "gfd/purity.hpp"

namespace gfd {

struct McEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
};

struct McClassEstimate {
  IrrepClass cls;
  McEstimate estimate;
  double analytic = 0.0;
  double sigma_distance = 0.0;
};

/// Analytic Haar mean of one class purity. Lie theories follow the general
/// rule 1/d on the trivial class and dim/(d(d+1)) elsewhere; the fermionic
/// theory uses the even-sector means (approximate up to exponentially small
/// corrections); Clifford classes use the engine's per-class convention.
double analytic_haar_mean(const QrtKind& qrt, const IrrepClass& cls);

/// Monte-Carlo means of every class purity over seeded Haar samples
/// (even-parity sampler for the fermionic theory). Per-sample seeds are
/// derived from (seed, index), and chunks reduce in fixed order, so results
/// are bitwise identical for any thread count.
std::vector<McClassEstimate> estimate_haar_profile(const QrtKind& qrt, std::uint64_t samples,
                                                   std::uint64_t seed, int threads = 1);

McClassEstimate estimate_haar_mean(const QrtKind& qrt, const IrrepClass& cls,
                                   std::uint64_t samples, std::uint64_t seed, int threads = 1);

/// Monte-Carlo mean of the diagonal-sector witness sum_P <P>^4/d^2 over
/// Haar samples; analytic value 4/(2^n (2^n+3)).
McClassEstimate estimate_clifford_witness_mean(int n, std::uint64_t samples, std::uint64_t seed,
                                               int threads = 1);

} // namespace gfd
