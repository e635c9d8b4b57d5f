#pragma once

#include <cstdint>
#include <string>

#include "gfd/purity.hpp"

namespace gfd {

/// State families with analytic purity profiles.
enum class CfFamily {
  Product,
  Bell,
  Theta,
  HaarMean,
  Ghz,
  W,
  Ame,
  Gaussian,
  Extent,
  HaarEvenMean,
  BasisM,
  Stabilizer,
  Magic,
};

std::string to_string(CfFamily family);

/// Analytic query: theory, family, and the family parameter (theta, gamma,
/// or the spin projection m) where one applies.
struct ClosedFormQuery {
  QrtKind qrt;
  CfFamily family = CfFamily::Product;
  double theta = 0.0;
  double gamma = 0.0;
  int twice_m = 0;
};

bool closed_form_available(Qrt kind, CfFamily family);

/// Maps a constructible state family onto its closed-form family under the
/// given theory (|0..0> is a product state, a Gaussian state, and a
/// stabilizer state at once). Throws ParameterError when no formula exists.
CfFamily cf_family_for(Qrt kind, StateFamily family);

// Per-class values. Bipartite classes are the four support patterns;
// multipartite values are the weight-k aggregates P_k (divide by binom(n,k)
// for the per-irrep value of the symmetric families).
double cf_bipartite(CfFamily family, std::uint64_t pattern, double theta = 0.0);
double cf_multipartite(CfFamily family, int n, int k);
double cf_multipartite_per_irrep(CfFamily family, int n, int k);
double cf_fermionic(CfFamily family, int n, int alpha, double gamma = 0.0);
double cf_spin(CfFamily family, int twice_s, int alpha, int twice_m = 0);

/// Clifford per-class purities in the engine's convention (orthonormal
/// bases of the named classes; residual = complement).
double cf_clifford(CfFamily family, int n, CliffClass cls);

/// Diagonal-sector witness sum_P <P>^4/d^2 = P_id + P_zero + P_one + P_two:
/// 1/2^n for stabilizer states, (3/8)^n for the magic product state,
/// 4/(2^n(2^n+3)) on Haar average.
double cf_clifford_witness(CfFamily family, int n);

/// Whole analytic profile, row structure matching the brute-force engine
/// (multipartite profiles are weight-aggregated).
PurityProfile closed_profile(const ClosedFormQuery& query);

} // namespace gfd
