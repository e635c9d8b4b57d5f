#pragma once

#include <array>
#include <limits>
#include <vector>

#include <Eigen/Dense>

#include "gfd/states.hpp"

namespace gfd {

/// Raised when the small-irrep data does not certify a free state, so the
/// constructive reconstruction does not apply.
class NotCompressibleError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Per-qubit (<X>, <Y>, <Z>) triples.
struct BlochVectors {
  std::vector<std::array<double, 3>> v;
};

BlochVectors bloch_vectors(const PureState& state);

/// Product state with the given unit Bloch vectors (each qubit the +1
/// eigenstate of b.sigma); global phase fixed by making the largest
/// amplitude real positive. Throws NotCompressibleError when a triple's
/// norm falls below 1 - tol.
PureState reconstruct_product(const BlochVectors& b, double tol = 1e-8);

/// Real antisymmetric 2n x 2n matrix C_ij = -i <c_i c_j>.
Eigen::MatrixXd correlation_matrix(const PureState& state);

struct CompressionReport {
  bool certified = false;
  double fidelity = std::numeric_limits<double>::quiet_NaN();
  double correlation_distance = std::numeric_limits<double>::quiet_NaN();
  double min_singular_value = std::numeric_limits<double>::quiet_NaN();
};

/// Reconstructibility demo. Multipartite: certify unit Bloch marginals and
/// report the round-trip fidelity. Fermionic: certify through the
/// correlation-matrix singular values; callers wanting the pairwise
/// uniqueness check use verify_gaussian_pair.
CompressionReport verify_compression(const PureState& state, const QrtKind& qrt,
                                     double tol = 1e-8);

/// Uniqueness check for two presumed-Gaussian states: max-norm correlation
/// difference plus squared overlap.
CompressionReport verify_gaussian_pair(const PureState& a, const PureState& b);

/// The same Gaussian state built along two numerically distinct routes
/// (exp(A) versus exp(A/2)^2 applied to the vacuum), sharing one generator.
std::pair<PureState, PureState> gaussian_state_pair(int n, std::uint64_t seed);

} // namespace gfd
