#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "gfd/pauli.hpp"
#include "gfd/qrt.hpp"

#include <nlohmann/json_fwd.hpp>

namespace gfd {

enum class SystemKind { Qubits, Spin };

/// Dense pure state. For qubit systems the amplitude index is the bitstring
/// with qubit 0 in the least significant bit; for spin systems index i holds
/// the |s, m> component with m = s - i.
struct PureState {
  Eigen::VectorXcd amp;
  SystemKind kind = SystemKind::Qubits;
  int qubits = 0;
  int twice_s = 0;

  Eigen::Index dim() const { return amp.size(); }
};

PureState qubit_state(int n, Eigen::VectorXcd amp);
PureState spin_state(int twice_s, Eigen::VectorXcd amp);

/// P |psi> using the sparse one-to-one action of a Pauli on amplitudes.
Eigen::VectorXcd pauli_apply(const PauliString& p, const Eigen::VectorXcd& amp);

/// <psi| P |psi> for Hermitian P, computed in O(d).
double expectation(const PureState& state, const PauliString& p);

enum class StateFamily {
  Product,
  Bell,
  Theta,
  Ghz,
  W,
  Extent,
  SpinBasis,
  SpinGhz,
  Magic,
  StabilizerCanonical,
  Haar,
  HaarEvenParity,
  GaussianRandom,
};

std::string to_string(StateFamily family);
StateFamily state_family_from_string(const std::string& name);

/// Declarative description of a state. `params` is family specific:
/// theta -> {theta}; extent -> {gamma}; spin_basis -> {m}; product ->
/// optional Bloch angles {theta_0, phi_0, theta_1, ...} (seeded random
/// directions when empty); stabilizer_canonical -> optional {basis index}.
struct StateSpec {
  StateFamily family = StateFamily::Product;
  int n = 0;       // qubits, for qubit families
  int twice_s = 0; // 2s, for spin families
  std::uint64_t seed = 0;
  std::vector<double> params;
};

nlohmann::json to_json(const StateSpec& spec);
StateSpec state_spec_from_json(const nlohmann::json& j);

PureState make_state(const StateSpec& spec);

/// Haar-random unit vector in dimension d.
PureState sample_haar(long long d, std::uint64_t seed);

/// Haar sample projected onto the +1 eigenspace of Z^(x)n and renormalized.
PureState sample_haar_even_parity(int n, std::uint64_t seed);

/// exp(sum_{i<j} h_ij c_i c_j) |0...0> with h random real antisymmetric;
/// dense matrix exponential, capped at n <= 10.
PureState random_gaussian_state(int n, std::uint64_t seed);

/// One uniformly random free unitary of the given theory applied to state.
PureState apply_random_free_unitary(const PureState& state, const QrtKind& qrt,
                                    std::uint64_t seed);

/// Clifford element represented as a product of Pauli-exponent factors
/// exp(-i pi P_k / 4) (applied first-to-last after the Pauli correction).
/// Conjugation of Pauli strings through it is exact integer algebra.
struct CliffordUnitary {
  int qubits = 0;
  std::vector<PauliString> factors;
  PauliString pauli_fix;
};

/// Exactly uniform over the n-qubit Clifford group modulo global phase.
CliffordUnitary sample_uniform_clifford(int n, std::uint64_t seed);

/// U Q U^dagger, exact.
PauliString conjugate(const CliffordUnitary& u, const PauliString& q);

PureState apply(const CliffordUnitary& u, const PureState& state);

/// Spin-s rotation helpers used by the spin theory: J_x, J_y, J_z in the
/// (2s+1)-dimensional representation, m = s - index convention.
Eigen::MatrixXcd spin_operator_jx(int twice_s);
Eigen::MatrixXcd spin_operator_jy(int twice_s);
Eigen::MatrixXcd spin_operator_jz(int twice_s);

/// exp(-i theta n.J) for the spin-s representation.
Eigen::MatrixXcd spin_rotation(int twice_s, double theta, double nx, double ny, double nz);

/// Haar 2x2 unitary.
Eigen::Matrix2cd sample_haar_u2(std::uint64_t seed);

/// Dense unitary of a random Gaussian (matchgate) free operation,
/// exp(sum h_ij c_i c_j).
Eigen::MatrixXcd random_gaussian_unitary(int n, std::uint64_t seed);

/// The anti-Hermitian generator sum_{i<j} h_ij c_i c_j with seeded
/// normal h entries; exp of it is a Gaussian free unitary.
Eigen::MatrixXcd gaussian_generator(int n, std::uint64_t seed);

/// exp(a) for anti-Hermitian a, through the eigendecomposition of ia.
Eigen::MatrixXcd exp_antihermitian(const Eigen::MatrixXcd& a);

} // namespace gfd
