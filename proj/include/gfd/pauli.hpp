#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "gfd/util.hpp"

namespace gfd {

/// n-qubit Pauli operator in symplectic form.
///
/// The represented operator is i^phase * (sigma_0 x sigma_1 x ... ), where
/// sigma_j is the Hermitian letter selected by bit j of the masks:
/// (x=0,z=0) -> I, (1,0) -> X, (1,1) -> Y, (0,1) -> Z, and Y = iXZ.
/// With phase in {0, 2} the operator is Hermitian. Composition is exact
/// integer arithmetic; no floating point is involved until an operator
/// meets a state.
struct PauliString {
  int qubits = 0;
  std::uint64_t x = 0;
  std::uint64_t z = 0;
  std::uint8_t phase = 0; // power of i, mod 4

  bool operator==(const PauliString&) const = default;
};

PauliString pauli_identity(int n);
PauliString pauli_x(int n, int qubit);
PauliString pauli_y(int n, int qubit);
PauliString pauli_z(int n, int qubit);

/// Pauli from a base-4 letter code, letter of qubit j in bits 2j..2j+1
/// (0=I, 1=X, 2=Y, 3=Z). Inverse of pauli_code.
PauliString pauli_from_code(int n, std::uint64_t code);
std::uint64_t pauli_code(const PauliString& p);

inline bool is_identity(const PauliString& p) { return p.x == 0 && p.z == 0; }
inline bool is_hermitian(const PauliString& p) { return (p.phase & 1u) == 0; }
inline int support_weight(const PauliString& p) { return popcount64(p.x | p.z); }
inline std::uint64_t support_pattern(const PauliString& p) { return p.x | p.z; }

bool commutes(const PauliString& p, const PauliString& q);

/// Exact product pq with phase tracking.
PauliString compose(const PauliString& p, const PauliString& q);

std::complex<double> phase_value(const PauliString& p);
std::string to_string(const PauliString& p);

/// Dense matrix of the operator, qubit 0 on the least significant index bit.
Eigen::MatrixXcd to_dense(const PauliString& p);

/// Product of distinct Majorana operators c_{i1}...c_{ik}, i1 < ... < ik,
/// recorded as a mode bitmask (bit i-1 set means c_i is present). The phase
/// relates the monomial to the Pauli it was decomposed from:
/// pauli = i^phase * c_{i1}...c_{ik}.
struct MajoranaMonomial {
  int qubits = 0;
  uint128 modes = 0;
  std::uint8_t phase = 0;

  bool operator==(const MajoranaMonomial&) const = default;
};

inline int weight(const MajoranaMonomial& m) {
  return popcount64(static_cast<std::uint64_t>(m.modes)) +
         popcount64(static_cast<std::uint64_t>(m.modes >> 64));
}

/// Jordan-Wigner Majorana ladder: c_{2k-1} = Z^{k-1} X I..., c_{2k} = Z^{k-1} Y I...
/// Index is 1-based, 1 <= index <= 2n.
PauliString majorana_operator(int n, int index);

/// Unique Majorana monomial proportional (with exact phase) to p.
MajoranaMonomial majorana_decompose(const PauliString& p);

/// Product of the indicated Majoranas in ascending order (phase field of the
/// monomial not applied); majorana_recompose(majorana_decompose(p)) equals p
/// up to the recorded phase, exactly.
PauliString majorana_recompose(const MajoranaMonomial& m);

/// Number of distinct Majoranas in the monomial proportional to p.
int majorana_weight(const PauliString& p);

/// All Hermitian Paulis supported exactly on the given pattern
/// (3^w strings, w = popcount(pattern)). Phase-0 canonical representatives.
std::vector<PauliString> support_class(int n, std::uint64_t pattern);

/// All Hermitian Paulis of the given Majorana weight (binom(2n, alpha)
/// strings), in ascending mode-subset order.
std::vector<PauliString> majorana_class(int n, int alpha);

} // namespace gfd
