#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "gfd/pauli.hpp"
#include "gfd/qrt.hpp"
#include "gfd/util.hpp"

namespace gfd {

/// The six Clifford two-copy classes carrying explicit bases, plus the
/// aggregate of the remaining irreps handled as a complement.
enum class CliffClass { Id, R, L, Zero, One, Two, Residual };

std::string to_string(CliffClass c);

struct IrrepLabel {
  enum class Type { Pattern, MajoranaWeight, SpinPrime, CliffordName };
  Type type = Type::Pattern;
  std::uint64_t pattern = 0; // support pattern, bit j = qubit j
  int width = 0;             // register width for pattern labels
  int value = 0;             // Majorana weight alpha, or spin s'
  int mirror = -1;           // partner weight of a mirror-aggregated class
  CliffClass cliff = CliffClass::Id;

  bool operator==(const IrrepLabel&) const = default;
};

IrrepLabel pattern_label(std::uint64_t pattern, int n);
IrrepLabel weight_label(int k, int n); // aggregated Hamming-weight class
IrrepLabel majorana_label(int alpha, int n);
IrrepLabel spin_label(int s_prime);
IrrepLabel clifford_label(CliffClass c);

/// Serialized form used in CSV/JSON rows and for lexicographic tie-breaks.
std::string to_string(const IrrepLabel& label);

struct IrrepClass {
  QrtKind qrt;
  IrrepLabel label;
  uint128 dimension = 0;    // dimension of one irrep in the class
  std::uint64_t count = 1;  // number of equal-dimension irreps aggregated

  bool operator==(const IrrepClass&) const = default;
};

/// Complete ordered class list of a theory's operator-space decomposition.
/// Emission also checks the total-dimension identity (d^2, or d^4 for the
/// Clifford two-copy space).
std::vector<IrrepClass> irrep_table(const QrtKind& qrt);

/// Hermitian Paulis, each scaled by `scale` (1/sqrt(d) for orthonormality).
struct PauliBasis {
  std::vector<PauliString> elements;
  double scale = 1.0;
};

/// Operators on two copies: each element is sum_k coeff_k (L_k x R_k) / d
/// with L, R unnormalized Hermitian Paulis.
struct PauliPairBasis {
  struct Term {
    double coeff;
    PauliString left;
    PauliString right;
  };
  std::vector<std::vector<Term>> elements;
};

struct DenseBasis {
  std::vector<Eigen::MatrixXcd> elements;
};

using OperatorBasis = std::variant<PauliBasis, PauliPairBasis, DenseBasis>;

std::size_t element_count(const OperatorBasis& basis);

/// Orthonormal Hermitian operator basis of one irrep class. Materialization
/// caps: qubit Pauli classes n <= 7, spin 2s <= 24, Clifford n <= 3.
/// The Clifford residual has no explicit basis.
OperatorBasis irrep_basis(const QrtKind& qrt, const IrrepClass& cls);

/// Raw spin irrep operator L_{s',m'} (not Hermitian for m' != 0); used by
/// the Hermitian combinations and exposed for coefficient-level checks.
Eigen::MatrixXcd spin_irrep_operator(int twice_s, int s_prime, int m_prime);

/// Nullspace dimension of the Clifford diagonal-class constraint system,
/// computed numerically from the Table constraints (One or Two).
int clifford_constraint_nullity(int n, CliffClass c);

} // namespace gfd
