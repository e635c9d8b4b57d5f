#pragma once

#include <cstdint>
#include <vector>

#include "gfd/irreps.hpp"
#include "gfd/states.hpp"

namespace gfd {

enum class Aggregation { None, PerIrrep, ByHammingWeight, FermionicMirror };

std::string to_string(Aggregation agg);
Aggregation aggregation_from_string(const std::string& name);

struct ProfileEntry {
  IrrepClass cls;
  double purity = 0.0;
};

/// One purity per irrep class, in table order. `total` is the Kahan sum of
/// the entries; 1 for pure states. `approximate` marks profiles built from
/// the fermionic even-sector Haar mean, which drops exponentially small
/// corrections.
struct PurityProfile {
  QrtKind qrt;
  Aggregation agg = Aggregation::None;
  std::vector<ProfileEntry> entries;
  double total = 0.0;
  bool approximate = false;
};

/// <P> for every Pauli string, indexed by base-4 letter code.
std::vector<double> all_pauli_expectations(const PureState& state, int threads = 1);

/// Squared projections of the state (Clifford: of its two copies) summed
/// over one orthonormal irrep basis.
double irrep_purity(const PureState& state, const OperatorBasis& basis);

/// Brute-force purity profile. Caps: Pauli theories n <= 7, spin 2s <= 24,
/// Clifford n <= 3 (use the closed forms beyond).
PurityProfile profile(const PureState& state, const QrtKind& qrt, int threads = 1);

PurityProfile aggregate_profile(const PurityProfile& p, Aggregation scheme);

struct CumulativeRow {
  uint128 threshold = 0; // irrep dimension cutoff
  double cumulative = 0.0;
};

/// Partial purity sums by ascending irrep dimension (label-lexicographic
/// tie-break), one row per distinct dimension.
std::vector<CumulativeRow> cumulative_profile(const PurityProfile& p);

/// Same purity through the two-copy route: materializes the projector
/// Pi = sum_i B_i x B_i on the doubled space and pairs it with rho^(x)2.
/// Caps: Pauli theories n <= 3, spin 2s <= 8, Clifford n <= 2.
double purity_via_trivial_projector(const PureState& state, const QrtKind& qrt,
                                    const IrrepClass& cls);

/// Purity of the two-copy state on the full diagonal sector
/// span{sigma x sigma} (classes id + zero + one + two), equal to
/// sum_P <P>^4 / d^2. This is the stabilizerness witness the closed forms
/// quote for stabilizer / magic / Haar states.
double clifford_witness_purity(const PureState& state);

/// Shared basis cache, safe for concurrent readers.
const OperatorBasis& cached_irrep_basis(const QrtKind& qrt, const IrrepClass& cls);

} // namespace gfd
