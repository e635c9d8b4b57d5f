#pragma once

#include <string>

#include "gfd/errors.hpp"

namespace gfd {

enum class Qrt { Bipartite2Q, Multipartite, Fermionic, Spin, Clifford };

/// A resource theory together with its system size (qubits n, or twice the
/// spin for the spin-coherence theory).
struct QrtKind {
  Qrt kind = Qrt::Multipartite;
  int n = 0;       // qubit count for qubit-based theories
  int twice_s = 0; // 2s for the spin theory

  bool operator==(const QrtKind&) const = default;
};

inline QrtKind bipartite2q() { return {Qrt::Bipartite2Q, 2, 0}; }
inline QrtKind multipartite(int n) { return {Qrt::Multipartite, n, 0}; }
inline QrtKind fermionic(int n) { return {Qrt::Fermionic, n, 0}; }
inline QrtKind spin_qrt(int twice_s) { return {Qrt::Spin, 0, twice_s}; }
inline QrtKind clifford(int n) { return {Qrt::Clifford, n, 0}; }

std::string to_string(Qrt kind);
Qrt qrt_from_string(const std::string& name);

/// Hilbert-space dimension of one copy.
inline long long qrt_dim(const QrtKind& q) {
  if (q.kind == Qrt::Spin) return q.twice_s + 1;
  return 1LL << q.n;
}

inline void validate(const QrtKind& q) {
  if (q.kind == Qrt::Bipartite2Q && q.n != 2)
    throw ParameterError("bipartite2q requires n = 2");
  if (q.kind == Qrt::Spin) {
    if (q.twice_s < 1) throw ParameterError("spin theory requires 2s >= 1");
  } else if (q.n < 1) {
    throw ParameterError("qubit count must be >= 1");
  }
}

} // namespace gfd
