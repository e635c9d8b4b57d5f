#include "gfd/pauli.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include "gfd/errors.hpp"

namespace gfd {

namespace {

void check_qubit(int n, int qubit) {
  if (n < 1 || n > 64) throw ParameterError("qubit count must be in [1, 64]");
  if (qubit < 0 || qubit >= n) throw ParameterError("qubit index out of range");
}

// Letter codes: I=0, X=1, Y=2, Z=3 as (x, z) bit pairs packed x | z<<1.
inline int letter(const PauliString& p, int j) {
  int xb = static_cast<int>((p.x >> j) & 1u);
  int zb = static_cast<int>((p.z >> j) & 1u);
  return xb | (zb << 1);
}

// sigma_a * sigma_b = i^t sigma_{a xor b}; table over packed (x, z) codes.
// Rows a, columns b with codes {0: I, 1: X, 2: Z, 3: Y}.
constexpr std::uint8_t kMulPhase[4][4] = {
    // I  X  Z  Y
    {0, 0, 0, 0}, // I
    {0, 0, 3, 1}, // X: XZ = -iY, XY = iZ
    {0, 1, 0, 3}, // Z: ZX = iY, ZY = -iX
    {0, 3, 1, 0}, // Y: YX = -iZ, YZ = iX
};

} // namespace

PauliString pauli_identity(int n) {
  if (n < 1 || n > 64) throw ParameterError("qubit count must be in [1, 64]");
  return PauliString{n, 0, 0, 0};
}

PauliString pauli_x(int n, int qubit) {
  check_qubit(n, qubit);
  return PauliString{n, 1ULL << qubit, 0, 0};
}

PauliString pauli_y(int n, int qubit) {
  check_qubit(n, qubit);
  return PauliString{n, 1ULL << qubit, 1ULL << qubit, 0};
}

PauliString pauli_z(int n, int qubit) {
  check_qubit(n, qubit);
  return PauliString{n, 0, 1ULL << qubit, 0};
}

PauliString pauli_from_code(int n, std::uint64_t code) {
  PauliString p = pauli_identity(n);
  for (int j = 0; j < n; ++j) {
    int c = static_cast<int>((code >> (2 * j)) & 3u);
    if (c == 1 || c == 2) p.x |= 1ULL << j;
    if (c == 2 || c == 3) p.z |= 1ULL << j;
  }
  return p;
}

std::uint64_t pauli_code(const PauliString& p) {
  std::uint64_t code = 0;
  for (int j = 0; j < p.qubits; ++j) {
    int xb = static_cast<int>((p.x >> j) & 1u);
    int zb = static_cast<int>((p.z >> j) & 1u);
    std::uint64_t c = xb && zb ? 2 : (xb ? 1 : (zb ? 3 : 0));
    code |= c << (2 * j);
  }
  return code;
}

bool commutes(const PauliString& p, const PauliString& q) {
  if (p.qubits != q.qubits) throw SizeError("commutes: qubit count mismatch");
  int s = popcount64(p.x & q.z) + popcount64(p.z & q.x);
  return (s & 1) == 0;
}

PauliString compose(const PauliString& p, const PauliString& q) {
  if (p.qubits != q.qubits) throw SizeError("compose: qubit count mismatch");
  PauliString r;
  r.qubits = p.qubits;
  r.x = p.x ^ q.x;
  r.z = p.z ^ q.z;
  unsigned t = p.phase + q.phase;
  std::uint64_t touched = (p.x | p.z) & (q.x | q.z);
  while (touched) {
    int j = __builtin_ctzll(touched);
    touched &= touched - 1;
    int a = static_cast<int>((p.x >> j) & 1u) | (static_cast<int>((p.z >> j) & 1u) << 1);
    int b = static_cast<int>((q.x >> j) & 1u) | (static_cast<int>((q.z >> j) & 1u) << 1);
    t += kMulPhase[a][b];
  }
  r.phase = static_cast<std::uint8_t>(t & 3u);
  return r;
}

std::complex<double> phase_value(const PauliString& p) {
  static const std::complex<double> table[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  return table[p.phase & 3u];
}

std::string to_string(const PauliString& p) {
  static const char* prefix[4] = {"+", "+i", "-", "-i"};
  std::string s = prefix[p.phase & 3u];
  for (int j = 0; j < p.qubits; ++j) {
    static const char names[4] = {'I', 'X', 'Y', 'Z'};
    int xb = static_cast<int>((p.x >> j) & 1u);
    int zb = static_cast<int>((p.z >> j) & 1u);
    s.push_back(names[xb && zb ? 2 : (xb ? 1 : (zb ? 3 : 0))]);
  }
  return s;
}

Eigen::MatrixXcd to_dense(const PauliString& p) {
  using Mat = Eigen::Matrix2cd;
  const std::complex<double> im(0, 1);
  Mat I = Mat::Identity();
  Mat X;
  X << 0, 1, 1, 0;
  Mat Y;
  Y << 0, -im, im, 0;
  Mat Z;
  Z << 1, 0, 0, -1;

  Eigen::MatrixXcd out = Eigen::MatrixXcd::Identity(1, 1);
  // Qubit 0 is the least significant index bit, so it sits rightmost in the
  // Kronecker chain.
  for (int j = p.qubits - 1; j >= 0; --j) {
    int l = letter(p, j); // packed x | z<<1: 0 = I, 1 = X, 2 = Z, 3 = Y
    const Mat& m = l == 0 ? I : (l == 1 ? X : (l == 2 ? Z : Y));
    out = Eigen::kroneckerProduct(out, m).eval();
  }
  return phase_value(p) * out;
}

PauliString majorana_operator(int n, int index) {
  if (index < 1 || index > 2 * n) throw ParameterError("majorana index out of range");
  int q = (index - 1) / 2; // qubit site, 0-based
  PauliString p = pauli_identity(n);
  p.z = (1ULL << q) - 1; // Z tail on qubits 0..q-1
  p.x = 1ULL << q;
  if (index % 2 == 0) p.z |= 1ULL << q; // even index carries Y at the site
  return p;
}

MajoranaMonomial majorana_decompose(const PauliString& p) {
  MajoranaMonomial m;
  m.qubits = p.qubits;
  int tail_parity = 0; // parity of selected Majoranas on sites above the cursor
  for (int q = p.qubits - 1; q >= 0; --q) {
    int xq = static_cast<int>((p.x >> q) & 1u);
    int zq = static_cast<int>((p.z >> q) & 1u) ^ tail_parity;
    int b2 = zq;      // c_{2q+2} present
    int b1 = xq ^ b2; // c_{2q+1} present
    if (b1) m.modes |= static_cast<uint128>(1) << (2 * q);
    if (b2) m.modes |= static_cast<uint128>(1) << (2 * q + 1);
    tail_parity ^= b1 ^ b2;
  }
  PauliString prod = majorana_recompose(m);
  if (prod.x != p.x || prod.z != p.z)
    throw InternalError("majorana_decompose: mode solve failed");
  m.phase = static_cast<std::uint8_t>((p.phase - prod.phase) & 3u);
  return m;
}

PauliString majorana_recompose(const MajoranaMonomial& m) {
  PauliString p = pauli_identity(m.qubits);
  for (int i = 0; i < 2 * m.qubits; ++i) {
    if ((m.modes >> i) & 1) p = compose(p, majorana_operator(m.qubits, i + 1));
  }
  return p;
}

int majorana_weight(const PauliString& p) { return weight(majorana_decompose(p)); }

std::vector<PauliString> support_class(int n, std::uint64_t pattern) {
  if (n < 1 || n > 64) throw ParameterError("qubit count must be in [1, 64]");
  if (n < 64 && (pattern >> n) != 0) throw ParameterError("support pattern wider than register");
  std::vector<int> sites;
  for (int j = 0; j < n; ++j)
    if ((pattern >> j) & 1u) sites.push_back(j);
  int w = static_cast<int>(sites.size());
  std::vector<PauliString> out;
  std::uint64_t total = 1;
  for (int i = 0; i < w; ++i) total *= 3;
  out.reserve(total);
  for (std::uint64_t c = 0; c < total; ++c) {
    PauliString p = pauli_identity(n);
    std::uint64_t rem = c;
    for (int t = 0; t < w; ++t) {
      int l = 1 + static_cast<int>(rem % 3); // X, Y, Z
      rem /= 3;
      int j = sites[t];
      if (l == 1 || l == 2) p.x |= 1ULL << j;
      if (l == 2 || l == 3) p.z |= 1ULL << j;
    }
    out.push_back(p);
  }
  return out;
}

std::vector<PauliString> majorana_class(int n, int alpha) {
  if (alpha < 0 || alpha > 2 * n) throw ParameterError("majorana weight out of range");
  std::vector<PauliString> out;
  // Ascending lexicographic subsets of {1, ..., 2n} of size alpha.
  std::vector<int> idx(alpha);
  for (int i = 0; i < alpha; ++i) idx[i] = i + 1;
  while (true) {
    MajoranaMonomial m;
    m.qubits = n;
    for (int i : idx) m.modes |= static_cast<uint128>(1) << (i - 1);
    PauliString p = majorana_recompose(m);
    p.phase = 0; // canonical Hermitian representative
    out.push_back(p);
    if (alpha == 0) break;
    int i = alpha - 1;
    while (i >= 0 && idx[i] == 2 * n - (alpha - 1 - i)) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < alpha; ++j) idx[j] = idx[j - 1] + 1;
  }
  return out;
}

} // namespace gfd
