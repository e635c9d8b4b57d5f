#include "gfd/irreps.hpp"

#include <algorithm>
#include <cmath>

#include "gfd/clebsch_gordan.hpp"
#include "gfd/errors.hpp"

namespace gfd {

namespace {

constexpr int kPauliBasisCap = 7;  // 4^n Paulis enumerated
constexpr int kSpinBasisCap = 24;  // 2s
constexpr int kCliffordCap = 3;

std::string pad_number(int v, int width) {
  std::string s = std::to_string(v);
  while (static_cast<int>(s.size()) < width) s.insert(s.begin(), '0');
  return s;
}

int digits(int v) { return static_cast<int>(std::to_string(v).size()); }

} // namespace

std::string to_string(CliffClass c) {
  switch (c) {
    case CliffClass::Id: return "id";
    case CliffClass::R: return "r";
    case CliffClass::L: return "l";
    case CliffClass::Zero: return "zero";
    case CliffClass::One: return "one";
    case CliffClass::Two: return "two";
    case CliffClass::Residual: return "residual";
  }
  throw InternalError("unknown clifford class");
}

IrrepLabel pattern_label(std::uint64_t pattern, int n) {
  IrrepLabel l;
  l.type = IrrepLabel::Type::Pattern;
  l.pattern = pattern;
  l.width = n;
  return l;
}

IrrepLabel weight_label(int k, int n) {
  IrrepLabel l;
  l.type = IrrepLabel::Type::Pattern;
  l.pattern = 0;
  l.width = -n; // negative width marks an aggregated weight label
  l.value = k;
  return l;
}

IrrepLabel majorana_label(int alpha, int n) {
  IrrepLabel l;
  l.type = IrrepLabel::Type::MajoranaWeight;
  l.value = alpha;
  l.width = n;
  return l;
}

IrrepLabel spin_label(int s_prime) {
  IrrepLabel l;
  l.type = IrrepLabel::Type::SpinPrime;
  l.value = s_prime;
  return l;
}

IrrepLabel clifford_label(CliffClass c) {
  IrrepLabel l;
  l.type = IrrepLabel::Type::CliffordName;
  l.cliff = c;
  return l;
}

std::string to_string(const IrrepLabel& label) {
  switch (label.type) {
    case IrrepLabel::Type::Pattern: {
      if (label.width < 0) return "w=" + std::to_string(label.value);
      std::string s;
      for (int j = 0; j < label.width; ++j)
        s.push_back(((label.pattern >> j) & 1u) ? '1' : '0');
      return s;
    }
    case IrrepLabel::Type::MajoranaWeight: {
      std::string s = pad_number(label.value, digits(2 * label.width));
      if (label.mirror >= 0) s += "+" + pad_number(label.mirror, digits(2 * label.width));
      return s;
    }
    case IrrepLabel::Type::SpinPrime:
      return std::to_string(label.value);
    case IrrepLabel::Type::CliffordName:
      return to_string(label.cliff);
  }
  throw InternalError("unknown label type");
}

namespace {

uint128 pow_u128(uint128 base, int exp) {
  uint128 r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

std::vector<IrrepClass> pattern_table(const QrtKind& qrt) {
  const int n = qrt.n;
  if (n > 20) throw CapacityError("per-irrep table capped at n <= 20; use the aggregated view");
  // Patterns grouped by Hamming weight, label-lexicographic inside a group.
  std::vector<std::pair<std::string, std::uint64_t>> order;
  order.reserve(1ULL << n);
  for (std::uint64_t a = 0; a < (1ULL << n); ++a)
    order.emplace_back(to_string(pattern_label(a, n)), a);
  std::sort(order.begin(), order.end(), [&](const auto& lhs, const auto& rhs) {
    int wl = popcount64(lhs.second), wr = popcount64(rhs.second);
    if (wl != wr) return wl < wr;
    return lhs.first < rhs.first;
  });
  std::vector<IrrepClass> table;
  table.reserve(order.size());
  uint128 checksum = 0;
  for (const auto& [unused, a] : order) {
    IrrepClass c;
    c.qrt = qrt;
    c.label = pattern_label(a, n);
    c.dimension = pow_u128(3, popcount64(a));
    c.count = 1;
    checksum += c.dimension;
    table.push_back(c);
  }
  if (checksum != pow_u128(2, 2 * n)) throw InternalError("pattern table checksum failed");
  return table;
}

std::vector<IrrepClass> fermionic_table(const QrtKind& qrt) {
  const int n = qrt.n;
  std::vector<IrrepClass> table;
  uint128 checksum = 0;
  for (int alpha = 0; alpha <= 2 * n; ++alpha) {
    IrrepClass c;
    c.qrt = qrt;
    c.label = majorana_label(alpha, n);
    c.dimension = binomial_u128(2 * n, alpha);
    c.count = 1;
    checksum += c.dimension;
    table.push_back(c);
  }
  if (checksum != pow_u128(2, 2 * n)) throw InternalError("fermionic table checksum failed");
  return table;
}

std::vector<IrrepClass> spin_table(const QrtKind& qrt) {
  std::vector<IrrepClass> table;
  uint128 checksum = 0;
  for (int sp = 0; sp <= qrt.twice_s; ++sp) {
    IrrepClass c;
    c.qrt = qrt;
    c.label = spin_label(sp);
    c.dimension = static_cast<uint128>(2 * sp + 1);
    c.count = 1;
    checksum += c.dimension;
    table.push_back(c);
  }
  uint128 d = static_cast<uint128>(qrt.twice_s + 1);
  if (checksum != d * d) throw InternalError("spin table checksum failed");
  return table;
}

std::vector<IrrepClass> clifford_table(const QrtKind& qrt) {
  const int n = qrt.n;
  if (n > 15) throw CapacityError("clifford table capped at n <= 15 (dimensions overflow)");
  const uint128 d = pow_u128(2, n);
  const uint128 d2 = d * d;
  auto cls = [&](CliffClass name, uint128 dim) {
    IrrepClass c;
    c.qrt = qrt;
    c.label = clifford_label(name);
    c.dimension = dim;
    c.count = 1;
    return c;
  };
  std::vector<IrrepClass> table;
  table.push_back(cls(CliffClass::Id, 1));
  table.push_back(cls(CliffClass::R, d2 - 1));
  table.push_back(cls(CliffClass::L, d2 - 1));
  table.push_back(cls(CliffClass::Zero, 1));
  table.push_back(cls(CliffClass::One, d * (d + 1) / 2 - 1));
  table.push_back(cls(CliffClass::Two, d * (d - 1) / 2 - 1));
  uint128 named = 0;
  for (const auto& c : table) named += c.dimension;
  IrrepClass res = cls(CliffClass::Residual, d2 * d2 - named);
  res.count = 8; // the eight remaining irreps, handled in aggregate
  table.push_back(res);
  return table;
}

} // namespace

std::vector<IrrepClass> irrep_table(const QrtKind& qrt) {
  validate(qrt);
  switch (qrt.kind) {
    case Qrt::Bipartite2Q:
    case Qrt::Multipartite: return pattern_table(qrt);
    case Qrt::Fermionic: return fermionic_table(qrt);
    case Qrt::Spin: return spin_table(qrt);
    case Qrt::Clifford: return clifford_table(qrt);
  }
  throw InternalError("unhandled qrt");
}

std::size_t element_count(const OperatorBasis& basis) {
  return std::visit([](const auto& b) { return b.elements.size(); }, basis);
}

namespace {

// All non-identity Pauli strings, fixed base-4 code order.
std::vector<PauliString> nonidentity_paulis(int n) {
  std::vector<PauliString> s;
  const std::uint64_t total = 1ULL << (2 * n);
  s.reserve(total - 1);
  for (std::uint64_t code = 1; code < total; ++code) s.push_back(pauli_from_code(n, code));
  return s;
}

// Modified Gram-Schmidt with one re-orthogonalization pass.
Eigen::MatrixXd orthonormalize_columns(Eigen::MatrixXd m) {
  constexpr double kDepTol = 1e-12;
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (int pass = 0; pass < 2; ++pass)
      for (Eigen::Index i = 0; i < j; ++i) m.col(j) -= m.col(i).dot(m.col(j)) * m.col(i);
    double nrm = m.col(j).norm();
    if (nrm < kDepTol) throw InternalError("orthonormalize: dependent nullspace vector");
    m.col(j) /= nrm;
  }
  return m;
}

Eigen::MatrixXd clifford_constraint_kernel(int n, CliffClass which) {
  const double d = std::pow(2.0, n);
  const std::vector<PauliString> s = nonidentity_paulis(n);
  const int m = static_cast<int>(s.size());
  const double diag = which == CliffClass::One ? d / 2.0 : -d / 2.0;
  // Row 0: sum lambda = 0. Row 1+t: sum_{sigma anticommuting with tau_t}
  // lambda_sigma + (d/2) lambda_tau = 0 (minus d/2 for the Two class).
  Eigen::MatrixXd con = Eigen::MatrixXd::Zero(m + 1, m);
  con.row(0).setOnes();
  for (int t = 0; t < m; ++t) {
    for (int i = 0; i < m; ++i)
      if (!commutes(s[t], s[i])) con(t + 1, i) = 1.0;
    con(t + 1, t) += diag;
  }
  Eigen::FullPivLU<Eigen::MatrixXd> lu(con);
  lu.setThreshold(1e-9);
  Eigen::MatrixXd kernel = lu.kernel();
  if (kernel.cols() == 1 && kernel.col(0).norm() < 1e-12)
    return Eigen::MatrixXd::Zero(m, 0); // Eigen encodes an empty kernel as one zero column
  return orthonormalize_columns(std::move(kernel));
}

OperatorBasis clifford_basis(const QrtKind& qrt, const IrrepClass& cls) {
  const int n = qrt.n;
  if (n > kCliffordCap) throw CapacityError("clifford bases capped at n <= 3");
  const double d = std::pow(2.0, n);
  const PauliString id = pauli_identity(n);
  const std::vector<PauliString> s = nonidentity_paulis(n);
  PauliPairBasis basis;
  switch (cls.label.cliff) {
    case CliffClass::Id:
      basis.elements.push_back({{1.0, id, id}});
      break;
    case CliffClass::R:
      for (const auto& sigma : s) basis.elements.push_back({{1.0, id, sigma}});
      break;
    case CliffClass::L:
      for (const auto& sigma : s) basis.elements.push_back({{1.0, sigma, id}});
      break;
    case CliffClass::Zero: {
      std::vector<PauliPairBasis::Term> terms;
      const double c = 1.0 / std::sqrt(d * d - 1.0);
      for (const auto& sigma : s) terms.push_back({c, sigma, sigma});
      basis.elements.push_back(std::move(terms));
      break;
    }
    case CliffClass::One:
    case CliffClass::Two: {
      Eigen::MatrixXd kernel = clifford_constraint_kernel(n, cls.label.cliff);
      const uint128 expect = cls.label.cliff == CliffClass::One
                                 ? static_cast<uint128>(d * (d + 1) / 2 - 1)
                                 : static_cast<uint128>(d * (d - 1) / 2 - 1);
      if (static_cast<uint128>(kernel.cols()) != expect)
        throw InternalError("clifford constraint nullity does not match the class dimension");
      for (Eigen::Index c = 0; c < kernel.cols(); ++c) {
        std::vector<PauliPairBasis::Term> terms;
        for (int i = 0; i < static_cast<int>(s.size()); ++i)
          if (std::abs(kernel(i, c)) > 1e-14) terms.push_back({kernel(i, c), s[i], s[i]});
        basis.elements.push_back(std::move(terms));
      }
      break;
    }
    case CliffClass::Residual:
      throw ParameterError("the clifford residual has no explicit basis; use the complement");
  }
  return basis;
}

OperatorBasis spin_basis(const QrtKind& qrt, const IrrepClass& cls) {
  const int ts = qrt.twice_s;
  if (ts > kSpinBasisCap) throw CapacityError("spin bases capped at 2s <= 24");
  const int sp = cls.label.value;
  DenseBasis basis;
  basis.elements.reserve(2 * sp + 1);
  basis.elements.push_back(spin_irrep_operator(ts, sp, 0));
  for (int mp = 1; mp <= sp; ++mp) {
    Eigen::MatrixXcd l = spin_irrep_operator(ts, sp, mp);
    Eigen::MatrixXcd ld = l.adjoint();
    basis.elements.push_back((l + ld) * M_SQRT1_2);
    basis.elements.push_back(std::complex<double>(0, 1) * (l - ld) * M_SQRT1_2);
  }
  return basis;
}

} // namespace

Eigen::MatrixXcd spin_irrep_operator(int twice_s, int s_prime, int m_prime) {
  if (s_prime < 0 || s_prime > twice_s) throw ParameterError("spin irrep label out of range");
  if (std::abs(m_prime) > s_prime) throw ParameterError("spin irrep m' out of range");
  const int d = twice_s + 1;
  Eigen::MatrixXcd l = Eigen::MatrixXcd::Zero(d, d);
  for (int tm = -twice_s; tm <= twice_s; tm += 2) {
    int tm_col = tm - 2 * m_prime; // |s,m><s,m-m'|
    if (tm_col < -twice_s || tm_col > twice_s) continue;
    double c = cg(twice_s, tm, twice_s, 2 * m_prime - tm, 2 * s_prime, 2 * m_prime);
    int exponent = (twice_s - tm) / 2 + m_prime; // s - (m - m')
    double sign = (((exponent % 2) + 2) % 2 == 0) ? 1.0 : -1.0;
    int row = (twice_s - tm) / 2;
    int col = (twice_s - tm_col) / 2;
    l(row, col) = sign * c;
  }
  return l;
}

int clifford_constraint_nullity(int n, CliffClass c) {
  if (c != CliffClass::One && c != CliffClass::Two)
    throw ParameterError("constraint system defined for the One and Two classes");
  if (n > kCliffordCap) throw CapacityError("clifford bases capped at n <= 3");
  return static_cast<int>(clifford_constraint_kernel(n, c).cols());
}

OperatorBasis irrep_basis(const QrtKind& qrt, const IrrepClass& cls) {
  validate(qrt);
  switch (qrt.kind) {
    case Qrt::Bipartite2Q:
    case Qrt::Multipartite: {
      if (qrt.n > kPauliBasisCap) throw CapacityError("pauli bases capped at n <= 7");
      if (cls.label.width < 0) throw ParameterError("aggregated weight classes have no single basis");
      PauliBasis b;
      b.elements = support_class(qrt.n, cls.label.pattern);
      b.scale = 1.0 / std::sqrt(std::pow(2.0, qrt.n));
      return b;
    }
    case Qrt::Fermionic: {
      if (qrt.n > kPauliBasisCap) throw CapacityError("pauli bases capped at n <= 7");
      PauliBasis b;
      b.elements = majorana_class(qrt.n, cls.label.value);
      b.scale = 1.0 / std::sqrt(std::pow(2.0, qrt.n));
      return b;
    }
    case Qrt::Spin: return spin_basis(qrt, cls);
    case Qrt::Clifford: return clifford_basis(qrt, cls);
  }
  throw InternalError("unhandled qrt");
}

} // namespace gfd
