#include "gfd/purity.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <thread>

#include <unsupported/Eigen/KroneckerProduct>

#include "gfd/errors.hpp"

namespace gfd {

namespace {

constexpr double kClipTol = 1e-12;
constexpr double kTotalTol = 1e-9;

double clip_purity(double v) {
  if (v >= 0.0) return v;
  if (v >= -kClipTol) return 0.0;
  throw InternalError("purity came out negative beyond round-off");
}

void check_state(const PureState& state, const QrtKind& qrt) {
  validate(qrt);
  if (qrt.kind == Qrt::Spin) {
    if (state.kind != SystemKind::Spin || state.twice_s != qrt.twice_s)
      throw SizeError("profile: state does not match the spin theory");
  } else {
    if (state.kind != SystemKind::Qubits || state.qubits != qrt.n)
      throw SizeError("profile: state does not match the theory size");
  }
}


} // namespace

std::string to_string(Aggregation agg) {
  switch (agg) {
    case Aggregation::None: return "none";
    case Aggregation::PerIrrep: return "per-irrep";
    case Aggregation::ByHammingWeight: return "weight";
    case Aggregation::FermionicMirror: return "mirror";
  }
  throw InternalError("unknown aggregation");
}

Aggregation aggregation_from_string(const std::string& name) {
  if (name == "none") return Aggregation::None;
  if (name == "per-irrep") return Aggregation::PerIrrep;
  if (name == "weight") return Aggregation::ByHammingWeight;
  if (name == "mirror") return Aggregation::FermionicMirror;
  throw ParameterError("unknown aggregation: " + name);
}

std::vector<double> all_pauli_expectations(const PureState& state, int threads) {
  if (state.kind != SystemKind::Qubits)
    throw SizeError("all_pauli_expectations: qubit state required");
  const int n = state.qubits;
  const std::size_t total = std::size_t{1} << (2 * n);
  std::vector<double> u(total);
  run_chunked(total, threads, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t code = lo; code < hi; ++code)
      u[code] = expectation(state, pauli_from_code(n, code));
  });
  return u;
}

double irrep_purity(const PureState& state, const OperatorBasis& basis) {
  KahanSum acc;
  if (const auto* pb = std::get_if<PauliBasis>(&basis)) {
    for (const auto& p : pb->elements) {
      double t = pb->scale * expectation(state, p);
      acc.add(t * t);
    }
  } else if (const auto* ppb = std::get_if<PauliPairBasis>(&basis)) {
    const double d = static_cast<double>(state.dim());
    for (const auto& element : ppb->elements) {
      KahanSum overlap;
      for (const auto& term : element)
        overlap.add(term.coeff * expectation(state, term.left) * expectation(state, term.right) / d);
      acc.add(overlap.value() * overlap.value());
    }
  } else {
    const auto& db = std::get<DenseBasis>(basis);
    for (const auto& b : db.elements) {
      if (b.rows() != state.dim()) throw SizeError("irrep_purity: dimension mismatch");
      double t = (state.amp.adjoint() * b * state.amp)(0, 0).real();
      acc.add(t * t);
    }
  }
  return clip_purity(acc.value());
}

const OperatorBasis& cached_irrep_basis(const QrtKind& qrt, const IrrepClass& cls) {
  static std::mutex mu;
  static std::map<std::string, std::unique_ptr<OperatorBasis>> cache;
  std::string key = to_string(qrt.kind) + "/" + std::to_string(qrt.n) + "/" +
                    std::to_string(qrt.twice_s) + "/" + to_string(cls.label);
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(key);
  if (it == cache.end())
    it = cache.emplace(key, std::make_unique<OperatorBasis>(irrep_basis(qrt, cls))).first;
  return *it->second;
}

namespace {

PurityProfile pauli_class_profile(const PureState& state, const QrtKind& qrt, int threads) {
  const int n = qrt.n;
  if (n > 8) throw CapacityError("brute-force profile capped at n <= 8; use the closed forms");
  const double d = static_cast<double>(state.dim());
  std::vector<double> u = all_pauli_expectations(state, threads);

  std::vector<IrrepClass> table = irrep_table(qrt);
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < table.size(); ++i) index[to_string(table[i].label)] = i;

  std::vector<KahanSum> sums(table.size());
  const bool fermi = qrt.kind == Qrt::Fermionic;
  for (std::size_t code = 0; code < u.size(); ++code) {
    PauliString p = pauli_from_code(n, code);
    IrrepLabel label = fermi ? majorana_label(majorana_weight(p), n)
                             : pattern_label(support_pattern(p), n);
    sums[index.at(to_string(label))].add(u[code] * u[code] / d);
  }

  PurityProfile prof;
  prof.qrt = qrt;
  prof.agg = Aggregation::None;
  KahanSum total;
  for (std::size_t i = 0; i < table.size(); ++i) {
    double v = clip_purity(sums[i].value());
    prof.entries.push_back({table[i], v});
    total.add(v);
  }
  prof.total = total.value();
  if (std::abs(prof.total - 1.0) > kTotalTol)
    throw InternalError("profile normalization drifted beyond 1e-9");
  return prof;
}

PurityProfile spin_profile(const PureState& state, const QrtKind& qrt) {
  if (qrt.twice_s > 24) throw CapacityError("spin profile capped at 2s <= 24");
  PurityProfile prof;
  prof.qrt = qrt;
  KahanSum total;
  for (const auto& cls : irrep_table(qrt)) {
    double v = irrep_purity(state, cached_irrep_basis(qrt, cls));
    prof.entries.push_back({cls, v});
    total.add(v);
  }
  prof.total = total.value();
  if (std::abs(prof.total - 1.0) > kTotalTol)
    throw InternalError("profile normalization drifted beyond 1e-9");
  return prof;
}

PurityProfile clifford_profile(const PureState& state, const QrtKind& qrt, int threads) {
  const int n = qrt.n;
  if (n > 3) throw CapacityError("clifford profile capped at n <= 3");
  const double d = static_cast<double>(state.dim());
  std::vector<double> u = all_pauli_expectations(state, threads);

  PurityProfile prof;
  prof.qrt = qrt;
  KahanSum named_total;
  const std::vector<IrrepClass> table = irrep_table(qrt);
  for (const auto& cls : table) {
    if (cls.label.cliff == CliffClass::Residual) {
      double v = clip_purity(1.0 - named_total.value());
      prof.entries.push_back({cls, v});
      continue;
    }
    double v = 0.0;
    switch (cls.label.cliff) {
      case CliffClass::Id: {
        double t = u[0] * u[0] / d;
        v = t * t;
        break;
      }
      case CliffClass::R:
      case CliffClass::L: {
        KahanSum s;
        for (std::size_t code = 1; code < u.size(); ++code) {
          double t = u[0] * u[code] / d;
          s.add(t * t);
        }
        v = s.value();
        break;
      }
      case CliffClass::Zero: {
        KahanSum s;
        for (std::size_t code = 1; code < u.size(); ++code) s.add(u[code] * u[code] / d);
        double t = s.value() / std::sqrt(d * d - 1.0);
        v = t * t;
        break;
      }
      case CliffClass::One:
      case CliffClass::Two: {
        const auto& basis = std::get<PauliPairBasis>(cached_irrep_basis(qrt, cls));
        KahanSum s;
        for (const auto& element : basis.elements) {
          KahanSum overlap;
          for (const auto& term : element) {
            std::size_t code = pauli_code(term.left);
            overlap.add(term.coeff * u[code] * u[code] / d);
          }
          s.add(overlap.value() * overlap.value());
        }
        v = s.value();
        break;
      }
      case CliffClass::Residual:
        break;
    }
    v = clip_purity(v);
    named_total.add(v);
    prof.entries.push_back({cls, v});
  }
  KahanSum total;
  for (const auto& e : prof.entries) total.add(e.purity);
  prof.total = total.value();
  return prof;
}

} // namespace

PurityProfile profile(const PureState& state, const QrtKind& qrt, int threads) {
  check_state(state, qrt);
  switch (qrt.kind) {
    case Qrt::Bipartite2Q:
    case Qrt::Multipartite: return pauli_class_profile(state, qrt, threads);
    case Qrt::Fermionic: return pauli_class_profile(state, qrt, threads);
    case Qrt::Spin: return spin_profile(state, qrt);
    case Qrt::Clifford: return clifford_profile(state, qrt, threads);
  }
  throw InternalError("unhandled qrt");
}

PurityProfile aggregate_profile(const PurityProfile& p, Aggregation scheme) {
  if (scheme == Aggregation::None || scheme == Aggregation::PerIrrep) {
    PurityProfile out = p;
    out.agg = scheme;
    return out;
  }
  if (scheme == Aggregation::ByHammingWeight) {
    if (p.qrt.kind != Qrt::Bipartite2Q && p.qrt.kind != Qrt::Multipartite)
      throw ParameterError("weight aggregation applies to the entanglement theories");
    if (p.agg != Aggregation::None && p.agg != Aggregation::PerIrrep)
      throw ParameterError("profile is already aggregated");
    const int n = p.qrt.n;
    std::vector<KahanSum> sums(n + 1);
    for (const auto& e : p.entries) sums[popcount64(e.cls.label.pattern)].add(e.purity);
    PurityProfile out;
    out.qrt = p.qrt;
    out.agg = scheme;
    out.approximate = p.approximate;
    KahanSum total;
    for (int k = 0; k <= n; ++k) {
      IrrepClass c;
      c.qrt = p.qrt;
      c.label = weight_label(k, n);
      c.dimension = 1;
      for (int i = 0; i < k; ++i) c.dimension *= 3;
      c.count = static_cast<std::uint64_t>(binomial(n, k));
      out.entries.push_back({c, sums[k].value()});
      total.add(sums[k].value());
    }
    out.total = total.value();
    return out;
  }
  // Fermionic mirror: alpha paired with 2n - alpha.
  if (p.qrt.kind != Qrt::Fermionic)
    throw ParameterError("mirror aggregation applies to the fermionic theory");
  if (p.agg != Aggregation::None && p.agg != Aggregation::PerIrrep)
    throw ParameterError("profile is already aggregated");
  const int n = p.qrt.n;
  std::vector<double> by_alpha(2 * n + 1, 0.0);
  for (const auto& e : p.entries) by_alpha[e.cls.label.value] += e.purity;
  PurityProfile out;
  out.qrt = p.qrt;
  out.agg = Aggregation::FermionicMirror;
  out.approximate = p.approximate;
  KahanSum total;
  for (int alpha = 0; alpha <= n; ++alpha) {
    IrrepClass c;
    c.qrt = p.qrt;
    c.label = majorana_label(alpha, n);
    c.dimension = binomial_u128(2 * n, alpha);
    double v = by_alpha[alpha];
    if (alpha < n) {
      c.label.mirror = 2 * n - alpha;
      c.count = 2;
      v += by_alpha[2 * n - alpha];
    } else {
      c.count = 1;
    }
    out.entries.push_back({c, v});
    total.add(v);
  }
  out.total = total.value();
  return out;
}

std::vector<CumulativeRow> cumulative_profile(const PurityProfile& p) {
  std::vector<const ProfileEntry*> order;
  order.reserve(p.entries.size());
  for (const auto& e : p.entries) order.push_back(&e);
  std::sort(order.begin(), order.end(), [](const ProfileEntry* a, const ProfileEntry* b) {
    if (a->cls.dimension != b->cls.dimension) return a->cls.dimension < b->cls.dimension;
    return to_string(a->cls.label) < to_string(b->cls.label);
  });
  std::vector<CumulativeRow> rows;
  KahanSum acc;
  for (std::size_t i = 0; i < order.size(); ++i) {
    acc.add(order[i]->purity);
    bool last_of_dim =
        i + 1 == order.size() || order[i + 1]->cls.dimension != order[i]->cls.dimension;
    if (last_of_dim) rows.push_back({order[i]->cls.dimension, acc.value()});
  }
  return rows;
}

namespace {

Eigen::MatrixXcd dense_element(const OperatorBasis& basis, std::size_t i, const QrtKind& qrt) {
  if (const auto* pb = std::get_if<PauliBasis>(&basis))
    return pb->scale * to_dense(pb->elements[i]);
  if (const auto* db = std::get_if<DenseBasis>(&basis)) return db->elements[i];
  const auto& ppb = std::get<PauliPairBasis>(basis);
  const double d = std::pow(2.0, qrt.n);
  const Eigen::Index dd = static_cast<Eigen::Index>(d * d);
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dd, dd);
  for (const auto& term : ppb.elements[i])
    out += (term.coeff / d) *
           Eigen::kroneckerProduct(to_dense(term.left), to_dense(term.right)).eval();
  return out;
}

} // namespace

double purity_via_trivial_projector(const PureState& state, const QrtKind& qrt,
                                    const IrrepClass& cls) {
  check_state(state, qrt);
  const bool cliff = qrt.kind == Qrt::Clifford;
  if (qrt.kind == Qrt::Spin) {
    if (qrt.twice_s > 8) throw CapacityError("two-copy projector capped at 2s <= 8");
  } else if (cliff) {
    if (qrt.n > 2) throw CapacityError("two-copy projector capped at n <= 2 for clifford");
  } else if (qrt.n > 3) {
    throw CapacityError("two-copy projector capped at n <= 3");
  }
  const OperatorBasis& basis = cached_irrep_basis(qrt, cls);

  // Copy vector: |psi> x |psi> for the Lie theories (operators act on H),
  // |psi>^(x)4 for clifford (operators act on two copies already).
  Eigen::VectorXcd v = Eigen::kroneckerProduct(state.amp, state.amp).eval();
  if (cliff) v = Eigen::kroneckerProduct(v, v).eval();

  const std::size_t count = element_count(basis);
  Eigen::MatrixXcd pi = Eigen::MatrixXcd::Zero(v.size(), v.size());
  for (std::size_t i = 0; i < count; ++i) {
    Eigen::MatrixXcd b = dense_element(basis, i, qrt);
    pi += Eigen::kroneckerProduct(b, b).eval();
  }
  std::complex<double> val = (v.adjoint() * pi * v)(0, 0);
  if (std::abs(val.imag()) > 1e-9)
    throw InternalError("trivial projector pairing came out complex");
  return clip_purity(val.real());
}

double clifford_witness_purity(const PureState& state) {
  if (state.kind != SystemKind::Qubits)
    throw SizeError("clifford_witness_purity: qubit state required");
  if (state.qubits > 8) throw CapacityError("witness purity capped at n <= 8");
  const double d = static_cast<double>(state.dim());
  std::vector<double> u = all_pauli_expectations(state);
  KahanSum s;
  for (double e : u) s.add(e * e * e * e);
  return s.value() / (d * d);
}

} // namespace gfd
