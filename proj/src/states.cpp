#include "gfd/states.hpp"

#include <algorithm>
#include <cmath>

#include <nlohmann/json.hpp>

#include "gfd/errors.hpp"
#include "gfd/rng.hpp"

namespace gfd {

namespace {

constexpr double kNormTol = 1e-12;
constexpr int kDenseCap = 10; // qubits; dense matrix exponentials beyond this are refused

void check_norm(const Eigen::VectorXcd& amp) {
  if (std::abs(amp.norm() - 1.0) > kNormTol)
    throw InternalError("state factory produced a non-normalized vector");
}

std::complex<double> phase_times(std::uint8_t phase, std::complex<double> v) {
  switch (phase & 3u) {
    case 0: return v;
    case 1: return {-v.imag(), v.real()};
    case 2: return -v;
    default: return {v.imag(), -v.real()};
  }
}

} // namespace

PureState qubit_state(int n, Eigen::VectorXcd amp) {
  if (n < 1 || n > 30) throw ParameterError("qubit_state: n out of range");
  if (amp.size() != (1LL << n)) throw SizeError("qubit_state: dimension mismatch");
  check_norm(amp);
  return PureState{std::move(amp), SystemKind::Qubits, n, 0};
}

PureState spin_state(int twice_s, Eigen::VectorXcd amp) {
  if (twice_s < 1) throw ParameterError("spin_state: 2s must be >= 1");
  if (amp.size() != twice_s + 1) throw SizeError("spin_state: dimension mismatch");
  check_norm(amp);
  return PureState{std::move(amp), SystemKind::Spin, 0, twice_s};
}

Eigen::VectorXcd pauli_apply(const PauliString& p, const Eigen::VectorXcd& amp) {
  const Eigen::Index d = amp.size();
  if (d != (Eigen::Index{1} << p.qubits)) throw SizeError("pauli_apply: dimension mismatch");
  Eigen::VectorXcd out(d);
  int ycount = popcount64(p.x & p.z);
  std::uint8_t base = static_cast<std::uint8_t>((p.phase + ycount) & 3u);
  for (Eigen::Index b = 0; b < d; ++b) {
    std::complex<double> c = phase_times(base, amp[b]);
    if (popcount64(static_cast<std::uint64_t>(b) & p.z) & 1) c = -c;
    out[static_cast<Eigen::Index>(b ^ static_cast<Eigen::Index>(p.x))] = c;
  }
  return out;
}

double expectation(const PureState& state, const PauliString& p) {
  if (state.kind != SystemKind::Qubits) throw SizeError("expectation: qubit state required");
  if (state.qubits != p.qubits) throw SizeError("expectation: qubit count mismatch");
  if (!is_hermitian(p)) throw ContractError("expectation: operator is not Hermitian");
  const Eigen::VectorXcd& amp = state.amp;
  const Eigen::Index d = amp.size();
  int ycount = popcount64(p.x & p.z);
  std::uint8_t base = static_cast<std::uint8_t>((p.phase + ycount) & 3u);
  std::complex<double> acc = 0.0;
  for (Eigen::Index b = 0; b < d; ++b) {
    std::complex<double> c = phase_times(base, amp[b]);
    if (popcount64(static_cast<std::uint64_t>(b) & p.z) & 1) c = -c;
    acc += std::conj(amp[static_cast<Eigen::Index>(b ^ static_cast<Eigen::Index>(p.x))]) * c;
  }
  return acc.real();
}

std::string to_string(StateFamily family) {
  switch (family) {
    case StateFamily::Product: return "product";
    case StateFamily::Bell: return "bell";
    case StateFamily::Theta: return "theta";
    case StateFamily::Ghz: return "ghz";
    case StateFamily::W: return "w";
    case StateFamily::Extent: return "extent";
    case StateFamily::SpinBasis: return "spin-basis";
    case StateFamily::SpinGhz: return "spin-ghz";
    case StateFamily::Magic: return "magic";
    case StateFamily::StabilizerCanonical: return "stabilizer";
    case StateFamily::Haar: return "haar";
    case StateFamily::HaarEvenParity: return "haar-even";
    case StateFamily::GaussianRandom: return "gaussian";
  }
  throw InternalError("unknown state family");
}

StateFamily state_family_from_string(const std::string& name) {
  if (name == "product") return StateFamily::Product;
  if (name == "bell") return StateFamily::Bell;
  if (name == "theta") return StateFamily::Theta;
  if (name == "ghz") return StateFamily::Ghz;
  if (name == "w") return StateFamily::W;
  if (name == "extent") return StateFamily::Extent;
  if (name == "spin-basis") return StateFamily::SpinBasis;
  if (name == "spin-ghz") return StateFamily::SpinGhz;
  if (name == "magic") return StateFamily::Magic;
  if (name == "stabilizer") return StateFamily::StabilizerCanonical;
  if (name == "haar") return StateFamily::Haar;
  if (name == "haar-even") return StateFamily::HaarEvenParity;
  if (name == "gaussian") return StateFamily::GaussianRandom;
  throw ParameterError("unknown state family: " + name);
}

nlohmann::json to_json(const StateSpec& spec) {
  nlohmann::json j;
  j["family"] = to_string(spec.family);
  if (spec.twice_s > 0)
    j["s"] = spec.twice_s / 2.0;
  else
    j["n"] = spec.n;
  j["seed"] = spec.seed;
  j["params"] = spec.params;
  return j;
}

StateSpec state_spec_from_json(const nlohmann::json& j) {
  StateSpec spec;
  spec.family = state_family_from_string(j.at("family").get<std::string>());
  if (j.contains("s")) {
    double s = j.at("s").get<double>();
    double ts = 2.0 * s;
    if (std::abs(ts - std::round(ts)) > 1e-9)
      throw ParameterError("s must be integer or half-integer");
    spec.twice_s = static_cast<int>(std::llround(ts));
  }
  if (j.contains("n")) spec.n = j.at("n").get<int>();
  spec.seed = j.value("seed", std::uint64_t{0});
  if (j.contains("params")) spec.params = j.at("params").get<std::vector<double>>();
  return spec;
}

namespace {

PureState product_state(int n, const std::vector<double>& angles) {
  Eigen::VectorXcd amp(Eigen::Index{1} << n);
  const std::complex<double> im(0, 1);
  std::vector<std::array<std::complex<double>, 2>> q(n);
  for (int j = 0; j < n; ++j) {
    double theta = angles[2 * j], phi = angles[2 * j + 1];
    q[j] = {std::cos(theta / 2), std::exp(im * phi) * std::sin(theta / 2)};
  }
  for (Eigen::Index b = 0; b < amp.size(); ++b) {
    std::complex<double> v = 1.0;
    for (int j = 0; j < n; ++j) v *= q[j][(b >> j) & 1];
    amp[b] = v;
  }
  return qubit_state(n, std::move(amp));
}

} // namespace

PureState make_state(const StateSpec& spec) {
  using F = StateFamily;
  switch (spec.family) {
    case F::Product: {
      if (spec.n < 1) throw ParameterError("product: n must be >= 1");
      std::vector<double> angles = spec.params;
      if (angles.empty()) {
        Rng rng(spec.seed);
        angles.resize(2 * spec.n);
        for (int j = 0; j < spec.n; ++j) {
          angles[2 * j] = std::acos(1.0 - 2.0 * rng.uniform());
          angles[2 * j + 1] = 2.0 * M_PI * rng.uniform();
        }
      }
      if (static_cast<int>(angles.size()) != 2 * spec.n)
        throw ParameterError("product: need 2n Bloch angles");
      return product_state(spec.n, angles);
    }
    case F::Bell: {
      if (spec.n != 0 && spec.n != 2) throw ParameterError("bell: fixed two-qubit state");
      Eigen::VectorXcd amp = Eigen::VectorXcd::Zero(4);
      amp[0] = amp[3] = M_SQRT1_2;
      return qubit_state(2, std::move(amp));
    }
    case F::Theta: {
      if (spec.n != 0 && spec.n != 2) throw ParameterError("theta: fixed two-qubit state");
      if (spec.params.size() != 1) throw ParameterError("theta: need the angle parameter");
      double theta = spec.params[0];
      if (theta < 0.0 || theta > M_PI_2 + 1e-12)
        throw ParameterError("theta must lie in [0, pi/2]");
      Eigen::VectorXcd amp = Eigen::VectorXcd::Zero(4);
      amp[0] = std::cos(theta / 2);
      amp[3] = std::sin(theta / 2);
      return qubit_state(2, std::move(amp));
    }
    case F::Ghz: {
      if (spec.n < 2) throw ParameterError("ghz: n must be >= 2");
      Eigen::VectorXcd amp = Eigen::VectorXcd::Zero(Eigen::Index{1} << spec.n);
      amp[0] = amp[amp.size() - 1] = M_SQRT1_2;
      return qubit_state(spec.n, std::move(amp));
    }
    case F::W: {
      if (spec.n < 2) throw ParameterError("w: n must be >= 2");
      Eigen::VectorXcd amp = Eigen::VectorXcd::Zero(Eigen::Index{1} << spec.n);
      double a = 1.0 / std::sqrt(static_cast<double>(spec.n));
      for (int j = 0; j < spec.n; ++j) amp[Eigen::Index{1} << j] = a;
      return qubit_state(spec.n, std::move(amp));
    }
    case F::Extent: {
      if (spec.n < 4 || spec.n % 4 != 0)
        throw ParameterError("extent: n must be a positive multiple of four");
      if (spec.params.size() != 1) throw ParameterError("extent: need the gamma parameter");
      double gamma = spec.params[0];
      if (gamma < 0.0 || gamma > M_PI + 1e-12) throw ParameterError("gamma must lie in [0, pi]");
      double c = std::cos(gamma / 4), s = std::sin(gamma / 4);
      Eigen::VectorXcd amp = Eigen::VectorXcd::Zero(Eigen::Index{1} << spec.n);
      int blocks = spec.n / 4;
      for (Eigen::Index b = 0; b < amp.size(); ++b) {
        double v = 1.0;
        for (int k = 0; k < blocks && v != 0.0; ++k) {
          int nib = static_cast<int>((b >> (4 * k)) & 0xF);
          v *= nib == 0 ? c : (nib == 0xF ? s : 0.0);
        }
        amp[b] = v;
      }
      return qubit_state(spec.n, std::move(amp));
    }
    case F::SpinBasis: {
      if (spec.twice_s < 1) throw ParameterError("spin-basis: need s >= 1/2");
      if (spec.params.size() != 1) throw ParameterError("spin-basis: need the m parameter");
      double m = spec.params[0];
      double tm = 2.0 * m;
      if (std::abs(tm - std::round(tm)) > 1e-9)
        throw ParameterError("m must be integer or half-integer");
      int twice_m = static_cast<int>(std::llround(tm));
      if (std::abs(twice_m) > spec.twice_s || ((spec.twice_s - twice_m) & 1))
        throw ParameterError("m must be one of -s, -s+1, ..., s");
      Eigen::VectorXcd amp = Eigen::VectorXcd::Zero(spec.twice_s + 1);
      amp[(spec.twice_s - twice_m) / 2] = 1.0;
      return spin_state(spec.twice_s, std::move(amp));
    }
    case F::SpinGhz: {
      if (spec.twice_s < 1) throw ParameterError("spin-ghz: need s >= 1/2");
      Eigen::VectorXcd amp = Eigen::VectorXcd::Zero(spec.twice_s + 1);
      amp[0] = amp[spec.twice_s] = M_SQRT1_2;
      return spin_state(spec.twice_s, std::move(amp));
    }
    case F::Magic: {
      if (spec.n < 1) throw ParameterError("magic: n must be >= 1");
      const std::complex<double> w = std::exp(std::complex<double>(0, M_PI / 4));
      Eigen::VectorXcd amp(Eigen::Index{1} << spec.n);
      double norm = std::pow(M_SQRT1_2, spec.n);
      for (Eigen::Index b = 0; b < amp.size(); ++b)
        amp[b] = norm * std::pow(w, popcount64(static_cast<std::uint64_t>(b)));
      return qubit_state(spec.n, std::move(amp));
    }
    case F::StabilizerCanonical: {
      if (spec.n < 1) throw ParameterError("stabilizer: n must be >= 1");
      Eigen::Index idx = 0;
      if (!spec.params.empty()) idx = static_cast<Eigen::Index>(spec.params[0]);
      Eigen::VectorXcd amp = Eigen::VectorXcd::Zero(Eigen::Index{1} << spec.n);
      if (idx < 0 || idx >= amp.size()) throw ParameterError("stabilizer: basis index out of range");
      amp[idx] = 1.0;
      return qubit_state(spec.n, std::move(amp));
    }
    case F::Haar: {
      if (spec.twice_s > 0) return spin_state(spec.twice_s, sample_haar(spec.twice_s + 1, spec.seed).amp);
      if (spec.n < 1) throw ParameterError("haar: n must be >= 1");
      return qubit_state(spec.n, sample_haar(1LL << spec.n, spec.seed).amp);
    }
    case F::HaarEvenParity:
      return sample_haar_even_parity(spec.n, spec.seed);
    case F::GaussianRandom:
      return random_gaussian_state(spec.n, spec.seed);
  }
  throw InternalError("unhandled state family");
}

PureState sample_haar(long long d, std::uint64_t seed) {
  if (d < 2) throw ParameterError("sample_haar: dimension must be >= 2");
  Rng rng(seed);
  Eigen::VectorXcd amp(d);
  for (long long i = 0; i < d; ++i) {
    double re = rng.normal();
    double im = rng.normal();
    amp[i] = std::complex<double>(re, im);
  }
  amp /= amp.norm();
  // Qubit register when the dimension is a power of two, spin otherwise.
  int n = 0;
  while ((1LL << n) < d) ++n;
  if ((1LL << n) == d) return PureState{std::move(amp), SystemKind::Qubits, n, 0};
  return PureState{std::move(amp), SystemKind::Spin, 0, static_cast<int>(d - 1)};
}

PureState sample_haar_even_parity(int n, std::uint64_t seed) {
  if (n < 1) throw ParameterError("haar-even: n must be >= 1");
  std::uint64_t s = seed;
  for (int attempt = 0; attempt < 64; ++attempt) {
    PureState psi = sample_haar(1LL << n, s);
    Eigen::VectorXcd amp = psi.amp;
    for (Eigen::Index b = 0; b < amp.size(); ++b)
      if (popcount64(static_cast<std::uint64_t>(b)) & 1) amp[b] = 0.0;
    double nrm = amp.norm();
    if (nrm * nrm > 1e-12) {
      amp /= nrm;
      return qubit_state(n, std::move(amp));
    }
    s = derive_seed(s, 0xeeULL); // null projection: advance the seed and retry
  }
  throw InternalError("haar-even: projection kept vanishing");
}

Eigen::MatrixXcd gaussian_generator(int n, std::uint64_t seed) {
  if (n < 2) throw ParameterError("gaussian generator: n must be >= 2");
  if (n > kDenseCap) throw CapacityError("gaussian generator: dense cap is n <= 10");
  const Eigen::Index d = Eigen::Index{1} << n;
  Rng rng(seed);
  std::vector<Eigen::MatrixXcd> c(2 * n);
  for (int i = 0; i < 2 * n; ++i) c[i] = to_dense(majorana_operator(n, i + 1));
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(d, d);
  for (int i = 0; i < 2 * n; ++i)
    for (int j = i + 1; j < 2 * n; ++j) a += rng.normal() * (c[i] * c[j]);
  return a;
}

Eigen::MatrixXcd exp_antihermitian(const Eigen::MatrixXcd& a) {
  const Eigen::Index d = a.rows();
  Eigen::MatrixXcd h = std::complex<double>(0, 1) * a;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
  Eigen::VectorXcd phases(d);
  for (Eigen::Index k = 0; k < d; ++k)
    phases[k] = std::exp(std::complex<double>(0, -es.eigenvalues()[k]));
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

Eigen::MatrixXcd random_gaussian_unitary(int n, std::uint64_t seed) {
  return exp_antihermitian(gaussian_generator(n, seed));
}

PureState random_gaussian_state(int n, std::uint64_t seed) {
  Eigen::MatrixXcd u = random_gaussian_unitary(n, seed);
  Eigen::VectorXcd amp = u.col(0);
  amp /= amp.norm();
  return qubit_state(n, std::move(amp));
}

Eigen::MatrixXcd spin_operator_jz(int twice_s) {
  const int d = twice_s + 1;
  Eigen::MatrixXcd j = Eigen::MatrixXcd::Zero(d, d);
  for (int i = 0; i < d; ++i) j(i, i) = (twice_s - 2 * i) / 2.0;
  return j;
}

namespace {
Eigen::MatrixXcd spin_ladder_plus(int twice_s) {
  const int d = twice_s + 1;
  const double s = twice_s / 2.0;
  Eigen::MatrixXcd jp = Eigen::MatrixXcd::Zero(d, d);
  for (int i = 1; i < d; ++i) {
    double m = s - i; // J+ raises |s, m> to |s, m+1>, i.e. index i -> i-1
    jp(i - 1, i) = std::sqrt(s * (s + 1) - m * (m + 1));
  }
  return jp;
}
} // namespace

Eigen::MatrixXcd spin_operator_jx(int twice_s) {
  Eigen::MatrixXcd jp = spin_ladder_plus(twice_s);
  return 0.5 * (jp + jp.adjoint());
}

Eigen::MatrixXcd spin_operator_jy(int twice_s) {
  Eigen::MatrixXcd jp = spin_ladder_plus(twice_s);
  return std::complex<double>(0, -0.5) * (jp - jp.adjoint());
}

Eigen::MatrixXcd spin_rotation(int twice_s, double theta, double nx, double ny, double nz) {
  double nrm = std::sqrt(nx * nx + ny * ny + nz * nz);
  if (nrm < 1e-300) throw ParameterError("spin_rotation: zero axis");
  Eigen::MatrixXcd h = (nx * spin_operator_jx(twice_s) + ny * spin_operator_jy(twice_s) +
                        nz * spin_operator_jz(twice_s)) /
                       nrm;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
  const Eigen::Index d = twice_s + 1;
  Eigen::VectorXcd phases(d);
  for (Eigen::Index k = 0; k < d; ++k)
    phases[k] = std::exp(std::complex<double>(0, -theta * es.eigenvalues()[k]));
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

Eigen::Matrix2cd sample_haar_u2(std::uint64_t seed) {
  Rng rng(seed);
  double w, x, y, z, nrm;
  do {
    w = rng.normal();
    x = rng.normal();
    y = rng.normal();
    z = rng.normal();
    nrm = std::sqrt(w * w + x * x + y * y + z * z);
  } while (nrm < 1e-12);
  w /= nrm;
  x /= nrm;
  y /= nrm;
  z /= nrm;
  const std::complex<double> im(0, 1);
  Eigen::Matrix2cd u;
  u << w + im * z, y + im * x, -y + im * x, w - im * z;
  return std::exp(im * 2.0 * M_PI * rng.uniform()) * u;
}

namespace {

// F2 symplectic machinery on vectors packed as x bits 0..n-1, z bits n..2n-1.
inline int sym_form(std::uint64_t u, std::uint64_t v, int n) {
  std::uint64_t xm = n == 64 ? ~0ULL : ((1ULL << n) - 1);
  std::uint64_t ux = u & xm, uz = u >> n;
  std::uint64_t vx = v & xm, vz = v >> n;
  return (popcount64(ux & vz) + popcount64(uz & vx)) & 1;
}

PauliString pauli_from_vector(std::uint64_t v, int n) {
  std::uint64_t xm = (n == 64) ? ~0ULL : ((1ULL << n) - 1);
  return PauliString{n, v & xm, v >> n, 0};
}

void apply_qubit_gate(Eigen::VectorXcd& amp, int qubit, const Eigen::Matrix2cd& u) {
  const Eigen::Index d = amp.size();
  const Eigen::Index bit = Eigen::Index{1} << qubit;
  for (Eigen::Index b = 0; b < d; ++b) {
    if (b & bit) continue;
    std::complex<double> a0 = amp[b], a1 = amp[b | bit];
    amp[b] = u(0, 0) * a0 + u(0, 1) * a1;
    amp[b | bit] = u(1, 0) * a0 + u(1, 1) * a1;
  }
}

} // namespace

CliffordUnitary sample_uniform_clifford(int n, std::uint64_t seed) {
  if (n < 1 || n > 12) throw CapacityError("clifford sampling supports n <= 12");
  Rng rng(seed);
  const int dim = 2 * n;

  // Uniform symplectic basis image: pick pair images one at a time, each
  // uniform over the valid choices inside the shrinking symplectic
  // complement of the pairs already fixed.
  std::vector<std::uint64_t> basis(dim);
  for (int i = 0; i < dim; ++i) basis[i] = 1ULL << i;
  std::vector<std::uint64_t> img_a(n), img_b(n);
  std::vector<int> sign_a(n), sign_b(n);
  for (int k = 0; k < n; ++k) {
    const int m = static_cast<int>(basis.size());
    std::uint64_t a = 0;
    do {
      a = 0;
      std::uint64_t pick = rng.bits();
      for (int i = 0; i < m; ++i)
        if ((pick >> i) & 1u) a ^= basis[i];
    } while (a == 0);

    int star = -1;
    for (int i = 0; i < m; ++i)
      if (sym_form(basis[i], a, n)) {
        star = i;
        break;
      }
    if (star < 0) throw InternalError("clifford sampler: degenerate complement");
    std::vector<std::uint64_t> ortho; // basis of {v : <v, a> = 0} in the current space
    ortho.reserve(m - 1);
    for (int i = 0; i < m; ++i) {
      if (i == star) continue;
      std::uint64_t v = basis[i];
      if (sym_form(v, a, n)) v ^= basis[star];
      ortho.push_back(v);
    }
    std::uint64_t b = basis[star];
    {
      std::uint64_t pick = rng.bits();
      for (std::size_t i = 0; i < ortho.size(); ++i)
        if ((pick >> i) & 1u) b ^= ortho[i];
    }

    img_a[k] = a;
    img_b[k] = b;
    sign_a[k] = static_cast<int>(rng.bits() & 1u);
    sign_b[k] = static_cast<int>(rng.bits() & 1u);

    // Intersect the remaining space with <., b> = 0.
    int bstar = -1;
    for (std::size_t i = 0; i < ortho.size(); ++i)
      if (sym_form(ortho[i], b, n)) {
        bstar = static_cast<int>(i);
        break;
      }
    if (bstar < 0 && !ortho.empty())
      throw InternalError("clifford sampler: complement reduction failed");
    std::vector<std::uint64_t> next;
    next.reserve(ortho.size() - 1);
    for (std::size_t i = 0; i < ortho.size(); ++i) {
      if (static_cast<int>(i) == bstar) continue;
      std::uint64_t v = ortho[i];
      if (bstar >= 0 && sym_form(v, b, n)) v ^= ortho[bstar];
      next.push_back(v);
    }
    basis = std::move(next);
  }

  // Reduce the image tableau to the identity with symplectic transvections
  // Z_v : w -> w + <w, v> v. Vectors used at step k live on qubits >= k, so
  // already-fixed pairs stay put.
  std::vector<std::uint64_t> cur_a = img_a, cur_b = img_b;
  std::vector<std::uint64_t> tvs;
  auto apply_tv = [&](std::uint64_t v) {
    for (int i = 0; i < n; ++i) {
      if (sym_form(cur_a[i], v, n)) cur_a[i] ^= v;
      if (sym_form(cur_b[i], v, n)) cur_b[i] ^= v;
    }
    tvs.push_back(v);
  };
  auto subspace_search = [&](int k, auto&& pred) -> std::uint64_t {
    const int free_bits = 2 * (n - k);
    for (std::uint64_t c = 1; c < (1ULL << free_bits); ++c) {
      std::uint64_t v = 0;
      for (int i = 0; i < n - k; ++i) {
        if ((c >> i) & 1u) v |= 1ULL << (k + i);
        if ((c >> (n - k + i)) & 1u) v |= 1ULL << (n + k + i);
      }
      if (pred(v)) return v;
    }
    throw InternalError("clifford sampler: transvection search failed");
  };
  for (int k = 0; k < n; ++k) {
    std::uint64_t tx = 1ULL << k, tz = 1ULL << (n + k);
    if (cur_a[k] != tx) {
      if (sym_form(cur_a[k], tx, n)) {
        apply_tv(cur_a[k] ^ tx);
      } else {
        std::uint64_t v0 = cur_a[k];
        std::uint64_t z = subspace_search(
            k, [&](std::uint64_t v) { return sym_form(v0, v, n) && sym_form(tx, v, n); });
        apply_tv(v0 ^ z);
        apply_tv(z ^ tx);
      }
    }
    if (cur_b[k] != tz) {
      if (sym_form(cur_b[k], tz, n)) {
        apply_tv(cur_b[k] ^ tz);
      } else {
        std::uint64_t v0 = cur_b[k];
        std::uint64_t z = subspace_search(k, [&](std::uint64_t v) {
          return sym_form(v0, v, n) && sym_form(tz, v, n) && sym_form(tx, v, n);
        });
        apply_tv(v0 ^ z);
        apply_tv(z ^ tz);
      }
    }
    if (cur_a[k] != tx || cur_b[k] != tz)
      throw InternalError("clifford sampler: reduction failed");
  }

  CliffordUnitary u;
  u.qubits = n;
  u.factors.reserve(tvs.size());
  for (std::uint64_t v : tvs) u.factors.push_back(pauli_from_vector(v, n));
  u.pauli_fix = pauli_identity(n);

  // Fix the generator signs: conjugate X_k, Z_k through the factor product
  // and pick the Pauli correction that realizes the sampled sign bits.
  std::uint64_t fix_x = 0, fix_z = 0;
  for (int k = 0; k < n; ++k) {
    PauliString px = conjugate(u, pauli_x(n, k));
    PauliString pz = conjugate(u, pauli_z(n, k));
    if (!is_hermitian(px) || !is_hermitian(pz))
      throw InternalError("clifford sampler: non-Hermitian image");
    int ea = (px.phase & 2u) ? 1 : 0;
    int eb = (pz.phase & 2u) ? 1 : 0;
    if (ea ^ sign_a[k]) fix_z |= 1ULL << k; // Z_k flips the X_k image
    if (eb ^ sign_b[k]) fix_x |= 1ULL << k; // X_k flips the Z_k image
  }
  u.pauli_fix = PauliString{n, fix_x, fix_z, 0};
  return u;
}

PauliString conjugate(const CliffordUnitary& u, const PauliString& q) {
  if (q.qubits != u.qubits) throw SizeError("conjugate: qubit count mismatch");
  PauliString r = q;
  if (!commutes(u.pauli_fix, r)) r.phase = static_cast<std::uint8_t>((r.phase + 2u) & 3u);
  // U = T_1^dag ... T_m^dag W with T = exp(i pi P/4); conjugation applies the
  // innermost factor first: Q -> i Q P when P and Q anticommute.
  for (auto it = u.factors.rbegin(); it != u.factors.rend(); ++it) {
    if (!commutes(*it, r)) {
      r = compose(r, *it);
      r.phase = static_cast<std::uint8_t>((r.phase + 1u) & 3u);
    }
  }
  return r;
}

PureState apply(const CliffordUnitary& u, const PureState& state) {
  if (state.kind != SystemKind::Qubits || state.qubits != u.qubits)
    throw SizeError("apply: qubit count mismatch");
  Eigen::VectorXcd amp = pauli_apply(u.pauli_fix, state.amp);
  const std::complex<double> mi(0, -1);
  for (auto it = u.factors.rbegin(); it != u.factors.rend(); ++it) {
    Eigen::VectorXcd pamp = pauli_apply(*it, amp);
    amp = (amp + mi * pamp) * M_SQRT1_2;
  }
  return qubit_state(u.qubits, std::move(amp));
}

PureState apply_random_free_unitary(const PureState& state, const QrtKind& qrt,
                                    std::uint64_t seed) {
  validate(qrt);
  switch (qrt.kind) {
    case Qrt::Bipartite2Q:
    case Qrt::Multipartite: {
      if (state.kind != SystemKind::Qubits || state.qubits != qrt.n)
        throw SizeError("free unitary: state does not match the theory");
      Eigen::VectorXcd amp = state.amp;
      for (int j = 0; j < qrt.n; ++j)
        apply_qubit_gate(amp, j, sample_haar_u2(derive_seed(seed, static_cast<std::uint64_t>(j))));
      return qubit_state(qrt.n, std::move(amp));
    }
    case Qrt::Fermionic: {
      if (state.kind != SystemKind::Qubits || state.qubits != qrt.n)
        throw SizeError("free unitary: state does not match the theory");
      Eigen::MatrixXcd u = random_gaussian_unitary(qrt.n, seed);
      Eigen::VectorXcd amp = u * state.amp;
      amp /= amp.norm();
      return qubit_state(qrt.n, std::move(amp));
    }
    case Qrt::Spin: {
      if (state.kind != SystemKind::Spin || state.twice_s != qrt.twice_s)
        throw SizeError("free unitary: state does not match the theory");
      Rng rng(seed);
      double w, x, y, z, nrm;
      do {
        w = rng.normal();
        x = rng.normal();
        y = rng.normal();
        z = rng.normal();
        nrm = std::sqrt(w * w + x * x + y * y + z * z);
      } while (nrm < 1e-12);
      double vn = std::sqrt(x * x + y * y + z * z);
      if (vn < 1e-15) return state;
      double theta = 2.0 * std::atan2(vn, w);
      Eigen::MatrixXcd u = spin_rotation(qrt.twice_s, theta, x / vn, y / vn, z / vn);
      Eigen::VectorXcd amp = u * state.amp;
      amp /= amp.norm();
      return spin_state(qrt.twice_s, std::move(amp));
    }
    case Qrt::Clifford: {
      if (state.kind != SystemKind::Qubits || state.qubits != qrt.n)
        throw SizeError("free unitary: state does not match the theory");
      return apply(sample_uniform_clifford(qrt.n, seed), state);
    }
  }
  throw InternalError("unhandled qrt");
}

} // namespace gfd
