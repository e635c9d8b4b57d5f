#include "gfd/maxent.hpp"

#include <cmath>

#include "gfd/errors.hpp"

namespace gfd {

BlochVectors bloch_vectors(const PureState& state) {
  if (state.kind != SystemKind::Qubits) throw SizeError("bloch_vectors: qubit state required");
  BlochVectors b;
  b.v.resize(state.qubits);
  for (int j = 0; j < state.qubits; ++j) {
    b.v[j] = {expectation(state, pauli_x(state.qubits, j)),
              expectation(state, pauli_y(state.qubits, j)),
              expectation(state, pauli_z(state.qubits, j))};
    double nrm = std::sqrt(b.v[j][0] * b.v[j][0] + b.v[j][1] * b.v[j][1] + b.v[j][2] * b.v[j][2]);
    if (nrm > 1.0 + 1e-12) throw InternalError("bloch vector norm exceeds 1");
  }
  return b;
}

PureState reconstruct_product(const BlochVectors& b, double tol) {
  const int n = static_cast<int>(b.v.size());
  if (n < 1) throw ParameterError("reconstruct_product: empty Bloch data");
  const std::complex<double> im(0, 1);
  std::vector<std::array<std::complex<double>, 2>> q(n);
  for (int j = 0; j < n; ++j) {
    double bx = b.v[j][0], by = b.v[j][1], bz = b.v[j][2];
    double nrm = std::sqrt(bx * bx + by * by + bz * bz);
    if (nrm < 1.0 - tol)
      throw NotCompressibleError("marginal " + std::to_string(j) +
                                 " is mixed; the state is not a free product state");
    double theta = std::acos(std::clamp(bz / nrm, -1.0, 1.0));
    double phi = std::atan2(by, bx);
    q[j] = {std::cos(theta / 2), std::exp(im * phi) * std::sin(theta / 2)};
  }
  Eigen::VectorXcd amp(Eigen::Index{1} << n);
  for (Eigen::Index s = 0; s < amp.size(); ++s) {
    std::complex<double> v = 1.0;
    for (int j = 0; j < n; ++j) v *= q[j][(s >> j) & 1];
    amp[s] = v;
  }
  amp /= amp.norm();
  Eigen::Index imax = 0;
  for (Eigen::Index s = 1; s < amp.size(); ++s)
    if (std::abs(amp[s]) > std::abs(amp[imax])) imax = s;
  std::complex<double> ph = amp[imax] / std::abs(amp[imax]);
  amp /= ph;
  return qubit_state(n, std::move(amp));
}

Eigen::MatrixXd correlation_matrix(const PureState& state) {
  if (state.kind != SystemKind::Qubits) throw SizeError("correlation_matrix: qubit state required");
  const int n = state.qubits;
  if (n > 10) throw CapacityError("correlation_matrix capped at n <= 10");
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  for (int i = 0; i < 2 * n; ++i) {
    for (int j = i + 1; j < 2 * n; ++j) {
      PauliString prod = compose(majorana_operator(n, i + 1), majorana_operator(n, j + 1));
      // c_i c_j is anti-Hermitian for i != j: the stored phase is odd, and
      // -i <c_i c_j> = -i i^phase <H> with H the phase-0 Hermitian part.
      std::uint8_t phase = prod.phase;
      prod.phase = 0;
      double h = expectation(state, prod);
      double value = phase == 1 ? h : (phase == 3 ? -h : throw InternalError("c_i c_j not odd-phase"));
      c(i, j) = value;
      c(j, i) = -value;
    }
  }
  return c;
}

CompressionReport verify_compression(const PureState& state, const QrtKind& qrt, double tol) {
  CompressionReport report;
  if (qrt.kind == Qrt::Multipartite || qrt.kind == Qrt::Bipartite2Q) {
    BlochVectors b = bloch_vectors(state);
    bool certified = true;
    for (const auto& v : b.v) {
      double nrm = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
      if (nrm < 1.0 - tol) certified = false;
    }
    report.certified = certified;
    if (certified) {
      PureState rec = reconstruct_product(b, tol);
      std::complex<double> ov = (rec.amp.adjoint() * state.amp)(0, 0);
      report.fidelity = std::norm(ov);
    }
    return report;
  }
  if (qrt.kind == Qrt::Fermionic) {
    Eigen::MatrixXd c = correlation_matrix(state);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(c);
    double smin = svd.singularValues().minCoeff();
    double smax = svd.singularValues().maxCoeff();
    report.min_singular_value = smin;
    report.certified = smin > 1.0 - tol && smax < 1.0 + tol;
    return report;
  }
  throw ParameterError("compression demo covers the multipartite and fermionic theories");
}

CompressionReport verify_gaussian_pair(const PureState& a, const PureState& b) {
  if (a.dim() != b.dim()) throw SizeError("verify_gaussian_pair: dimension mismatch");
  CompressionReport report;
  Eigen::MatrixXd ca = correlation_matrix(a);
  Eigen::MatrixXd cb = correlation_matrix(b);
  report.correlation_distance = (ca - cb).cwiseAbs().maxCoeff();
  std::complex<double> ov = (a.amp.adjoint() * b.amp)(0, 0);
  report.fidelity = std::norm(ov);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(ca);
  report.min_singular_value = svd.singularValues().minCoeff();
  report.certified = report.correlation_distance < 1e-10;
  return report;
}

std::pair<PureState, PureState> gaussian_state_pair(int n, std::uint64_t seed) {
  Eigen::MatrixXcd a = gaussian_generator(n, seed);
  Eigen::MatrixXcd u1 = exp_antihermitian(a);
  Eigen::MatrixXcd uh = exp_antihermitian(0.5 * a);
  Eigen::VectorXcd amp1 = u1.col(0);
  Eigen::VectorXcd amp2 = uh * (uh.col(0));
  amp1 /= amp1.norm();
  amp2 /= amp2.norm();
  return {qubit_state(n, std::move(amp1)), qubit_state(n, std::move(amp2))};
}

} // namespace gfd
