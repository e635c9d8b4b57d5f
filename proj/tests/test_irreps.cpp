#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <unsupported/Eigen/KroneckerProduct>

#include "gfd/clebsch_gordan.hpp"
#include "gfd/irreps.hpp"
#include "gfd/rng.hpp"
#include "gfd/states.hpp"

using namespace gfd;

namespace {

std::vector<Eigen::MatrixXcd> dense_elements(const OperatorBasis& basis, const QrtKind& qrt) {
  std::vector<Eigen::MatrixXcd> out;
  if (const auto* pb = std::get_if<PauliBasis>(&basis)) {
    for (const auto& p : pb->elements) out.push_back(pb->scale * to_dense(p));
  } else if (const auto* db = std::get_if<DenseBasis>(&basis)) {
    out = db->elements;
  } else {
    const auto& ppb = std::get<PauliPairBasis>(basis);
    const double d = std::pow(2.0, qrt.n);
    const Eigen::Index dd = static_cast<Eigen::Index>(d * d);
    for (const auto& element : ppb.elements) {
      Eigen::MatrixXcd b = Eigen::MatrixXcd::Zero(dd, dd);
      for (const auto& term : element)
        b += (term.coeff / d) *
             Eigen::kroneckerProduct(to_dense(term.left), to_dense(term.right)).eval();
      out.push_back(std::move(b));
    }
  }
  return out;
}

void check_orthonormal(const std::vector<Eigen::MatrixXcd>& ops, double tol = 1e-10) {
  for (std::size_t i = 0; i < ops.size(); ++i)
    for (std::size_t j = 0; j < ops.size(); ++j) {
      std::complex<double> g = (ops[i].adjoint() * ops[j]).trace();
      double expect = i == j ? 1.0 : 0.0;
      CHECK(std::abs(g - expect) <= tol);
    }
}

void check_hermitian(const std::vector<Eigen::MatrixXcd>& ops, double tol = 1e-12) {
  for (const auto& b : ops) CHECK((b - b.adjoint()).norm() <= tol);
}

// The irrep is an invariant subspace: conjugating any basis element by a
// free unitary must keep its full Hilbert-Schmidt norm inside the span.
void check_covariance(const std::vector<Eigen::MatrixXcd>& ops, const Eigen::MatrixXcd& u,
                      double tol = 1e-8) {
  for (const auto& b : ops) {
    Eigen::MatrixXcd moved = u * b * u.adjoint();
    double captured = 0.0;
    for (const auto& c : ops) captured += std::norm((c.adjoint() * moved).trace());
    CHECK(captured == doctest::Approx(1.0).epsilon(tol));
  }
}

Eigen::MatrixXcd clifford_two_copy_dense(const CliffordUnitary& u) {
  const Eigen::Index d = Eigen::Index{1} << u.qubits;
  Eigen::MatrixXcd m(d, d);
  for (Eigen::Index col = 0; col < d; ++col) {
    Eigen::VectorXcd e = Eigen::VectorXcd::Zero(d);
    e[col] = 1.0;
    // columns of U from its action on basis states (norm checks skipped)
    Eigen::VectorXcd amp = pauli_apply(u.pauli_fix, e);
    const std::complex<double> mi(0, -1);
    for (auto it = u.factors.rbegin(); it != u.factors.rend(); ++it)
      amp = ((amp + mi * pauli_apply(*it, amp)) * M_SQRT1_2).eval();
    m.col(col) = amp;
  }
  return Eigen::kroneckerProduct(m, m);
}

} // namespace

TEST_CASE("irrep tables carry the documented dimensions and checksums") {
  auto t2 = irrep_table(multipartite(2));
  REQUIRE(t2.size() == 4);
  std::vector<int> dims;
  for (const auto& c : t2) dims.push_back(static_cast<int>(c.dimension));
  CHECK(dims == std::vector<int>{1, 3, 3, 9});

  auto ts = irrep_table(spin_qrt(2)); // s = 1
  REQUIRE(ts.size() == 3);
  CHECK(static_cast<int>(ts[0].dimension) == 1);
  CHECK(static_cast<int>(ts[1].dimension) == 3);
  CHECK(static_cast<int>(ts[2].dimension) == 5);

  auto tf = irrep_table(fermionic(2));
  REQUIRE(tf.size() == 5);
  CHECK(static_cast<int>(tf[2].dimension) == 6);

  auto tc1 = irrep_table(clifford(1));
  for (const auto& c : tc1) {
    if (c.label.cliff == CliffClass::One) CHECK(static_cast<int>(c.dimension) == 2);
    if (c.label.cliff == CliffClass::Two) CHECK(static_cast<int>(c.dimension) == 0);
    if (c.label.cliff == CliffClass::Residual) CHECK(static_cast<int>(c.dimension) == 6);
  }
  auto tc2 = irrep_table(clifford(2));
  uint128 total = 0;
  for (const auto& c : tc2) total += c.dimension * c.count;
  // residual count 8 aggregates irreps whose dimensions differ; the complement
  // dimension is stored once, so the checksum uses count 1 for it.
  total = 0;
  for (const auto& c : tc2) total += c.dimension;
  CHECK(u128_to_string(total) == "256");
  for (const auto& c : tc2) {
    if (c.label.cliff == CliffClass::One) CHECK(static_cast<int>(c.dimension) == 9);
    if (c.label.cliff == CliffClass::Two) CHECK(static_cast<int>(c.dimension) == 5);
    if (c.label.cliff == CliffClass::Residual) CHECK(static_cast<int>(c.dimension) == 210);
  }
}

TEST_CASE("pauli class bases are orthonormal hermitian sets") {
  for (const auto& qrt : {multipartite(2), fermionic(2)}) {
    for (const auto& cls : irrep_table(qrt)) {
      OperatorBasis basis = irrep_basis(qrt, cls);
      CHECK(element_count(basis) == static_cast<std::size_t>(cls.dimension));
      auto ops = dense_elements(basis, qrt);
      check_hermitian(ops);
      check_orthonormal(ops);
    }
  }
}

TEST_CASE("spin bases are orthonormal hermitian sets") {
  QrtKind qrt = spin_qrt(2); // s = 1
  for (const auto& cls : irrep_table(qrt)) {
    auto ops = dense_elements(irrep_basis(qrt, cls), qrt);
    CHECK(ops.size() == static_cast<std::size_t>(cls.dimension));
    check_hermitian(ops);
    check_orthonormal(ops);
  }
  QrtKind big = spin_qrt(7); // s = 7/2
  for (const auto& cls : irrep_table(big)) {
    auto ops = dense_elements(irrep_basis(big, cls), big);
    check_hermitian(ops);
    check_orthonormal(ops);
  }
}

TEST_CASE("clifford bases are orthonormal and match the table dimensions exactly") {
  for (int n : {1, 2}) {
    QrtKind qrt = clifford(n);
    for (const auto& cls : irrep_table(qrt)) {
      if (cls.label.cliff == CliffClass::Residual) continue;
      OperatorBasis basis = irrep_basis(qrt, cls);
      CHECK(element_count(basis) == static_cast<std::size_t>(cls.dimension));
      auto ops = dense_elements(basis, qrt);
      check_hermitian(ops, 1e-10);
      check_orthonormal(ops);
    }
  }
  // nullspace dimensions, exact integer equality
  CHECK(clifford_constraint_nullity(1, CliffClass::One) == 2);
  CHECK(clifford_constraint_nullity(1, CliffClass::Two) == 0);
  CHECK(clifford_constraint_nullity(2, CliffClass::One) == 9);
  CHECK(clifford_constraint_nullity(2, CliffClass::Two) == 5);
  CHECK(clifford_constraint_nullity(3, CliffClass::One) == 35);
  CHECK(clifford_constraint_nullity(3, CliffClass::Two) == 27);
}

TEST_CASE("bases span invariant subspaces under 20 random free unitaries") {
  std::uint64_t seed = 1234;

  {
    QrtKind qrt = multipartite(2);
    std::vector<std::vector<Eigen::MatrixXcd>> all;
    for (const auto& cls : irrep_table(qrt)) all.push_back(dense_elements(irrep_basis(qrt, cls), qrt));
    for (int t = 0; t < 20; ++t) {
      Eigen::MatrixXcd u =
          Eigen::kroneckerProduct(sample_haar_u2(derive_seed(seed, 2 * t + 1)),
                                  sample_haar_u2(derive_seed(seed, 2 * t)))
              .eval();
      for (const auto& ops : all) check_covariance(ops, u);
    }
  }

  {
    QrtKind qrt = fermionic(2);
    std::vector<std::vector<Eigen::MatrixXcd>> all;
    for (const auto& cls : irrep_table(qrt)) all.push_back(dense_elements(irrep_basis(qrt, cls), qrt));
    for (int t = 0; t < 20; ++t) {
      Eigen::MatrixXcd u = random_gaussian_unitary(2, derive_seed(seed, 100 + t));
      for (const auto& ops : all) check_covariance(ops, u);
    }
  }

  {
    QrtKind qrt = spin_qrt(3); // s = 3/2
    std::vector<std::vector<Eigen::MatrixXcd>> all;
    for (const auto& cls : irrep_table(qrt)) all.push_back(dense_elements(irrep_basis(qrt, cls), qrt));
    Rng rng(seed);
    for (int t = 0; t < 20; ++t) {
      double x = rng.normal(), y = rng.normal(), z = rng.normal();
      double nrm = std::sqrt(x * x + y * y + z * z);
      Eigen::MatrixXcd u = spin_rotation(3, 2 * M_PI * rng.uniform(), x / nrm, y / nrm, z / nrm);
      for (const auto& ops : all) check_covariance(ops, u);
    }
  }

  {
    QrtKind qrt = clifford(1);
    std::vector<std::vector<Eigen::MatrixXcd>> all;
    for (const auto& cls : irrep_table(qrt)) {
      if (cls.label.cliff == CliffClass::Residual || cls.dimension == 0) continue;
      all.push_back(dense_elements(irrep_basis(qrt, cls), qrt));
    }
    for (int t = 0; t < 20; ++t) {
      Eigen::MatrixXcd uu = clifford_two_copy_dense(sample_uniform_clifford(1, derive_seed(seed, 200 + t)));
      for (const auto& ops : all) check_covariance(ops, uu);
    }
  }
}

TEST_CASE("spin basis reproduces the irrep operator coefficients") {
  const int ts = 3; // s = 3/2
  for (int sp = 0; sp <= ts; ++sp) {
    for (int mp = -sp; mp <= sp; ++mp) {
      Eigen::MatrixXcd l = spin_irrep_operator(ts, sp, mp);
      for (int tm = -ts; tm <= ts; tm += 2) {
        int tm_col = tm - 2 * mp;
        if (tm_col < -ts || tm_col > ts) continue;
        double c = cg(ts, tm, ts, 2 * mp - tm, 2 * sp, 2 * mp);
        int expo = (ts - tm) / 2 + mp;
        double expect = (((expo % 2) + 2) % 2 == 0 ? 1.0 : -1.0) * c;
        int row = (ts - tm) / 2, col = (ts - tm_col) / 2;
        CHECK(l(row, col).real() == doctest::Approx(expect).epsilon(1e-10));
        CHECK(l(row, col).imag() == 0.0);
      }
    }
  }
}

TEST_CASE("materialization caps") {
  QrtKind big = multipartite(8);
  CHECK_THROWS_AS(irrep_basis(big, irrep_table(big)[0]), CapacityError);
  QrtKind bigc = clifford(4);
  CHECK_THROWS_AS(irrep_basis(bigc, irrep_table(bigc)[0]), CapacityError);
  CHECK_THROWS_AS(irrep_basis(spin_qrt(26), irrep_table(spin_qrt(26))[0]), CapacityError);
}

TEST_CASE("fermionic weight-2 class holds the quadratic majoranas") {
  QrtKind qrt = fermionic(2);
  auto table = irrep_table(qrt);
  OperatorBasis basis = irrep_basis(qrt, table[2]);
  const auto& pb = std::get<PauliBasis>(basis);
  REQUIRE(pb.elements.size() == 6);
  for (const auto& p : pb.elements) CHECK(majorana_weight(p) == 2);
}
