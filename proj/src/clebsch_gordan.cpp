#include "gfd/clebsch_gordan.hpp"

#include <cmath>

#include <gmpxx.h>

#include "gfd/errors.hpp"

namespace gfd {

bool valid(const SpinLabel& l) {
  return l.twice_j >= 0 && std::abs(l.twice_m) <= l.twice_j &&
         ((l.twice_j - l.twice_m) % 2 == 0);
}

namespace {

mpz_class factorial(int n) {
  mpz_class r;
  mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
  return r;
}

// Argument is twice the physical value; result must be a nonnegative integer.
int half(int twice_value, const char* what) {
  if (twice_value % 2 != 0) throw InternalError(std::string("cg: non-integer ") + what);
  return twice_value / 2;
}

} // namespace

double cg(int twice_j1, int twice_m1, int twice_j2, int twice_m2, int twice_J, int twice_M) {
  if (!valid({twice_j1, twice_m1}) || !valid({twice_j2, twice_m2}))
    throw ParameterError("cg: malformed spin label");
  if (twice_J < 0 || std::abs(twice_M) > twice_J || ((twice_J - twice_M) % 2 != 0))
    throw ParameterError("cg: malformed coupled label");

  // Selection rules: exact zeros, not small numbers.
  if (twice_M != twice_m1 + twice_m2) return 0.0;
  if (twice_J < std::abs(twice_j1 - twice_j2) || twice_J > twice_j1 + twice_j2) return 0.0;
  if ((twice_j1 + twice_j2 + twice_J) % 2 != 0) return 0.0;

  const int j1pm1 = half(twice_j1 + twice_m1, "j1+m1");
  const int j1nm1 = half(twice_j1 - twice_m1, "j1-m1");
  const int j2pm2 = half(twice_j2 + twice_m2, "j2+m2");
  const int j2nm2 = half(twice_j2 - twice_m2, "j2-m2");
  const int JpM = half(twice_J + twice_M, "J+M");
  const int JnM = half(twice_J - twice_M, "J-M");
  const int j12nJ = half(twice_j1 + twice_j2 - twice_J, "j1+j2-J");
  const int j1nj2J = half(twice_j1 - twice_j2 + twice_J, "j1-j2+J");
  const int nj1j2J = half(-twice_j1 + twice_j2 + twice_J, "-j1+j2+J");
  const int j12J1 = half(twice_j1 + twice_j2 + twice_J, "j1+j2+J") + 1;
  const int Jnj2pm1 = half(twice_J - twice_j2 + twice_m1, "J-j2+m1");
  const int Jnj1nm2 = half(twice_J - twice_j1 - twice_m2, "J-j1-m2");

  const int kmin = std::max({0, -Jnj2pm1, -Jnj1nm2});
  const int kmax = std::min({j12nJ, j1nm1, j2pm2});
  if (kmin > kmax) return 0.0;

  mpq_class sum = 0;
  for (int k = kmin; k <= kmax; ++k) {
    mpz_class den = factorial(k) * factorial(j12nJ - k) * factorial(j1nm1 - k) *
                    factorial(j2pm2 - k) * factorial(Jnj2pm1 + k) * factorial(Jnj1nm2 + k);
    mpq_class term(1, den);
    term.canonicalize();
    if (k % 2 == 0)
      sum += term;
    else
      sum -= term;
  }
  if (sum == 0) return 0.0;

  mpq_class delta2(factorial(j12nJ) * factorial(j1nj2J) * factorial(nj1j2J), factorial(j12J1));
  delta2.canonicalize();
  mpz_class front = factorial(j1pm1) * factorial(j1nm1) * factorial(j2pm2) * factorial(j2nm2) *
                    factorial(JpM) * factorial(JnM);
  mpq_class c2 = mpq_class(twice_J + 1) * delta2 * mpq_class(front) * sum * sum;
  double value = std::sqrt(c2.get_d());
  return sum > 0 ? value : -value;
}

double cg_highest_weight_identity(int twice_s, int alpha) {
  if (twice_s < 1) throw ParameterError("cg identity: need s >= 1/2");
  if (alpha < 0 || 2 * alpha > 2 * twice_s)
    throw ParameterError("cg identity: alpha must lie in [0, 2s]");
  // (2s)! sqrt((2a+1) / ((2s-a)! Gamma(2s+a+2)))
  double log_c = std::lgamma(twice_s + 1.0) +
                 0.5 * (std::log(2.0 * alpha + 1.0) - std::lgamma(twice_s - alpha + 1.0) -
                        std::lgamma(twice_s + alpha + 2.0));
  return std::exp(log_c);
}

} // namespace gfd
