#include "gfd/closed_forms.hpp"

#include <cmath>

#include "gfd/clebsch_gordan.hpp"
#include "gfd/errors.hpp"

namespace gfd {

namespace {

constexpr int kClosedFormCap = 64;

double pow2(int n) { return std::pow(2.0, n); }

void check_n(int n) {
  if (n < 1 || n > kClosedFormCap) throw ParameterError("closed forms support 1 <= n <= 64");
}

} // namespace

std::string to_string(CfFamily family) {
  switch (family) {
    case CfFamily::Product: return "product";
    case CfFamily::Bell: return "bell";
    case CfFamily::Theta: return "theta";
    case CfFamily::HaarMean: return "haar-mean";
    case CfFamily::Ghz: return "ghz";
    case CfFamily::W: return "w";
    case CfFamily::Ame: return "ame";
    case CfFamily::Gaussian: return "gaussian";
    case CfFamily::Extent: return "extent";
    case CfFamily::HaarEvenMean: return "haar-even-mean";
    case CfFamily::BasisM: return "basis-m";
    case CfFamily::Stabilizer: return "stabilizer";
    case CfFamily::Magic: return "magic";
  }
  throw InternalError("unknown closed-form family");
}

bool closed_form_available(Qrt kind, CfFamily family) {
  switch (kind) {
    case Qrt::Bipartite2Q:
      return family == CfFamily::Product || family == CfFamily::Bell ||
             family == CfFamily::Theta || family == CfFamily::HaarMean;
    case Qrt::Multipartite:
      return family == CfFamily::Product || family == CfFamily::Ghz || family == CfFamily::W ||
             family == CfFamily::HaarMean || family == CfFamily::Ame;
    case Qrt::Fermionic:
      return family == CfFamily::Gaussian || family == CfFamily::Ghz ||
             family == CfFamily::Extent || family == CfFamily::HaarEvenMean;
    case Qrt::Spin:
      return family == CfFamily::BasisM || family == CfFamily::Ghz ||
             family == CfFamily::HaarMean;
    case Qrt::Clifford:
      return family == CfFamily::Stabilizer || family == CfFamily::Magic ||
             family == CfFamily::HaarMean;
  }
  return false;
}

CfFamily cf_family_for(Qrt kind, StateFamily family) {
  CfFamily f;
  switch (family) {
    case StateFamily::Product: f = CfFamily::Product; break;
    case StateFamily::Bell: f = CfFamily::Bell; break;
    case StateFamily::Theta: f = CfFamily::Theta; break;
    case StateFamily::Ghz:
      f = kind == Qrt::Clifford ? CfFamily::Stabilizer : CfFamily::Ghz;
      break;
    case StateFamily::W: f = CfFamily::W; break;
    case StateFamily::Extent: f = CfFamily::Extent; break;
    case StateFamily::SpinBasis: f = CfFamily::BasisM; break;
    case StateFamily::SpinGhz: f = CfFamily::Ghz; break;
    case StateFamily::Magic: f = CfFamily::Magic; break;
    case StateFamily::StabilizerCanonical:
      // A computational basis state is product, Gaussian and stabilizer at once.
      f = kind == Qrt::Clifford ? CfFamily::Stabilizer
          : kind == Qrt::Fermionic ? CfFamily::Gaussian
                                   : CfFamily::Product;
      break;
    case StateFamily::Haar: f = CfFamily::HaarMean; break;
    case StateFamily::HaarEvenParity: f = CfFamily::HaarEvenMean; break;
    case StateFamily::GaussianRandom: f = CfFamily::Gaussian; break;
    default: throw ParameterError("no closed form for this family");
  }
  if (!closed_form_available(kind, f))
    throw ParameterError("no closed form for family " + to_string(f) + " under " + to_string(kind));
  return f;
}

double cf_bipartite(CfFamily family, std::uint64_t pattern, double theta) {
  if (pattern > 3) throw ParameterError("bipartite class pattern must be in {0,1,2,3}");
  const int w = popcount64(pattern);
  switch (family) {
    case CfFamily::Product:
      return 0.25;
    case CfFamily::Bell:
      return w == 0 ? 0.25 : (w == 1 ? 0.0 : 0.75);
    case CfFamily::Theta: {
      if (theta < 0.0 || theta > M_PI_2 + 1e-12) throw ParameterError("theta must lie in [0, pi/2]");
      double c = std::cos(theta);
      return w == 0 ? 0.25 : (w == 1 ? c * c / 4.0 : (2.0 - std::cos(2.0 * theta)) / 4.0);
    }
    case CfFamily::HaarMean:
      return w == 0 ? 0.25 : (w == 1 ? 3.0 / 20.0 : 9.0 / 20.0);
    default:
      throw ParameterError("unknown bipartite closed-form family");
  }
}

double cf_multipartite(CfFamily family, int n, int k) {
  check_n(n);
  if (k < 0 || k > n) throw ParameterError("weight k must lie in [0, n]");
  const double d = pow2(n);
  switch (family) {
    case CfFamily::Product:
      return binomial(n, k) / d;
    case CfFamily::Ghz:
      if (k == n) return 0.5 + (n % 2 == 0 ? 1.0 / d : 0.0);
      return k % 2 == 0 ? binomial(n, k) / d : 0.0;
    case CfFamily::W: {
      double nn = static_cast<double>(n);
      double num = (nn - 2.0 * k) * (nn - 2.0 * k) + 8.0 * binomial(k, 2);
      return num * binomial(n, k) / (nn * nn * d);
    }
    case CfFamily::HaarMean:
      if (k == 0) return 1.0 / d;
      return std::pow(3.0, k) * binomial(n, k) / (d * (d + 1.0));
    case CfFamily::Ame:
      // Valid where absolutely maximally entangled states exist.
      if (k == 0) return 1.0 / d;
      if (k == n) return (d - 1.0) / d;
      return 0.0;
    default:
      throw ParameterError("unknown multipartite closed-form family");
  }
}

double cf_multipartite_per_irrep(CfFamily family, int n, int k) {
  double agg = cf_multipartite(family, n, k);
  if (agg == 0.0) return 0.0;
  return agg / binomial(n, k);
}

double cf_fermionic(CfFamily family, int n, int alpha, double gamma) {
  check_n(n);
  if (alpha < 0 || alpha > 2 * n) throw ParameterError("alpha must lie in [0, 2n]");
  const double d = pow2(n);
  if (alpha % 2 != 0) return 0.0; // even-parity states carry nothing on odd classes
  switch (family) {
    case CfFamily::Gaussian:
      return binomial(n, alpha / 2) / d;
    case CfFamily::Ghz: {
      if (n % 2 != 0) throw ParameterError("fermionic ghz requires even n (definite parity)");
      if (alpha == n) {
        double diag = (n / 2) % 2 == 0 ? binomial(n, n / 2) : 0.0;
        return (pow2(n - 1) + diag) / d;
      }
      return alpha % 4 == 0 ? binomial(n, alpha / 2) / d : 0.0;
    }
    case CfFamily::Extent: {
      if (n % 4 != 0) throw ParameterError("extent requires n to be a multiple of four");
      if (gamma < 0.0 || gamma > M_PI + 1e-12) throw ParameterError("gamma must lie in [0, pi]");
      const int blocks = n / 4;
      const double s2 = std::sin(gamma / 2) * std::sin(gamma / 2);
      const double c2 = std::cos(gamma / 2) * std::cos(gamma / 2);
      const double n2 = 4.0 * c2;
      const double n4 = 6.0 + 8.0 * s2;
      const double n6 = 4.0 * c2;
      KahanSum sum;
      for (int i8 = 0; i8 <= blocks; ++i8) {
        if (8 * i8 > alpha) break;
        for (int i6 = 0; i6 + i8 <= blocks; ++i6) {
          if (8 * i8 + 6 * i6 > alpha) break;
          for (int i4 = 0; i4 + i6 + i8 <= blocks; ++i4) {
            int rest = alpha - 8 * i8 - 6 * i6 - 4 * i4;
            if (rest < 0) break;
            if (rest % 2 != 0) continue;
            int i2 = rest / 2;
            if (i2 + i4 + i6 + i8 > blocks) continue;
            double ways = binomial(blocks, i8) * binomial(blocks - i8, i6) *
                          binomial(blocks - i8 - i6, i4) * binomial(blocks - i8 - i6 - i4, i2);
            sum.add(ways * std::pow(n2, i2) * std::pow(n4, i4) * std::pow(n6, i6));
          }
        }
      }
      return sum.value() / d;
    }
    case CfFamily::HaarEvenMean:
      if (alpha == 0) return 1.0 / d;
      if (alpha == 2 * n) return 3.0 / (d * (d + 1.0));
      return 2.0 * binomial(2 * n, alpha) / (d * (d + 1.0));
    default:
      throw ParameterError("unknown fermionic closed-form family");
  }
}

double cf_spin(CfFamily family, int twice_s, int alpha, int twice_m) {
  if (twice_s < 1 || twice_s > 200) throw ParameterError("spin closed forms support 2s in [1, 200]");
  if (alpha < 0 || alpha > twice_s) throw ParameterError("alpha must lie in [0, 2s]");
  const double d = twice_s + 1.0;
  switch (family) {
    case CfFamily::BasisM: {
      if (std::abs(twice_m) > twice_s || ((twice_s - twice_m) % 2 != 0))
        throw ParameterError("m must be one of -s, -s+1, ..., s");
      if (std::abs(twice_m) == twice_s) {
        double c = cg_highest_weight_identity(twice_s, alpha);
        return c * c;
      }
      double c = cg(twice_s, twice_m, twice_s, -twice_m, 2 * alpha, 0);
      return c * c;
    }
    case CfFamily::Ghz: {
      double c = cg(twice_s, twice_s, twice_s, -twice_s, 2 * alpha, 0);
      if (alpha == twice_s) return 0.5 + (twice_s % 2 == 0 ? c * c : 0.0);
      return alpha % 2 == 0 ? c * c : 0.0;
    }
    case CfFamily::HaarMean:
      if (alpha == 0) return 1.0 / d;
      return (2.0 * alpha + 1.0) / (d * (d + 1.0));
    default:
      throw ParameterError("unknown spin closed-form family");
  }
}

double cf_clifford_witness(CfFamily family, int n) {
  check_n(n);
  const double d = pow2(n);
  switch (family) {
    case CfFamily::Stabilizer:
      return 1.0 / d;
    case CfFamily::Magic:
      return std::pow(3.0 / 8.0, n);
    case CfFamily::HaarMean:
      return 4.0 / (d * (d + 3.0));
    default:
      throw ParameterError("unknown clifford closed-form family");
  }
}

double cf_clifford(CfFamily family, int n, CliffClass cls) {
  check_n(n);
  const double d = pow2(n);
  switch (cls) {
    case CliffClass::Id:
      return 1.0 / (d * d);
    case CliffClass::R:
    case CliffClass::L:
      return (d - 1.0) / (d * d);
    case CliffClass::Zero:
      return (d - 1.0) / (d * d * (d + 1.0));
    case CliffClass::Two:
      return 0.0;
    case CliffClass::One:
      // witness = P_id + P_zero + P_one + P_two
      return cf_clifford_witness(family, n) - 2.0 / (d * (d + 1.0));
    case CliffClass::Residual: {
      double named = cf_clifford(family, n, CliffClass::Id) +
                     2.0 * cf_clifford(family, n, CliffClass::R) +
                     cf_clifford(family, n, CliffClass::Zero) +
                     cf_clifford(family, n, CliffClass::One);
      return 1.0 - named;
    }
  }
  throw InternalError("unknown clifford class");
}

PurityProfile closed_profile(const ClosedFormQuery& query) {
  const QrtKind& qrt = query.qrt;
  validate(qrt);
  if (!closed_form_available(qrt.kind, query.family))
    throw ParameterError("no closed form for family " + to_string(query.family) + " under " +
                         to_string(qrt.kind));
  PurityProfile prof;
  prof.qrt = qrt;
  KahanSum total;
  switch (qrt.kind) {
    case Qrt::Bipartite2Q: {
      for (const auto& cls : irrep_table(qrt)) {
        double v = cf_bipartite(query.family, cls.label.pattern, query.theta);
        prof.entries.push_back({cls, v});
        total.add(v);
      }
      break;
    }
    case Qrt::Multipartite: {
      check_n(qrt.n);
      prof.agg = Aggregation::ByHammingWeight;
      for (int k = 0; k <= qrt.n; ++k) {
        IrrepClass c;
        c.qrt = qrt;
        c.label = weight_label(k, qrt.n);
        c.dimension = 1;
        for (int i = 0; i < k; ++i) c.dimension *= 3;
        c.count = static_cast<std::uint64_t>(binomial_u128(qrt.n, k));
        double v = cf_multipartite(query.family, qrt.n, k);
        prof.entries.push_back({c, v});
        total.add(v);
      }
      break;
    }
    case Qrt::Fermionic: {
      check_n(qrt.n);
      for (const auto& cls : irrep_table(qrt)) {
        double v = cf_fermionic(query.family, qrt.n, cls.label.value, query.gamma);
        prof.entries.push_back({cls, v});
        total.add(v);
      }
      prof.approximate = query.family == CfFamily::HaarEvenMean;
      break;
    }
    case Qrt::Spin: {
      for (const auto& cls : irrep_table(qrt)) {
        double v = cf_spin(query.family, qrt.twice_s, cls.label.value, query.twice_m);
        prof.entries.push_back({cls, v});
        total.add(v);
      }
      break;
    }
    case Qrt::Clifford: {
      for (const auto& cls : irrep_table(qrt)) {
        double v = cf_clifford(query.family, qrt.n, cls.label.cliff);
        prof.entries.push_back({cls, v});
        total.add(v);
      }
      break;
    }
  }
  prof.total = total.value();
  // The even-sector Haar mean drops exponentially small corrections; grant
  // it the documented 2^(2-n) deficit on top of the numerical tolerance.
  double budget = 1e-9 + (prof.approximate ? std::pow(2.0, -qrt.n + 2) : 0.0);
  if (std::abs(prof.total - 1.0) > budget)
    throw InternalError("closed-form profile does not normalize");
  return prof;
}

} // namespace gfd
