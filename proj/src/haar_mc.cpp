#include "gfd/haar_mc.hpp"

#include <cmath>

#include "gfd/closed_forms.hpp"
#include "gfd/errors.hpp"
#include "gfd/rng.hpp"

namespace gfd {

namespace {

constexpr std::size_t kChunk = 256;

PureState haar_sample_for(const QrtKind& qrt, std::uint64_t seed) {
  switch (qrt.kind) {
    case Qrt::Fermionic: return sample_haar_even_parity(qrt.n, seed);
    case Qrt::Spin: return spin_state(qrt.twice_s, sample_haar(qrt.twice_s + 1, seed).amp);
    default: return qubit_state(qrt.n, sample_haar(1LL << qrt.n, seed).amp);
  }
}

struct Moments {
  std::vector<double> mean;
  std::vector<double> m2; // sum of squared deviations from the running mean
  std::uint64_t count = 0;
};

// Chunked Welford accumulation merged in chunk order; the estimate is
// bitwise independent of the thread count and free of the cancellation the
// naive sum-of-squares formula suffers on near-constant classes.
Moments accumulate(std::uint64_t samples, std::uint64_t seed, int threads,
                   std::size_t width, const std::function<void(std::uint64_t, std::vector<double>&)>& eval) {
  const std::size_t nchunks = static_cast<std::size_t>((samples + kChunk - 1) / kChunk);
  std::vector<Moments> partial(nchunks);
  run_chunked(nchunks, threads, [&](std::size_t lo, std::size_t hi) {
    std::vector<double> value(width);
    for (std::size_t c = lo; c < hi; ++c) {
      Moments m;
      m.mean.assign(width, 0.0);
      m.m2.assign(width, 0.0);
      std::uint64_t begin = c * kChunk;
      std::uint64_t end = std::min<std::uint64_t>(samples, begin + kChunk);
      for (std::uint64_t i = begin; i < end; ++i) {
        eval(derive_seed(seed, i), value);
        ++m.count;
        for (std::size_t k = 0; k < width; ++k) {
          double delta = value[k] - m.mean[k];
          m.mean[k] += delta / static_cast<double>(m.count);
          m.m2[k] += delta * (value[k] - m.mean[k]);
        }
      }
      partial[c] = std::move(m);
    }
  });
  Moments total;
  total.mean.assign(width, 0.0);
  total.m2.assign(width, 0.0);
  for (const auto& m : partial) {
    if (m.count == 0) continue;
    std::uint64_t na = total.count, nb = m.count;
    for (std::size_t k = 0; k < width; ++k) {
      double delta = m.mean[k] - total.mean[k];
      double mean = na + nb == 0 ? 0.0
                                 : (static_cast<double>(na) * total.mean[k] +
                                    static_cast<double>(nb) * m.mean[k]) /
                                       static_cast<double>(na + nb);
      total.m2[k] += m.m2[k] + delta * delta * static_cast<double>(na) *
                                   static_cast<double>(nb) / static_cast<double>(na + nb);
      total.mean[k] = mean;
    }
    total.count += nb;
  }
  return total;
}

McEstimate finish(const Moments& m, std::size_t k, std::uint64_t seed) {
  McEstimate e;
  e.samples = m.count;
  e.seed = seed;
  e.mean = m.mean[k];
  if (m.count > 1) {
    double var = m.m2[k] / static_cast<double>(m.count - 1);
    e.std_error = std::sqrt(std::max(0.0, var) / static_cast<double>(m.count));
  }
  return e;
}

double sigma_distance(const McEstimate& e, double analytic) {
  double diff = std::abs(e.mean - analytic);
  if (e.std_error > 0.0) return diff / e.std_error;
  return diff < 1e-12 ? 0.0 : std::numeric_limits<double>::infinity();
}

} // namespace

double analytic_haar_mean(const QrtKind& qrt, const IrrepClass& cls) {
  validate(qrt);
  const double d = static_cast<double>(qrt_dim(qrt));
  switch (qrt.kind) {
    case Qrt::Bipartite2Q:
    case Qrt::Multipartite: {
      if (cls.label.width < 0) // aggregated weight class
        return cf_multipartite(CfFamily::HaarMean, qrt.n, cls.label.value);
      int w = popcount64(cls.label.pattern);
      if (w == 0) return 1.0 / d;
      return std::pow(3.0, w) / (d * (d + 1.0));
    }
    case Qrt::Fermionic:
      return cf_fermionic(CfFamily::HaarEvenMean, qrt.n, cls.label.value);
    case Qrt::Spin:
      return cf_spin(CfFamily::HaarMean, qrt.twice_s, cls.label.value);
    case Qrt::Clifford:
      return cf_clifford(CfFamily::HaarMean, qrt.n, cls.label.cliff);
  }
  throw InternalError("unhandled qrt");
}

std::vector<McClassEstimate> estimate_haar_profile(const QrtKind& qrt, std::uint64_t samples,
                                                   std::uint64_t seed, int threads) {
  if (samples < 2) throw ParameterError("estimate_haar_profile: need at least 2 samples");
  validate(qrt);
  const std::vector<IrrepClass> table = irrep_table(qrt);
  const std::size_t width = table.size();
  Moments m = accumulate(samples, seed, threads, width,
                         [&](std::uint64_t s, std::vector<double>& value) {
                           PureState psi = haar_sample_for(qrt, s);
                           PurityProfile prof = profile(psi, qrt);
                           for (std::size_t k = 0; k < width; ++k) value[k] = prof.entries[k].purity;
                         });
  std::vector<McClassEstimate> out(width);
  for (std::size_t k = 0; k < width; ++k) {
    out[k].cls = table[k];
    out[k].estimate = finish(m, k, seed);
    out[k].analytic = analytic_haar_mean(qrt, table[k]);
    out[k].sigma_distance = sigma_distance(out[k].estimate, out[k].analytic);
  }
  return out;
}

McClassEstimate estimate_haar_mean(const QrtKind& qrt, const IrrepClass& cls,
                                   std::uint64_t samples, std::uint64_t seed, int threads) {
  for (auto& row : estimate_haar_profile(qrt, samples, seed, threads))
    if (to_string(row.cls.label) == to_string(cls.label)) return row;
  throw ParameterError("class not found in the theory's table");
}

McClassEstimate estimate_clifford_witness_mean(int n, std::uint64_t samples, std::uint64_t seed,
                                               int threads) {
  if (samples < 2) throw ParameterError("witness estimate: need at least 2 samples");
  QrtKind qrt = clifford(n);
  Moments m = accumulate(samples, seed, threads, 1,
                         [&](std::uint64_t s, std::vector<double>& value) {
                           PureState psi = haar_sample_for(qrt, s);
                           value[0] = clifford_witness_purity(psi);
                         });
  McClassEstimate out;
  out.cls.qrt = qrt;
  out.cls.label = clifford_label(CliffClass::One);
  out.estimate = finish(m, 0, seed);
  out.analytic = cf_clifford_witness(CfFamily::HaarMean, n);
  out.sigma_distance = sigma_distance(out.estimate, out.analytic);
  return out;
}

} // namespace gfd
