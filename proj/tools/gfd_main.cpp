// gfd: group-Fourier purity profiles of pure states under four quantum
// resource theories. Subcommands: profile, verify, haar, maxent, list-irreps.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "gfd/closed_forms.hpp"
#include "gfd/haar_mc.hpp"
#include "gfd/maxent.hpp"
#include "gfd/report.hpp"

namespace {

using namespace gfd;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitCapacity = 3;

struct Options {
  std::string qrt = "multipartite";
  std::string family;
  int n = 0;
  double s = 0.0;
  double m = 0.0;
  double theta = -1.0;
  double gamma = -1.0;
  std::uint64_t seed = 0;
  std::uint64_t samples = 10000;
  std::string format = "csv";
  std::string output;
  std::string method = "auto";
  std::string aggregation;
  double tolerance = 1e-9;
  int threads = 0;
};

int env_threads() {
  const char* v = std::getenv("GFD_THREADS");
  if (!v) return 1;
  int t = std::atoi(v);
  return t >= 1 ? t : 1;
}

int resolve_threads(const Options& opt) { return opt.threads >= 1 ? opt.threads : env_threads(); }

int half_integer(double v, const char* what) {
  double tv = 2.0 * v;
  if (std::abs(tv - std::round(tv)) > 1e-9)
    throw ParameterError(std::string(what) + " must be integer or half-integer");
  return static_cast<int>(std::llround(tv));
}

QrtKind parse_qrt(const Options& opt) {
  Qrt kind = qrt_from_string(opt.qrt);
  switch (kind) {
    case Qrt::Bipartite2Q: return bipartite2q();
    case Qrt::Spin: {
      int ts = half_integer(opt.s, "--s");
      if (ts < 1) throw ParameterError("spin theory needs --s >= 0.5");
      return spin_qrt(ts);
    }
    default: {
      if (opt.n < 1) throw ParameterError("--n is required for qubit theories");
      return QrtKind{kind, opt.n, 0};
    }
  }
}

StateSpec parse_state_spec(const Options& opt, const QrtKind& qrt) {
  if (opt.family.empty()) throw ParameterError("--family is required");
  StateSpec spec;
  spec.family = state_family_from_string(opt.family);
  spec.seed = opt.seed;
  if (qrt.kind == Qrt::Spin) {
    spec.twice_s = qrt.twice_s;
    if (spec.family == StateFamily::SpinBasis) spec.params = {opt.m};
  } else {
    spec.n = qrt.n;
    if (spec.family == StateFamily::Theta) {
      if (opt.theta < 0) throw ParameterError("theta family needs --theta");
      spec.params = {opt.theta};
    }
    if (spec.family == StateFamily::Extent) {
      if (opt.gamma < 0) throw ParameterError("extent family needs --gamma");
      spec.params = {opt.gamma};
    }
  }
  return spec;
}

bool within_brute_caps(const QrtKind& qrt) {
  switch (qrt.kind) {
    case Qrt::Bipartite2Q: return true;
    case Qrt::Multipartite:
    case Qrt::Fermionic: return qrt.n <= 8;
    case Qrt::Spin: return qrt.twice_s <= 24;
    case Qrt::Clifford: return qrt.n <= 3;
  }
  return false;
}

ClosedFormQuery make_query(const QrtKind& qrt, const StateSpec& spec, const Options& opt) {
  ClosedFormQuery q;
  q.qrt = qrt;
  q.family = cf_family_for(qrt.kind, spec.family);
  q.theta = opt.theta >= 0 ? opt.theta : 0.0;
  q.gamma = opt.gamma >= 0 ? opt.gamma : 0.0;
  if (qrt.kind == Qrt::Spin && spec.family == StateFamily::SpinBasis)
    q.twice_m = half_integer(opt.m, "--m");
  return q;
}

PurityProfile aggregate_for_output(const PurityProfile& prof, const QrtKind& qrt,
                                   const std::string& requested) {
  std::string agg = requested;
  if (agg.empty())
    agg = (qrt.kind == Qrt::Multipartite && prof.agg == Aggregation::None) ? "weight" : "none";
  Aggregation scheme = aggregation_from_string(agg);
  if (scheme == Aggregation::None || prof.agg == scheme) {
    PurityProfile out = prof;
    return out;
  }
  return aggregate_profile(prof, scheme);
}

int cmd_profile(const Options& opt) {
  QrtKind qrt = parse_qrt(opt);
  StateSpec spec = parse_state_spec(opt, qrt);
  const int threads = resolve_threads(opt);

  bool is_mean_family =
      spec.family == StateFamily::Haar || spec.family == StateFamily::HaarEvenParity;
  std::string method = opt.method;
  if (method == "auto") {
    bool has_cf = true;
    try {
      cf_family_for(qrt.kind, spec.family);
    } catch (const ParameterError&) {
      has_cf = false;
    }
    method = (has_cf && (!within_brute_caps(qrt) || is_mean_family)) ? "closed" : "brute";
  }

  PurityProfile prof;
  if (method == "closed") {
    prof = closed_profile(make_query(qrt, spec, opt));
  } else if (method == "brute") {
    prof = profile(make_state(spec), qrt, threads);
  } else {
    throw ParameterError("--method must be auto, closed, or brute");
  }
  prof = aggregate_for_output(prof, qrt, opt.aggregation);

  if (opt.format == "csv")
    write_output(opt.output, profile_csv(prof));
  else if (opt.format == "json")
    write_output(opt.output, profile_json(prof, spec, method).dump(2) + "\n");
  else
    throw ParameterError("--format must be csv or json");
  return kExitOk;
}

struct Deviation {
  std::string family;
  std::string label;
  double value = 0.0;
};

void compare_profiles(const PurityProfile& brute, const PurityProfile& closed,
                      const std::string& family, double tol, double& worst,
                      std::vector<Deviation>& offenders) {
  if (brute.entries.size() != closed.entries.size())
    throw InternalError("verify: row mismatch between methods");
  for (std::size_t i = 0; i < brute.entries.size(); ++i) {
    double dev = std::abs(brute.entries[i].purity - closed.entries[i].purity);
    worst = std::max(worst, dev);
    if (dev > tol)
      offenders.push_back({family, to_string(brute.entries[i].cls.label), dev});
  }
}

int cmd_verify(const Options& opt) {
  QrtKind qrt = parse_qrt(opt);
  if (!within_brute_caps(qrt))
    throw CapacityError("verify needs brute-force caps (multipartite/fermionic n <= 8, spin 2s <= 24, clifford n <= 3)");
  const int threads = resolve_threads(opt);
  const double tol = opt.tolerance;

  std::vector<Deviation> offenders;
  nlohmann::json families = nlohmann::json::array();

  auto run_family = [&](const StateSpec& spec, const ClosedFormQuery& query,
                        const std::string& name) {
    PurityProfile brute = profile(make_state(spec), qrt, threads);
    if (qrt.kind == Qrt::Multipartite) brute = aggregate_profile(brute, Aggregation::ByHammingWeight);
    PurityProfile closed = closed_profile(query);
    double worst = 0.0;
    compare_profiles(brute, closed, name, tol, worst, offenders);
    nlohmann::json f;
    f["family"] = name;
    f["max_abs_deviation"] = worst;
    families.push_back(std::move(f));
  };

  auto family_spec = [&](StateFamily f) {
    StateSpec s;
    s.family = f;
    s.seed = opt.seed;
    if (qrt.kind == Qrt::Spin)
      s.twice_s = qrt.twice_s;
    else
      s.n = qrt.n;
    return s;
  };
  auto family_query = [&](CfFamily f) {
    ClosedFormQuery q;
    q.qrt = qrt;
    q.family = f;
    return q;
  };

  switch (qrt.kind) {
    case Qrt::Bipartite2Q: {
      run_family(family_spec(StateFamily::Product), family_query(CfFamily::Product), "product");
      run_family(family_spec(StateFamily::Bell), family_query(CfFamily::Bell), "bell");
      for (double theta : {0.0, M_PI / 8, M_PI / 4, 3 * M_PI / 8, M_PI / 2}) {
        StateSpec s = family_spec(StateFamily::Theta);
        s.params = {theta};
        ClosedFormQuery q = family_query(CfFamily::Theta);
        q.theta = theta;
        run_family(s, q, "theta(" + format_double(theta) + ")");
      }
      break;
    }
    case Qrt::Multipartite: {
      run_family(family_spec(StateFamily::Product), family_query(CfFamily::Product), "product");
      run_family(family_spec(StateFamily::Ghz), family_query(CfFamily::Ghz), "ghz");
      run_family(family_spec(StateFamily::W), family_query(CfFamily::W), "w");
      break;
    }
    case Qrt::Fermionic: {
      if (opt.family == "extent" && qrt.n % 4 != 0)
        throw ParameterError("extent requires n to be a multiple of four");
      run_family(family_spec(StateFamily::GaussianRandom), family_query(CfFamily::Gaussian),
                 "gaussian");
      if (qrt.n % 2 == 0)
        run_family(family_spec(StateFamily::Ghz), family_query(CfFamily::Ghz), "ghz");
      if (qrt.n % 4 == 0) {
        for (double gamma : {0.0, M_PI / 4, M_PI / 2, M_PI}) {
          StateSpec s = family_spec(StateFamily::Extent);
          s.params = {gamma};
          ClosedFormQuery q = family_query(CfFamily::Extent);
          q.gamma = gamma;
          run_family(s, q, "extent(" + format_double(gamma) + ")");
        }
      }
      break;
    }
    case Qrt::Spin: {
      for (int tm = -qrt.twice_s; tm <= qrt.twice_s; tm += 2) {
        StateSpec s = family_spec(StateFamily::SpinBasis);
        s.params = {tm / 2.0};
        ClosedFormQuery q = family_query(CfFamily::BasisM);
        q.twice_m = tm;
        run_family(s, q, "basis-m(" + format_double(tm / 2.0) + ")");
      }
      run_family(family_spec(StateFamily::SpinGhz), family_query(CfFamily::Ghz), "ghz");
      break;
    }
    case Qrt::Clifford: {
      run_family(family_spec(StateFamily::StabilizerCanonical), family_query(CfFamily::Stabilizer),
                 "stabilizer");
      if (qrt.n >= 2)
        run_family(family_spec(StateFamily::Ghz), family_query(CfFamily::Stabilizer), "ghz");
      run_family(family_spec(StateFamily::Magic), family_query(CfFamily::Magic), "magic");
      break;
    }
  }

  nlohmann::json j;
  j["qrt"] = to_string(qrt.kind);
  j["tolerance"] = tol;
  j["families"] = families;
  j["failures"] = nlohmann::json::array();
  for (const auto& o : offenders) {
    nlohmann::json f;
    f["family"] = o.family;
    f["label"] = o.label;
    f["deviation"] = o.value;
    j["failures"].push_back(std::move(f));
  }
  j["ok"] = offenders.empty();
  write_output(opt.output, j.dump(2) + "\n");
  return offenders.empty() ? kExitOk : kExitVerifyFailure;
}

int cmd_haar(const Options& opt) {
  QrtKind qrt = parse_qrt(opt);
  if (!within_brute_caps(qrt)) throw CapacityError("haar estimation needs brute-force caps");
  const int threads = resolve_threads(opt);
  std::vector<McClassEstimate> rows = estimate_haar_profile(qrt, opt.samples, opt.seed, threads);
  if (qrt.kind == Qrt::Clifford)
    rows.push_back(estimate_clifford_witness_mean(qrt.n, opt.samples, opt.seed, threads));
  if (opt.format == "csv")
    write_output(opt.output, haar_rows_csv(rows));
  else
    write_output(opt.output, haar_rows_json(qrt, rows).dump(2) + "\n");
  return kExitOk;
}

int cmd_maxent(const Options& opt) {
  if (opt.family.empty()) throw ParameterError("--family is required");
  StateFamily family = state_family_from_string(opt.family);
  nlohmann::json j;
  if (family == StateFamily::GaussianRandom) {
    auto [a, b] = gaussian_state_pair(opt.n, opt.seed);
    j = compression_report_json(verify_gaussian_pair(a, b));
  } else {
    StateSpec spec;
    spec.family = family;
    spec.n = opt.n;
    spec.seed = opt.seed;
    if (family == StateFamily::Theta && opt.theta >= 0) spec.params = {opt.theta};
    PureState state = make_state(spec);
    QrtKind qrt = multipartite(state.qubits);
    j = compression_report_json(verify_compression(state, qrt));
  }
  write_output(opt.output, j.dump(2) + "\n");
  return kExitOk;
}

int cmd_list_irreps(const Options& opt) {
  QrtKind qrt = parse_qrt(opt);
  std::vector<IrrepClass> table = irrep_table(qrt);
  if (opt.format == "csv")
    write_output(opt.output, irrep_table_csv(table));
  else
    write_output(opt.output, irrep_table_json(table).dump(2) + "\n");
  return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Group-Fourier purity profiles of pure quantum states"};
  app.require_subcommand(1);

  Options opt;
  auto add_common = [&](CLI::App* cmd, bool with_state) {
    cmd->add_option("--qrt", opt.qrt,
                    "theory: bipartite2q, multipartite, fermionic, spin, clifford");
    cmd->add_option("--n", opt.n, "qubit count");
    cmd->add_option("--s", opt.s, "spin (integer or half-integer)");
    if (with_state) {
      cmd->add_option("--family", opt.family, "state family (see README)");
      cmd->add_option("--m", opt.m, "spin projection for spin-basis");
      cmd->add_option("--theta", opt.theta, "theta-family angle, [0, pi/2]");
      cmd->add_option("--gamma", opt.gamma, "extent-family angle, [0, pi]");
    }
    cmd->add_option("--seed", opt.seed, "seed for all randomness");
    cmd->add_option("--samples", opt.samples, "Monte-Carlo sample count");
    cmd->add_option("--format", opt.format, "csv or json");
    cmd->add_option("--output", opt.output, "output path (atomic write); stdout if omitted");
    cmd->add_option("--method", opt.method, "auto, closed, or brute");
    cmd->add_option("--aggregation", opt.aggregation,
                    "none, weight, or mirror; cumulative rows sort by irrep dimension "
                    "ascending with label tie-break");
    cmd->add_option("--tolerance", opt.tolerance, "verify tolerance (default 1e-9)");
    cmd->add_option("--threads", opt.threads, "worker threads (default $GFD_THREADS or 1)");
  };

  CLI::App* profile_cmd = app.add_subcommand("profile", "purity profile of one state");
  add_common(profile_cmd, true);
  CLI::App* verify_cmd =
      app.add_subcommand("verify", "closed forms vs brute force across a theory's families");
  add_common(verify_cmd, true);
  CLI::App* haar_cmd = app.add_subcommand("haar", "Monte-Carlo Haar means vs analytic");
  add_common(haar_cmd, false);
  CLI::App* maxent_cmd =
      app.add_subcommand("maxent", "reconstruction / compression reports (JSON)");
  add_common(maxent_cmd, true);
  CLI::App* list_cmd = app.add_subcommand("list-irreps", "irrep classes of a theory");
  add_common(list_cmd, false);

  try {
    app.parse(argc, argv);
    if (app.got_subcommand(profile_cmd)) return cmd_profile(opt);
    if (app.got_subcommand(verify_cmd)) return cmd_verify(opt);
    if (app.got_subcommand(haar_cmd)) return cmd_haar(opt);
    if (app.got_subcommand(maxent_cmd)) return cmd_maxent(opt);
    if (app.got_subcommand(list_cmd)) return cmd_list_irreps(opt);
    return kExitUsage;
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitUsage;
  } catch (const CapacityError& e) {
    std::cerr << "capacity error: " << e.what() << "\n";
    return kExitCapacity;
  } catch (const ParameterError& e) {
    std::cerr << "parameter error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const SizeError& e) {
    std::cerr << "size error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}
