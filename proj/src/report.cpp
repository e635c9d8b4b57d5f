#include "gfd/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <nlohmann/json.hpp>

#include "gfd/errors.hpp"

namespace gfd {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {

// Entries in cumulative-row order with their running sums.
std::vector<std::pair<const ProfileEntry*, double>> ordered_rows(const PurityProfile& p) {
  std::vector<const ProfileEntry*> order;
  order.reserve(p.entries.size());
  for (const auto& e : p.entries) order.push_back(&e);
  std::sort(order.begin(), order.end(), [](const ProfileEntry* a, const ProfileEntry* b) {
    if (a->cls.dimension != b->cls.dimension) return a->cls.dimension < b->cls.dimension;
    return to_string(a->cls.label) < to_string(b->cls.label);
  });
  std::vector<std::pair<const ProfileEntry*, double>> rows;
  rows.reserve(order.size());
  KahanSum acc;
  for (const ProfileEntry* e : order) {
    acc.add(e->purity);
    rows.emplace_back(e, acc.value());
  }
  return rows;
}

} // namespace

std::string profile_csv(const PurityProfile& profile) {
  std::string out = "label,dimension,count,purity,cumulative\n";
  for (const auto& [e, cum] : ordered_rows(profile)) {
    out += to_string(e->cls.label);
    out += ",";
    out += u128_to_string(e->cls.dimension);
    out += ",";
    out += std::to_string(e->cls.count);
    out += ",";
    out += format_double(e->purity);
    out += ",";
    out += format_double(cum);
    out += "\n";
  }
  return out;
}

namespace {

nlohmann::json dimension_json(uint128 dim) {
  if (dim <= (uint128{1} << 53)) return static_cast<std::uint64_t>(dim);
  return u128_to_string(dim); // too wide for a double-exact JSON number
}

} // namespace

nlohmann::json profile_json(const PurityProfile& profile, const StateSpec& spec,
                            const std::string& method) {
  nlohmann::json j;
  j["qrt"] = to_string(profile.qrt.kind);
  if (profile.qrt.kind == Qrt::Spin)
    j["s"] = profile.qrt.twice_s / 2.0;
  else
    j["n"] = profile.qrt.n;
  j["state"] = to_json(spec);
  j["method"] = method;
  j["aggregation"] = to_string(profile.agg);
  if (profile.approximate) j["approximate"] = true;
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& [e, cum] : ordered_rows(profile)) {
    nlohmann::json r;
    r["label"] = to_string(e->cls.label);
    r["dimension"] = dimension_json(e->cls.dimension);
    r["count"] = e->cls.count;
    r["purity"] = e->purity;
    r["cumulative"] = cum;
    rows.push_back(std::move(r));
  }
  j["rows"] = std::move(rows);
  j["total"] = profile.total;
  return j;
}

std::string irrep_table_csv(const std::vector<IrrepClass>& table) {
  std::string out = "label,dimension,count\n";
  for (const auto& c : table)
    out += to_string(c.label) + "," + u128_to_string(c.dimension) + "," +
           std::to_string(c.count) + "\n";
  return out;
}

nlohmann::json irrep_table_json(const std::vector<IrrepClass>& table) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& c : table) {
    nlohmann::json r;
    r["label"] = to_string(c.label);
    r["dimension"] = dimension_json(c.dimension);
    r["count"] = c.count;
    rows.push_back(std::move(r));
  }
  return rows;
}

std::string haar_rows_csv(const std::vector<McClassEstimate>& rows) {
  std::string out = "label,mean,std_error,analytic,sigma_distance,samples,seed\n";
  for (const auto& r : rows) {
    out += to_string(r.cls.label) + "," + format_double(r.estimate.mean) + "," +
           format_double(r.estimate.std_error) + "," + format_double(r.analytic) + "," +
           format_double(r.sigma_distance) + "," + std::to_string(r.estimate.samples) + "," +
           std::to_string(r.estimate.seed) + "\n";
  }
  return out;
}

nlohmann::json haar_rows_json(const QrtKind& qrt, const std::vector<McClassEstimate>& rows) {
  nlohmann::json j;
  j["qrt"] = to_string(qrt.kind);
  if (qrt.kind == Qrt::Spin)
    j["s"] = qrt.twice_s / 2.0;
  else
    j["n"] = qrt.n;
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : rows) {
    nlohmann::json e;
    e["label"] = to_string(r.cls.label);
    e["mean"] = r.estimate.mean;
    e["std_error"] = r.estimate.std_error;
    e["samples"] = r.estimate.samples;
    e["seed"] = r.estimate.seed;
    e["analytic"] = r.analytic;
    e["sigma_distance"] = r.sigma_distance;
    arr.push_back(std::move(e));
  }
  j["rows"] = std::move(arr);
  return j;
}

nlohmann::json compression_report_json(const CompressionReport& report) {
  nlohmann::json j;
  j["certified"] = report.certified;
  j["fidelity"] = std::isnan(report.fidelity) ? nlohmann::json(nullptr) : nlohmann::json(report.fidelity);
  j["correlation_distance"] = std::isnan(report.correlation_distance)
                                  ? nlohmann::json(nullptr)
                                  : nlohmann::json(report.correlation_distance);
  if (!std::isnan(report.min_singular_value)) j["min_singular_value"] = report.min_singular_value;
  return j;
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
    return;
  }
  namespace fs = std::filesystem;
  fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw ParameterError("cannot open output file: " + path);
    f << content;
  }
  fs::rename(tmp, target);
}

} // namespace gfd
