#pragma once

#include <string>

#include <nlohmann/json_fwd.hpp>

#include "gfd/haar_mc.hpp"
#include "gfd/maxent.hpp"
#include "gfd/purity.hpp"
#include "gfd/states.hpp"

namespace gfd {

/// Shortest exact decimal form (17 significant digits round-trip).
std::string format_double(double v);

/// Rows in cumulative order: label,dimension,count,purity,cumulative.
std::string profile_csv(const PurityProfile& profile);

/// {qrt, state, method, rows, total}; row values match the CSV bit for bit.
nlohmann::json profile_json(const PurityProfile& profile, const StateSpec& spec,
                            const std::string& method);

std::string irrep_table_csv(const std::vector<IrrepClass>& table);
nlohmann::json irrep_table_json(const std::vector<IrrepClass>& table);

std::string haar_rows_csv(const std::vector<McClassEstimate>& rows);
nlohmann::json haar_rows_json(const QrtKind& qrt, const std::vector<McClassEstimate>& rows);

nlohmann::json compression_report_json(const CompressionReport& report);

/// Writes to stdout when path is empty, otherwise atomically
/// (temp file + rename).
void write_output(const std::string& path, const std::string& content);

} // namespace gfd
