#ifndef SSFLAB_GRID_IO_HPP
#define SSFLAB_GRID_IO_HPP

#include <string>
#include <vector>

#include <json.hpp>

#include "ssflab/convergence.hpp"
#include "ssflab/ssf.hpp"

namespace ssflab {

/// 17 significant digits, '.' decimal separator, no locale dependence.
std::string format_double(double v);

/// Writes rows of doubles under a header line; LF line endings, byte-stable.
void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);

/// Serializes JSON with 2-space indentation and a trailing LF.
void write_json(const std::string& path, const nlohmann::json& j);

void write_text(const std::string& path, const std::string& content);

/// (lambda, xi) CSV plus a JSON metadata sidecar at path + ".json".
void write_grid(const std::string& csv_path, const SpectralShiftGrid& grid);

nlohmann::json grid_metadata(const SpectralShiftGrid& grid);

/// Scan report: JSON (machine) and long-format CSV
/// (R, quantity, value, reference, error).
nlohmann::json scan_report_json(const ScanReport& rep);
void write_scan_report(const std::string& dir, const ScanReport& rep);

} // namespace ssflab

#endif
