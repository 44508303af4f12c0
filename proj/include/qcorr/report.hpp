#ifndef QCORR_REPORT_HPP
#define QCORR_REPORT_HPP

#include <string>

#include <json.hpp>

#include "qcorr/dynamics.hpp"

namespace qcorr {

/// Shortest decimal representation that parses back to the value, capped
/// at 12 significant digits.
std::string format_number(double v);

/// CSV with the fixed header `param,c1,c2,c3,concurrence,min,fmin` and one
/// row per grid point. Identical input produces identical bytes.
std::string sweep_to_csv(const SweepResult& result);

nlohmann::json sweep_rows_json(const SweepResult& result);
nlohmann::json channel_spec_json(const ChannelSpec& spec);
ChannelSpec channel_spec_from_json(const nlohmann::json& j);
nlohmann::json critical_points_json(const std::vector<CriticalPoint>& points);

/// Write through a temporary file and atomic rename, so failures never
/// leave partial output behind. Throws IoError.
void atomic_write_file(const std::string& path, const std::string& content);

} // namespace qcorr

#endif
