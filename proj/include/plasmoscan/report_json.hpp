#pragma once

#include <string>

#include "plasmoscan/detect.hpp"

namespace plasmoscan {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Canonical report serialization: fixed key order
/// {image, width, height, global_value, threshold, contours,
///  plasmodium_found, config} with floats at 6 significant digits.
/// Stage digests are runtime-only and not serialized.
std::string serialize_report(const DetectionReport& report);
DetectionReport parse_report(const std::string& json_text);

/// Config files carry the same keys as the report's config echo; every
/// field is optional and defaults apply. Unknown keys are rejected.
std::string serialize_config(const PipelineConfig& cfg);
PipelineConfig parse_config(const std::string& json_text);
PipelineConfig load_config_file(const std::string& path);

/// "%.6g" with a plain "0.x" form kept stable across locales.
std::string format_float(double v);

}  // namespace plasmoscan
