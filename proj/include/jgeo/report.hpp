#pragma once

#include <string>

#include "jgeo/suite.hpp"

namespace jgeo {

/// Sorted keys, two-space indentation, doubles printed with 17 significant
/// digits, NaN and infinities as null.
std::string report_json(const DefectReport& r);
std::string report_text(const DefectReport& r);

/// format is "json" or "text". Throws UsageError for another format and
/// Error when the file cannot be written.
void emit_report(const DefectReport& r, const std::string& format, const std::string& path);
std::string render_report(const DefectReport& r, const std::string& format);

}  // namespace jgeo
