#pragma once

#include <string>

#include <json.hpp>

#include "curvtk/audit.hpp"
#include "curvtk/engine.hpp"
#include "curvtk/inequality.hpp"
#include "curvtk/suites.hpp"

// JSON report documents. Every top-level report carries schema_version and a
// full echo of the inputs; identical run configurations produce byte-identical
// documents apart from the runtime fields.

namespace curvtk {

inline constexpr const char* kSchemaVersion = "1.0";

nlohmann::json to_json(const PinchingReport& r);
nlohmann::json to_json(const SampleStats& s);
nlohmann::json to_json(const SuiteReport& s);
nlohmann::json to_json(const CurvatureBundle& b);
nlohmann::json to_json(const YamabeDatum& y);

// Writes through a temp file in the same directory and renames into place.
void write_report_atomic(const std::string& path, const nlohmann::json& doc);

}  // namespace curvtk
