#pragma once

#include "perceprice/report/report.hpp"

#include <json.hpp>

#include <string>
#include <string_view>
#include <vector>

namespace perceprice::report {

enum class Format { PlainText, DelimitedValues, StructuredData, VectorGraphic };

/// "text", "csv", "json" or "svg".
Format parse_format(std::string_view name);
std::string_view to_string(Format format) noexcept;

nlohmann::json to_json(const ReportTable& table);
nlohmann::json to_json(const PlotData& plot);

/// Throws UnsupportedFormat for a table rendered as SVG.
std::string render(const ReportTable& table, Format format);
std::string render(const PlotData& plot, Format format);
std::string render(const Artifact& artifact, Format format);

/// Several artifacts as one document. JSON groups them into
/// {"tables": [...], "figures": [...]}; text and CSV use section headers.
std::string render_bundle(const std::vector<Artifact>& artifacts, Format format);

}  // namespace perceprice::report
