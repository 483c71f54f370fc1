#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

#include "greedyseq/diagnostics.hpp"
#include "greedyseq/pointset.hpp"

namespace greedyseq::io {

// %.17g: doubles survive the round trip bit-for-bit.
std::string format_double(double v);

// Writes via a temporary file in the same directory, then renames.
void atomic_write(const std::filesystem::path& path, const std::string& contents);

// PointSet CSV: header "index,x1[,...]", one row per point; provenance goes to
// <path>.provenance.json.
void write_pointset(const std::filesystem::path& csv_path, const PointSet& points);
PointSet read_pointset(const std::filesystem::path& csv_path);

struct MetricCsvRow {
    std::size_t n = 0;
    std::string metric;
    double value = 0.0;
    double tail_bound = 0.0;
};

// Metric CSV: header "n,metric,value,tail_bound".
void write_metric_rows(const std::filesystem::path& path, const std::vector<MetricCsvRow>& rows);
std::vector<MetricCsvRow> rows_from_reports(const std::vector<MetricReport>& reports);

void write_json(const std::filesystem::path& path, const nlohmann::json& j);
nlohmann::json read_json(const std::filesystem::path& path);

// Accepts decimals ("0.25") and rationals ("1/3"); the caller keeps the
// literal for provenance.
double parse_coordinate(const std::string& token);

} // namespace greedyseq::io
