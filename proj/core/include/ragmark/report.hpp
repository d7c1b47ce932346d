#pragma once

#include <string>
#include <utility>
#include <vector>

#include "ragmark/analysis.hpp"
#include "ragmark/benchmark.hpp"
#include "ragmark/config.hpp"
#include "ragmark/model.hpp"

namespace ragmark {

/// A comparison table in the rows-are-methods, columns-are-benchmarks
/// layout. Row values align with `columns` by position.
struct MethodTable {
    std::string title;
    std::vector<std::string> columns;
    std::vector<std::pair<std::string, std::vector<double>>> rows;
};

std::string html_escape(std::string_view text);

std::string render_method_table_html(const MethodTable& table);

/// Self-contained static page: verdict summary, per-property histograms,
/// root-cause insights, and a per-record table.
std::string render_records_report_html(const std::vector<EvaluationRecord>& records,
                                       const ThresholdConfig& thresholds);

/// The same content as a JSON document.
std::string records_report_json(const std::vector<EvaluationRecord>& records,
                                const ThresholdConfig& thresholds);

std::string render_benchmark_report_html(const BenchmarkReport& report);

}  // namespace ragmark
