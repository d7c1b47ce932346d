#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "ragmark/config.hpp"
#include "ragmark/grounded.hpp"
#include "ragmark/model.hpp"

namespace ragmark {

/// Verdict counts plus per-property score histograms over the fixed
/// bands [0,0.5), [0.5,0.8), [0.8,1].
struct AnnotationBreakdown {
    std::size_t positive = 0;
    std::size_t negative = 0;
    std::size_t unknown = 0;
    std::map<std::string, std::array<std::size_t, 3>> histograms;
};

AnnotationBreakdown annotation_breakdown(const std::vector<EvaluationRecord>& records);

std::size_t histogram_band(double value);

/// A root-cause hint derived from the negative-verdict slice. component
/// is "retrieval", "generation", "safety", or "mixed" when retrieval and
/// grounding are both depressed and no single component stands out. The
/// message states the rule and the statistics that triggered it; the
/// evidence map carries those statistics for recomputation.
struct RcaInsight {
    std::string component;
    std::string message;
    std::map<std::string, double> evidence;
};

std::vector<RcaInsight> rca_insights(const std::vector<EvaluationRecord>& records,
                                     const ThresholdConfig& thresholds);

/// One answer span the judge did not mark entailed.
struct HighlightSpan {
    std::size_t start = 0;
    std::size_t end = 0;
    std::string statement;
    std::string label;

    bool operator==(const HighlightSpan&) const = default;
};

/// Ungrounded spans for a record's stored answer, sorted by span start.
std::vector<HighlightSpan> highlight_ungrounded(const EvaluationRecord& record,
                                                const GroundedResult& result);

struct PropertyDelta {
    double mean_a = 0.0;
    double mean_b = 0.0;
    double delta = 0.0;  // mean_b - mean_a
    std::size_t count_a = 0;
    std::size_t count_b = 0;
};

struct ComparisonRow {
    std::string question_hash;
    std::string id_a;
    std::string id_b;
    std::map<std::string, double> scores_a;
    std::map<std::string, double> scores_b;
};

struct ComparisonReport {
    std::string version_a;
    std::string version_b;
    std::map<std::string, PropertyDelta> deltas;
    std::vector<ComparisonRow> matched;
    std::vector<std::string> only_a;  // ids with no partner in b
    std::vector<std::string> only_b;
    bool low_overlap = false;
    std::string warning;
};

/// Side-by-side comparison of two record sets. Rows are matched on the
/// normalized-question hash; per-property mean deltas (b - a) are
/// computed over all records of each side, matched or not.
ComparisonReport compare_versions(const std::vector<EvaluationRecord>& records_a,
                                  const std::vector<EvaluationRecord>& records_b);

std::string comparison_to_json(const ComparisonReport& report);

}  // namespace ragmark
