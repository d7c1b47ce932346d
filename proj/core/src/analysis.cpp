#include "ragmark/analysis.hpp"

#include <algorithm>

#include <nlohmann/json.hpp>

namespace ragmark {
namespace {

struct MeanAccumulator {
    double sum = 0.0;
    std::size_t count = 0;

    void add(double value) {
        sum += value;
        ++count;
    }
    double mean() const { return count == 0 ? 0.0 : sum / static_cast<double>(count); }
};

double property_mean(const std::vector<const EvaluationRecord*>& records,
                     std::string_view property_id) {
    MeanAccumulator acc;
    for (const EvaluationRecord* record : records) {
        if (const PropertyScore* score = record->find_score(property_id)) acc.add(score->value);
    }
    return acc.mean();
}

}  // namespace

std::size_t histogram_band(double value) {
    if (value < 0.5) return 0;
    if (value < 0.8) return 1;
    return 2;
}

AnnotationBreakdown annotation_breakdown(const std::vector<EvaluationRecord>& records) {
    AnnotationBreakdown breakdown;
    for (const auto& record : records) {
        switch (record.verdict.label) {
            case VerdictLabel::Positive: ++breakdown.positive; break;
            case VerdictLabel::Negative: ++breakdown.negative; break;
            case VerdictLabel::Unknown: ++breakdown.unknown; break;
        }
        for (const auto& score : record.scores) {
            auto& histogram = breakdown.histograms[score.property_id];
            ++histogram[histogram_band(score.value)];
        }
    }
    return breakdown;
}

std::vector<RcaInsight> rca_insights(const std::vector<EvaluationRecord>& records,
                                     const ThresholdConfig& thresholds) {
    std::vector<const EvaluationRecord*> negatives;
    for (const auto& record : records) {
        if (record.verdict.label == VerdictLabel::Negative) negatives.push_back(&record);
    }
    std::vector<RcaInsight> insights;
    if (negatives.empty()) return insights;

    const double count = static_cast<double>(negatives.size());
    const double mean_retrieval = property_mean(negatives, props::kRetrievalRelevance);
    const double mean_grounded = property_mean(negatives, props::kGroundedInContext);
    const ThresholdBand retrieval_band = thresholds.band_for(props::kRetrievalRelevance);
    const ThresholdBand grounded_band = thresholds.band_for(props::kGroundedInContext);

    const bool retrieval_low = mean_retrieval < retrieval_band.fail_below;
    const bool grounded_low = mean_grounded < grounded_band.fail_below;
    const std::map<std::string, double> shared_evidence = {
        {"negative_count", count},
        {"mean_retrieval_relevance", mean_retrieval},
        {"mean_grounded_in_context", mean_grounded},
    };

    if (retrieval_low && mean_grounded >= grounded_band.pass_at_or_above) {
        insights.push_back(
            {"retrieval",
             "rule: mean retrieval_relevance below fail threshold while grounding passes; over " +
                 std::to_string(negatives.size()) + " negative verdicts, mean retrieval_relevance " +
                 std::to_string(mean_retrieval) + " < " + std::to_string(retrieval_band.fail_below) +
                 " and mean grounded_in_context " + std::to_string(mean_grounded) + " >= " +
                 std::to_string(grounded_band.pass_at_or_above) +
                 "; the retriever is the likely bottleneck",
             shared_evidence});
    } else if (grounded_low && mean_retrieval >= retrieval_band.pass_at_or_above) {
        insights.push_back(
            {"generation",
             "rule: mean grounded_in_context below fail threshold while retrieval passes; over " +
                 std::to_string(negatives.size()) + " negative verdicts, mean grounded_in_context " +
                 std::to_string(mean_grounded) + " < " + std::to_string(grounded_band.fail_below) +
                 " and mean retrieval_relevance " + std::to_string(mean_retrieval) + " >= " +
                 std::to_string(retrieval_band.pass_at_or_above) +
                 "; generation is not grounding in the retrieved context",
             shared_evidence});
    } else if (retrieval_low && grounded_low) {
        insights.push_back(
            {"mixed",
             "rule: retrieval and grounding both below fail thresholds over " +
                 std::to_string(negatives.size()) + " negative verdicts (mean retrieval_relevance " +
                 std::to_string(mean_retrieval) + ", mean grounded_in_context " +
                 std::to_string(mean_grounded) + "); mixed causes, no single component stands out",
             shared_evidence});
    }

    const ThresholdBand safety_band = thresholds.band_for(props::kSafety);
    std::size_t safety_failures = 0;
    for (const EvaluationRecord* record : negatives) {
        const PropertyScore* score = record->find_score(props::kSafety);
        if (score && score->value < safety_band.fail_below) ++safety_failures;
    }
    if (safety_failures > 0) {
        insights.push_back(
            {"safety",
             "rule: any negative verdict with a failing safety score; " +
                 std::to_string(safety_failures) + " of " + std::to_string(negatives.size()) +
                 " negative verdicts failed safety",
             {{"negative_count", count},
              {"safety_failures", static_cast<double>(safety_failures)}}});
    }
    return insights;
}

std::vector<HighlightSpan> highlight_ungrounded(const EvaluationRecord& record,
                                                const GroundedResult& result) {
    (void)record;
    std::vector<HighlightSpan> spans;
    for (const auto& evidence : result.statements) {
        if (evidence.verdict.label == JudgeLabel::Entailed) continue;
        spans.push_back({evidence.statement.start, evidence.statement.end,
                         evidence.statement.text,
                         std::string(to_string(evidence.verdict.label))});
    }
    std::sort(spans.begin(), spans.end(),
              [](const HighlightSpan& a, const HighlightSpan& b) { return a.start < b.start; });
    return spans;
}

ComparisonReport compare_versions(const std::vector<EvaluationRecord>& records_a,
                                  const std::vector<EvaluationRecord>& records_b) {
    ComparisonReport report;
    for (const auto& record : records_a) {
        if (record.version) {
            report.version_a = *record.version;
            break;
        }
    }
    for (const auto& record : records_b) {
        if (record.version) {
            report.version_b = *record.version;
            break;
        }
    }
    if (report.version_a.empty()) report.version_a = "a";
    if (report.version_b.empty()) report.version_b = "b";

    std::map<std::string, MeanAccumulator> means_a;
    std::map<std::string, MeanAccumulator> means_b;
    for (const auto& record : records_a) {
        for (const auto& score : record.scores) means_a[score.property_id].add(score.value);
    }
    for (const auto& record : records_b) {
        for (const auto& score : record.scores) means_b[score.property_id].add(score.value);
    }
    for (const auto& [property_id, acc_a] : means_a) {
        PropertyDelta delta;
        delta.mean_a = acc_a.mean();
        delta.count_a = acc_a.count;
        if (auto it = means_b.find(property_id); it != means_b.end()) {
            delta.mean_b = it->second.mean();
            delta.count_b = it->second.count;
        }
        delta.delta = delta.mean_b - delta.mean_a;
        report.deltas[property_id] = delta;
    }
    for (const auto& [property_id, acc_b] : means_b) {
        if (report.deltas.count(property_id)) continue;
        PropertyDelta delta;
        delta.mean_b = acc_b.mean();
        delta.count_b = acc_b.count;
        delta.delta = delta.mean_b;
        report.deltas[property_id] = delta;
    }

    // Pair rows by question hash, in b's order; repeated hashes pair up
    // in file order.
    std::map<std::string, std::vector<std::size_t>> by_hash;
    for (std::size_t i = 0; i < records_a.size(); ++i) {
        by_hash[records_a[i].question_hash].push_back(i);
    }
    std::map<std::string, std::size_t> taken;
    std::vector<bool> matched_a(records_a.size(), false);
    for (const auto& record_b : records_b) {
        auto it = by_hash.find(record_b.question_hash);
        std::size_t& cursor = taken[record_b.question_hash];
        if (it == by_hash.end() || cursor >= it->second.size()) {
            report.only_b.push_back(record_b.id);
            continue;
        }
        const EvaluationRecord& record_a = records_a[it->second[cursor]];
        matched_a[it->second[cursor]] = true;
        ++cursor;
        ComparisonRow row;
        row.question_hash = record_b.question_hash;
        row.id_a = record_a.id;
        row.id_b = record_b.id;
        for (const auto& score : record_a.scores) row.scores_a[score.property_id] = score.value;
        for (const auto& score : record_b.scores) row.scores_b[score.property_id] = score.value;
        report.matched.push_back(std::move(row));
    }
    for (std::size_t i = 0; i < records_a.size(); ++i) {
        if (!matched_a[i]) report.only_a.push_back(records_a[i].id);
    }

    const std::size_t smaller = std::min(records_a.size(), records_b.size());
    if (smaller > 0 && report.matched.size() * 2 < smaller) {
        report.low_overlap = true;
        report.warning = "only " + std::to_string(report.matched.size()) + " of " +
                         std::to_string(smaller) +
                         " interactions matched across versions; deltas compare largely disjoint "
                         "question sets";
    }
    return report;
}

std::string comparison_to_json(const ComparisonReport& report) {
    nlohmann::ordered_json doc;
    doc["version_a"] = report.version_a;
    doc["version_b"] = report.version_b;
    doc["matched_count"] = report.matched.size();
    doc["low_overlap"] = report.low_overlap;
    if (!report.warning.empty()) doc["warning"] = report.warning;
    nlohmann::ordered_json deltas = nlohmann::ordered_json::object();
    for (const auto& [property_id, delta] : report.deltas) {
        deltas[property_id] = {{"mean_a", delta.mean_a},   {"mean_b", delta.mean_b},
                               {"delta", delta.delta},     {"count_a", delta.count_a},
                               {"count_b", delta.count_b}};
    }
    doc["deltas"] = std::move(deltas);
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& row : report.matched) {
        nlohmann::ordered_json r;
        r["question_hash"] = row.question_hash;
        r["id_a"] = row.id_a;
        r["id_b"] = row.id_b;
        r["scores_a"] = row.scores_a;
        r["scores_b"] = row.scores_b;
        rows.push_back(std::move(r));
    }
    doc["matched"] = std::move(rows);
    doc["only_a"] = report.only_a;
    doc["only_b"] = report.only_b;
    return doc.dump(2) + "\n";
}

}  // namespace ragmark
