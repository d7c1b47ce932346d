#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ragmark/config.hpp"
#include "ragmark/corruption.hpp"
#include "ragmark/model.hpp"

namespace ragmark {

struct SampleOutcome {
    std::string id;
    Label label = Label::Positive;
    double score = 0.0;  // grounded score of the sample
    std::optional<VerdictLabel> verdict;

    bool operator==(const SampleOutcome&) const = default;
};

/// Headline metrics plus the per-sample dump they were computed from.
/// Rerunning with the same dataset and config reproduces every field
/// except the wall-clock duration, which is informational and excluded
/// from the serialized form.
struct BenchmarkReport {
    std::string dataset;
    std::string protocol;
    std::map<std::string, double> metrics;
    std::vector<SampleOutcome> samples;
    std::string config_fingerprint;
    double duration_seconds = 0.0;
};

/// Scores every sample with the faithfulness pipeline and reports
/// ROC-AUC against the labels. Requires both classes.
BenchmarkReport run_grounded_benchmark(const BenchmarkDataset& dataset, const EvalConfig& config,
                                       int jobs = 1);

/// Classifies a verdict per sample; the binary prediction is positive
/// only for Positive verdicts (Unknown counts as negative). Reports
/// accuracy against the labels.
BenchmarkReport run_e2e_benchmark(const BenchmarkDataset& dataset, const EvalConfig& config,
                                  int jobs = 1);

std::string report_to_json(const BenchmarkReport& report);

}  // namespace ragmark
