#pragma once

#include <vector>

#include "ragmark/config.hpp"
#include "ragmark/judge.hpp"
#include "ragmark/model.hpp"

namespace ragmark {

/// Scores every property for one interaction and classifies the verdict.
/// expected_output_similarity is skipped (and listed in the record's
/// skipped set) when the interaction carries no expected output.
EvaluationRecord evaluate_interaction(const Interaction& interaction, Judge& judge,
                                      const EvalConfig& config);

/// Evaluates a dataset with the configured backend, optionally across
/// `jobs` worker threads. Output order always matches input order.
std::vector<EvaluationRecord> evaluate_dataset(const std::vector<Interaction>& interactions,
                                               const EvalConfig& config, int jobs = 1);
std::vector<EvaluationRecord> evaluate_dataset(const std::vector<Interaction>& interactions,
                                               Judge& judge, const EvalConfig& config,
                                               int jobs = 1);

}  // namespace ragmark
