#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "ragmark/config.hpp"
#include "ragmark/judge.hpp"
#include "ragmark/model.hpp"
#include "ragmark/segmentation.hpp"

namespace ragmark {

/// Everything recorded about one statement: the evidence passages that
/// were retrieved for it (most similar first, with their similarities),
/// the judge's verdict, and the score that entered the aggregate (0 when
/// contradicted).
struct StatementEvidence {
    Statement statement;
    std::vector<Passage> passages;
    std::vector<double> similarities;  // parallel to passages, descending
    JudgeVerdict verdict;
    double score = 0.0;
};

struct GroundedResult {
    double value = 1.0;
    std::vector<StatementEvidence> statements;
};

struct RankedPassage {
    std::size_t index = 0;  // into the passage list handed in
    double similarity = 0.0;
};

/// The top_k passages by cosine similarity to the statement, most
/// similar first. Ties prefer the earlier document, then the earlier
/// span within it.
std::vector<RankedPassage> retrieve_passages(std::string_view statement,
                                             const std::vector<Passage>& passages,
                                             std::size_t top_k);

/// Judges one statement against its evidence passages (joined into a
/// single premise). Empty evidence is Neutral with score 0 without
/// consulting the backend. The returned verdict is the judge's; the
/// aggregate contribution clamps Contradicted to 0.
JudgeVerdict score_statement(std::string_view statement, const std::vector<Passage>& evidence,
                             Judge& judge);

double statement_contribution(const JudgeVerdict& verdict);

/// alpha * min + (1 - alpha) * mean. An answer with no checkable
/// statements scores 1.0: nothing asserted, nothing hallucinated.
/// Throws std::invalid_argument on scores outside [0,1].
double aggregate_entailment(const std::vector<double>& scores, double alpha);

/// Full pipeline: extract statements, chunk the context, retrieve
/// evidence, judge each statement, aggregate.
GroundedResult grounded_in_context(const Interaction& interaction, Judge& judge,
                                   const GroundedConfig& config);

/// Flattens a result into the scored property, with one span finding per
/// statement the judge did not mark entailed.
PropertyScore grounded_property(const GroundedResult& result);

}  // namespace ragmark
