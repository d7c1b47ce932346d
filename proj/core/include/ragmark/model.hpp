#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ragmark {

/// One retrieved document inside an interaction. Ranks are 1-based and
/// assigned from ingestion order: rank i = position i.
struct ContextDocument {
    std::string doc_id;
    std::string text;
    int rank = 0;

    bool operator==(const ContextDocument&) const = default;
};

enum class Label { Positive, Negative };

std::string_view to_string(Label label);
Label label_from_string(std::string_view text);

/// One (question, retrieved-context, answer) triplet, the unit of
/// evaluation. Immutable after construction; safe to share across threads.
struct Interaction {
    std::string id;
    std::string question;
    std::vector<ContextDocument> context;
    std::string answer;
    std::optional<std::string> expected_output;
    std::optional<Label> label;
    std::optional<std::int64_t> timestamp;  // epoch seconds, UTC
    std::optional<std::string> version;
    std::map<std::string, std::string> metadata;

    bool operator==(const Interaction&) const = default;
};

/// Identifiers of the evaluated properties.
namespace props {
inline constexpr std::string_view kRetrievalRelevance = "retrieval_relevance";
inline constexpr std::string_view kGroundedInContext = "grounded_in_context";
inline constexpr std::string_view kCompleteness = "completeness";
inline constexpr std::string_view kSafety = "safety";
inline constexpr std::string_view kExpectedOutputSimilarity = "expected_output_similarity";
inline constexpr std::string_view kAnswerAvoidance = "answer_avoidance";
}  // namespace props

/// A span-level finding attached to a property score. Offsets are byte
/// positions into the UTF-8 source text named by `finding`.
struct SpanFinding {
    std::size_t start = 0;
    std::size_t end = 0;
    std::string finding;

    bool operator==(const SpanFinding&) const = default;
};

/// A named score in [0,1] with an explanation and span-level details.
struct PropertyScore {
    std::string property_id;
    double value = 0.0;
    std::string explanation;
    std::vector<SpanFinding> details;

    bool operator==(const PropertyScore&) const = default;
};

enum class VerdictLabel { Positive, Negative, Unknown };

std::string_view to_string(VerdictLabel label);
VerdictLabel verdict_label_from_string(std::string_view text);

/// One (property, score, rule) triple explaining a verdict.
struct VerdictReason {
    std::string property_id;
    double score = 0.0;
    std::string rule;

    bool operator==(const VerdictReason&) const = default;
};

struct Verdict {
    VerdictLabel label = VerdictLabel::Unknown;
    std::vector<VerdictReason> reasons;

    bool operator==(const Verdict&) const = default;
};

/// The evaluation output for one interaction: exactly one score per
/// enabled property, plus the end-to-end verdict.
///
/// `question_hash` is the FNV-1a 64 hash of the normalized question text,
/// used to match interactions across versions. `timestamp` and `version`
/// are carried over from the interaction so records are self-contained
/// for monitoring and comparison.
struct EvaluationRecord {
    std::string id;
    std::string question_hash;
    std::optional<std::int64_t> timestamp;
    std::optional<std::string> version;
    std::vector<PropertyScore> scores;
    Verdict verdict;
    std::vector<std::string> skipped;  // properties skipped (e.g. no reference answer)
    std::string engine_version;

    bool operator==(const EvaluationRecord&) const = default;

    const PropertyScore* find_score(std::string_view property_id) const;
};

}  // namespace ragmark
