#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "ragmark/config.hpp"
#include "ragmark/judge.hpp"
#include "ragmark/model.hpp"

namespace ragmark {

/// Fraction of context documents the backend judges relevant to the
/// question. Empty context scores 0: nothing useful was retrieved.
PropertyScore retrieval_relevance(const Interaction& interaction, Judge& judge);

/// Question decomposition for completeness: parts split on '?' and on
/// coordinating conjunctions directly followed by an interrogative lead
/// ("who wrote X and when..."). A question that cannot be split is one
/// part.
std::vector<std::string> split_question_parts(std::string_view question);

/// Fraction of question parts the backend judges addressed by the answer.
PropertyScore completeness(const Interaction& interaction, Judge& judge);

/// Pattern scan for PII shapes (email, phone, national id) and toxic
/// terms in the answer, and jailbreak markers in question and answer.
/// Value is 1 with no findings, otherwise 1 - max finding severity.
/// Pure; matching is case-insensitive.
PropertyScore safety_scan(const Interaction& interaction, const SafetyConfig& config);

/// Fraction of statements in expected_output entailed by the answer.
/// Callers skip this property when expected_output is absent.
PropertyScore expected_output_similarity(const Interaction& interaction, Judge& judge);

/// 1 when the answer is a refusal (matches an avoidance pattern and
/// asserts nothing) or is empty, else 0. Higher means more avoidance.
PropertyScore answer_avoidance(const Interaction& interaction, const SafetyConfig& config);

}  // namespace ragmark
