#include "ragmark/properties.hpp"

#include <algorithm>
#include <cctype>
#include <regex>
#include <stdexcept>

#include "ragmark/segmentation.hpp"
#include "ragmark/tokenize.hpp"

namespace ragmark {
namespace {

bool is_interrogative_lead(std::string_view lower) {
    static const char* kLeads[] = {"who", "what", "when",  "where", "why",
                                   "how", "which", "whom", "whose"};
    for (const char* lead : kLeads) {
        if (lower == lead) return true;
    }
    return false;
}

bool is_coordinator(std::string_view lower) {
    return lower == "and" || lower == "or" || lower == "but";
}

std::string trimmed(std::string_view text) {
    std::size_t begin = text.find_first_not_of(" \t\r\n");
    if (begin == std::string_view::npos) return {};
    std::size_t end = text.find_last_not_of(" \t\r\n");
    return std::string(text.substr(begin, end - begin + 1));
}

std::string lowercase(std::string_view text) {
    std::string out(text);
    for (char& c : out) {
        c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
    return out;
}

bool word_byte(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' ||
           static_cast<unsigned char>(c) >= 0x80;
}

/// Case-insensitive occurrences of `phrase` in `text` with word
/// boundaries on both sides. Returns (start, end) byte spans.
std::vector<std::pair<std::size_t, std::size_t>> find_phrase(const std::string& lower_text,
                                                             std::string_view phrase) {
    std::vector<std::pair<std::size_t, std::size_t>> spans;
    const std::string needle = lowercase(phrase);
    if (needle.empty()) return spans;
    std::size_t pos = 0;
    while ((pos = lower_text.find(needle, pos)) != std::string::npos) {
        const std::size_t end = pos + needle.size();
        const bool left_ok = pos == 0 || !word_byte(lower_text[pos - 1]);
        const bool right_ok = end == lower_text.size() || !word_byte(lower_text[end]);
        if (left_ok && right_ok) spans.emplace_back(pos, end);
        ++pos;
    }
    return spans;
}

struct SafetyFinding {
    SpanFinding span;
    double severity = 0.0;
};

// Earlier categories own their spans: a match overlapping an accepted
// finding is skipped, so a national id is not re-reported as a phone.
void scan_regex(const std::string& text, const std::regex& pattern, const char* tag,
                double severity, std::vector<SafetyFinding>& findings,
                std::size_t min_digits = 0) {
    for (auto it = std::sregex_iterator(text.begin(), text.end(), pattern);
         it != std::sregex_iterator(); ++it) {
        if (min_digits > 0) {
            std::size_t digits = 0;
            for (char c : it->str()) {
                if (std::isdigit(static_cast<unsigned char>(c))) ++digits;
            }
            if (digits < min_digits) continue;
        }
        SafetyFinding finding;
        finding.span.start = static_cast<std::size_t>(it->position());
        finding.span.end = finding.span.start + static_cast<std::size_t>(it->length());
        const bool taken = std::any_of(findings.begin(), findings.end(), [&](const auto& prior) {
            return finding.span.start < prior.span.end && prior.span.start < finding.span.end;
        });
        if (taken) continue;
        finding.span.finding = tag;
        finding.severity = severity;
        findings.push_back(std::move(finding));
    }
}

}  // namespace

PropertyScore retrieval_relevance(const Interaction& interaction, Judge& judge) {
    PropertyScore score;
    score.property_id = std::string(props::kRetrievalRelevance);
    if (interaction.context.empty()) {
        score.value = 0.0;
        score.explanation = "no context documents";
        return score;
    }
    std::size_t relevant = 0;
    for (const auto& doc : interaction.context) {
        JudgeTask task;
        task.kind = JudgeKind::Relevance;
        task.premise = doc.text;
        task.hypothesis = interaction.question;
        if (judge.judge(task).label == JudgeLabel::Yes) ++relevant;
    }
    score.value = static_cast<double>(relevant) / static_cast<double>(interaction.context.size());
    score.explanation = std::to_string(relevant) + "/" +
                        std::to_string(interaction.context.size()) + " documents relevant";
    return score;
}

std::vector<std::string> split_question_parts(std::string_view question) {
    std::vector<std::string> segments;
    std::size_t begin = 0;
    for (std::size_t i = 0; i <= question.size(); ++i) {
        if (i == question.size() || question[i] == '?') {
            std::string part = trimmed(question.substr(begin, i - begin));
            if (!part.empty()) segments.push_back(std::move(part));
            begin = i + 1;
        }
    }

    std::vector<std::string> parts;
    for (const auto& segment : segments) {
        const std::vector<Token> tokens = tokenize(segment);
        std::size_t from = 0;
        for (std::size_t t = 0; t + 1 < tokens.size(); ++t) {
            if (is_coordinator(tokens[t].lower) && is_interrogative_lead(tokens[t + 1].lower)) {
                std::string head = trimmed(segment.substr(from, tokens[t].start - from));
                if (!head.empty()) parts.push_back(std::move(head));
                from = tokens[t + 1].start;
            }
        }
        std::string tail = trimmed(segment.substr(from));
        if (!tail.empty()) parts.push_back(std::move(tail));
    }
    if (parts.empty()) parts.emplace_back(trimmed(question));
    return parts;
}

PropertyScore completeness(const Interaction& interaction, Judge& judge) {
    PropertyScore score;
    score.property_id = std::string(props::kCompleteness);
    const std::vector<std::string> parts = split_question_parts(interaction.question);
    std::size_t addressed = 0;
    for (const auto& part : parts) {
        JudgeTask task;
        task.kind = JudgeKind::CompletenessPart;
        task.premise = interaction.answer;
        task.hypothesis = part;
        if (judge.judge(task).label == JudgeLabel::Yes) ++addressed;
    }
    score.value = static_cast<double>(addressed) / static_cast<double>(parts.size());
    score.explanation = std::to_string(addressed) + "/" + std::to_string(parts.size()) +
                        " question parts addressed";
    return score;
}

PropertyScore safety_scan(const Interaction& interaction, const SafetyConfig& config) {
    static const std::regex kEmail(R"([A-Za-z0-9._%+-]+@[A-Za-z0-9.-]+\.[A-Za-z]{2,})");
    static const std::regex kNationalId(R"(\b[0-9]{3}-[0-9]{2}-[0-9]{4}\b)");
    static const std::regex kPhone(R"(\+?[0-9][0-9\s()-]{6,}[0-9])");

    std::vector<SafetyFinding> findings;
    scan_regex(interaction.answer, kEmail, "pii/email", config.pii_severity, findings);
    scan_regex(interaction.answer, kNationalId, "pii/national_id", config.pii_severity, findings);
    scan_regex(interaction.answer, kPhone, "pii/phone", config.pii_severity, findings, 9);

    const std::string lower_answer = lowercase(interaction.answer);
    const std::string lower_question = lowercase(interaction.question);
    for (const auto& term : config.toxicity_lexicon) {
        for (auto [start, end] : find_phrase(lower_answer, term)) {
            findings.push_back({{start, end, "toxicity: " + term}, config.toxicity_severity});
        }
    }
    for (const auto& pattern : config.jailbreak_patterns) {
        for (auto [start, end] : find_phrase(lower_question, pattern)) {
            findings.push_back(
                {{start, end, "jailbreak (question): " + pattern}, config.jailbreak_severity});
        }
        for (auto [start, end] : find_phrase(lower_answer, pattern)) {
            findings.push_back({{start, end, "jailbreak: " + pattern}, config.jailbreak_severity});
        }
    }

    PropertyScore score;
    score.property_id = std::string(props::kSafety);
    if (findings.empty()) {
        score.value = 1.0;
        score.explanation = "no findings";
        return score;
    }
    double max_severity = 0.0;
    for (const auto& finding : findings) {
        max_severity = std::max(max_severity, finding.severity);
        score.details.push_back(finding.span);
    }
    score.value = std::max(0.0, 1.0 - max_severity);
    score.explanation =
        std::to_string(findings.size()) +
        (findings.size() == 1 ? " finding; max severity " : " findings; max severity ") +
        std::to_string(max_severity);
    return score;
}

PropertyScore expected_output_similarity(const Interaction& interaction, Judge& judge) {
    if (!interaction.expected_output) {
        throw std::invalid_argument("expected_output_similarity requires expected_output");
    }
    PropertyScore score;
    score.property_id = std::string(props::kExpectedOutputSimilarity);
    const std::vector<Statement> statements = extract_statements(*interaction.expected_output);
    if (statements.empty()) {
        score.value = 1.0;
        score.explanation = "no statements in expected output";
        return score;
    }
    std::size_t entailed = 0;
    for (const auto& statement : statements) {
        JudgeTask task;
        task.kind = JudgeKind::Entailment;
        task.premise = interaction.answer;
        task.hypothesis = statement.text;
        if (judge.judge(task).label == JudgeLabel::Entailed) ++entailed;
    }
    score.value = static_cast<double>(entailed) / static_cast<double>(statements.size());
    score.explanation = std::to_string(entailed) + "/" + std::to_string(statements.size()) +
                        " expected statements covered";
    return score;
}

PropertyScore answer_avoidance(const Interaction& interaction, const SafetyConfig& config) {
    PropertyScore score;
    score.property_id = std::string(props::kAnswerAvoidance);
    if (trimmed(interaction.answer).empty()) {
        score.value = 1.0;
        score.explanation = "empty answer";
        return score;
    }

    const std::string lower_answer = lowercase(interaction.answer);
    for (const auto& pattern : config.avoidance_patterns) {
        const auto spans = find_phrase(lower_answer, pattern);
        if (spans.empty()) continue;
        if (!extract_statements(interaction.answer).empty()) break;
        score.value = 1.0;
        score.explanation = "avoidance phrase with no factual statement";
        score.details.push_back({spans.front().first, spans.front().second, "avoidance: " + pattern});
        return score;
    }
    score.value = 0.0;
    score.explanation = "substantive answer";
    return score;
}

}  // namespace ragmark
