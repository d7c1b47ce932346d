#include "ragmark/grounded.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "ragmark/tokenize.hpp"

namespace ragmark {

std::vector<RankedPassage> retrieve_passages(std::string_view statement,
                                             const std::vector<Passage>& passages,
                                             std::size_t top_k) {
    const TermVector query = term_vector(statement);
    std::vector<double> similarity(passages.size());
    for (std::size_t i = 0; i < passages.size(); ++i) {
        similarity[i] = cosine(query, term_vector(passages[i].text));
    }

    std::vector<std::size_t> order(passages.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (similarity[a] != similarity[b]) return similarity[a] > similarity[b];
        if (passages[a].doc_rank != passages[b].doc_rank) {
            return passages[a].doc_rank < passages[b].doc_rank;
        }
        return passages[a].start < passages[b].start;
    });
    if (order.size() > top_k) order.resize(top_k);

    std::vector<RankedPassage> ranked;
    ranked.reserve(order.size());
    for (std::size_t idx : order) ranked.push_back({idx, similarity[idx]});
    return ranked;
}

JudgeVerdict score_statement(std::string_view statement, const std::vector<Passage>& evidence,
                             Judge& judge) {
    if (evidence.empty()) return {JudgeLabel::Neutral, 0.0, "no evidence passages"};
    JudgeTask task;
    task.kind = JudgeKind::Entailment;
    task.hypothesis = std::string(statement);
    for (std::size_t i = 0; i < evidence.size(); ++i) {
        if (i > 0) task.premise += '\n';
        task.premise += evidence[i].text;
    }
    return judge.judge(task);
}

double statement_contribution(const JudgeVerdict& verdict) {
    if (verdict.label == JudgeLabel::Contradicted) return 0.0;
    return std::clamp(verdict.score, 0.0, 1.0);
}

double aggregate_entailment(const std::vector<double>& scores, double alpha) {
    if (alpha < 0.0 || alpha > 1.0) throw std::invalid_argument("alpha must lie in [0,1]");
    if (scores.empty()) return 1.0;
    double minimum = scores.front();
    double sum = 0.0;
    for (double s : scores) {
        if (s < 0.0 || s > 1.0) throw std::invalid_argument("statement scores must lie in [0,1]");
        minimum = std::min(minimum, s);
        sum += s;
    }
    const double mean = sum / static_cast<double>(scores.size());
    return alpha * minimum + (1.0 - alpha) * mean;
}

GroundedResult grounded_in_context(const Interaction& interaction, Judge& judge,
                                   const GroundedConfig& config) {
    GroundedResult result;
    const std::vector<Statement> statements = extract_statements(interaction.answer);
    if (statements.empty()) {
        result.value = 1.0;
        return result;
    }

    const std::vector<Passage> passages =
        chunk_context(interaction.context, config.window_size, config.stride);

    std::vector<double> contributions;
    contributions.reserve(statements.size());
    for (const auto& statement : statements) {
        StatementEvidence evidence;
        evidence.statement = statement;
        for (const RankedPassage& ranked :
             retrieve_passages(statement.text, passages, static_cast<std::size_t>(config.top_k))) {
            evidence.passages.push_back(passages[ranked.index]);
            evidence.similarities.push_back(ranked.similarity);
        }
        evidence.verdict = score_statement(statement.text, evidence.passages, judge);
        evidence.score = statement_contribution(evidence.verdict);
        contributions.push_back(evidence.score);
        result.statements.push_back(std::move(evidence));
    }
    result.value = aggregate_entailment(contributions, config.alpha);
    return result;
}

PropertyScore grounded_property(const GroundedResult& result) {
    PropertyScore score;
    score.property_id = std::string(props::kGroundedInContext);
    score.value = result.value;
    if (result.statements.empty()) {
        score.explanation = "no checkable statements";
        return score;
    }

    std::size_t entailed = 0;
    std::size_t contradicted = 0;
    for (const auto& evidence : result.statements) {
        switch (evidence.verdict.label) {
            case JudgeLabel::Entailed: ++entailed; break;
            case JudgeLabel::Contradicted: ++contradicted; break;
            default: break;
        }
        if (evidence.verdict.label != JudgeLabel::Entailed) {
            SpanFinding finding;
            finding.start = evidence.statement.start;
            finding.end = evidence.statement.end;
            finding.finding =
                std::string(to_string(evidence.verdict.label)) + ": " + evidence.verdict.rationale;
            score.details.push_back(std::move(finding));
        }
    }
    const std::size_t neutral = result.statements.size() - entailed - contradicted;
    score.explanation = std::to_string(result.statements.size()) + " statements: " +
                        std::to_string(entailed) + " entailed, " + std::to_string(contradicted) +
                        " contradicted, " + std::to_string(neutral) + " neutral";
    return score;
}

}  // namespace ragmark
