#pragma once

#include <memory>
#include <string>
#include <string_view>

#include "ragmark/config.hpp"

namespace ragmark {

enum class JudgeKind { Entailment, Relevance, CompletenessPart, Safety, Avoidance };

std::string_view to_string(JudgeKind kind);
JudgeKind judge_kind_from_string(std::string_view text);

/// One scoring request. The kind selects the rule set (lexical backend)
/// or prompt template (remote backend) applied to the premise/hypothesis
/// pair.
struct JudgeTask {
    JudgeKind kind = JudgeKind::Entailment;
    std::string premise;
    std::string hypothesis;
};

/// Entailed/Contradicted/Neutral for entailment tasks, Yes/No otherwise.
enum class JudgeLabel { Entailed, Contradicted, Neutral, Yes, No };

std::string_view to_string(JudgeLabel label);

struct JudgeVerdict {
    JudgeLabel label = JudgeLabel::Neutral;
    double score = 0.0;
    std::string rationale;

    bool operator==(const JudgeVerdict&) const = default;
};

class Judge {
public:
    virtual ~Judge() = default;
    virtual JudgeVerdict judge(const JudgeTask& task) = 0;
    virtual std::string_view name() const = 0;
};

/// Deterministic lexical entailment: score is the fraction of the
/// hypothesis' content tokens found in the premise; a negation-polarity
/// mismatch on a supported clause forces Contradicted with score 0.
JudgeVerdict lexical_entailment(std::string_view premise, std::string_view hypothesis);

/// The offline stand-in backend. Pure and thread-safe.
class LexicalJudge final : public Judge {
public:
    JudgeVerdict judge(const JudgeTask& task) override;
    std::string_view name() const override { return "lexical"; }
};

/// Parses a judge response body. Labels are case-insensitive; scores must
/// lie in [0,1]. Throws ParseError on invalid JSON, unknown labels, or
/// out-of-range scores.
JudgeVerdict parse_judge_response(std::string_view body);

/// HTTP client for a remote judge service. POSTs to {endpoint}/judge and
/// retries idempotently with exponential backoff; a request that still
/// fails afterwards surfaces as BackendError, never as a fabricated
/// score. In-flight requests are capped by config.concurrency.
class RemoteJudge final : public Judge {
public:
    explicit RemoteJudge(JudgeConfig config);
    ~RemoteJudge() override;

    JudgeVerdict judge(const JudgeTask& task) override;
    std::string_view name() const override { return "remote"; }

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

/// Builds the backend selected by the config. RAGMARK_JUDGE_URL, when the
/// caller passes it through config.endpoint, selects the remote backend.
std::unique_ptr<Judge> make_judge(const JudgeConfig& config);

}  // namespace ragmark
