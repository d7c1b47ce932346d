#include "ragmark/judge.hpp"

#include <algorithm>
#include <chrono>
#include <condition_variable>
#include <mutex>
#include <set>
#include <thread>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "ragmark/errors.hpp"
#include "ragmark/tokenize.hpp"

namespace ragmark {
namespace {

using json = nlohmann::json;

std::set<std::string, std::less<>> content_set(std::string_view text) {
    std::set<std::string, std::less<>> out;
    for (auto& token : content_tokens(text)) out.insert(std::move(token.lower));
    return out;
}

std::size_t shared_content(const Clause& a, const std::set<std::string, std::less<>>& b) {
    std::set<std::string_view> seen;
    std::size_t shared = 0;
    for (const auto& token : a.tokens) {
        if (!is_content_token(token)) continue;
        if (b.count(token.lower) && seen.insert(token.lower).second) ++shared;
    }
    return shared;
}

}  // namespace

std::string_view to_string(JudgeKind kind) {
    switch (kind) {
        case JudgeKind::Entailment: return "entailment";
        case JudgeKind::Relevance: return "relevance";
        case JudgeKind::CompletenessPart: return "completeness_part";
        case JudgeKind::Safety: return "safety";
        case JudgeKind::Avoidance: break;
    }
    return "avoidance";
}

JudgeKind judge_kind_from_string(std::string_view text) {
    if (text == "entailment") return JudgeKind::Entailment;
    if (text == "relevance") return JudgeKind::Relevance;
    if (text == "completeness_part") return JudgeKind::CompletenessPart;
    if (text == "safety") return JudgeKind::Safety;
    if (text == "avoidance") return JudgeKind::Avoidance;
    throw ParseError("unknown judge task kind \"" + std::string(text) + "\"");
}

std::string_view to_string(JudgeLabel label) {
    switch (label) {
        case JudgeLabel::Entailed: return "entailed";
        case JudgeLabel::Contradicted: return "contradicted";
        case JudgeLabel::Neutral: return "neutral";
        case JudgeLabel::Yes: return "yes";
        case JudgeLabel::No: break;
    }
    return "no";
}

JudgeVerdict lexical_entailment(std::string_view premise, std::string_view hypothesis) {
    auto premise_tokens = content_set(premise);
    auto hypothesis_tokens = content_set(hypothesis);

    if (hypothesis_tokens.empty()) {
        return {JudgeLabel::Neutral, 0.0, "hypothesis has no content tokens"};
    }

    std::size_t covered = 0;
    for (const auto& token : hypothesis_tokens) {
        if (premise_tokens.count(token)) ++covered;
    }
    double score = static_cast<double>(covered) / static_cast<double>(hypothesis_tokens.size());

    // Polarity check: each hypothesis clause against the premise clause
    // sharing the most content tokens.
    auto premise_clauses = split_clauses(premise);
    for (const auto& clause : split_clauses(hypothesis)) {
        std::set<std::string, std::less<>> clause_tokens;
        for (const auto& token : clause.tokens) {
            if (is_content_token(token)) clause_tokens.insert(token.lower);
        }
        if (clause_tokens.empty()) continue;
        const Clause* best = nullptr;
        std::size_t best_shared = 0;
        for (const auto& candidate : premise_clauses) {
            std::size_t shared = shared_content(candidate, clause_tokens);
            if (shared > best_shared) {
                best_shared = shared;
                best = &candidate;
            }
        }
        if (best && best->negated != clause.negated) {
            return {JudgeLabel::Contradicted, 0.0,
                    "negation polarity mismatch on a supported clause"};
        }
    }

    if (score >= 0.5) {
        return {JudgeLabel::Entailed, score, "content coverage " + std::to_string(score)};
    }
    return {JudgeLabel::Neutral, score, "content coverage " + std::to_string(score)};
}

JudgeVerdict LexicalJudge::judge(const JudgeTask& task) {
    switch (task.kind) {
        case JudgeKind::Entailment:
            return lexical_entailment(task.premise, task.hypothesis);
        case JudgeKind::Relevance: {
            // premise = document text, hypothesis = question
            double similarity = cosine(task.premise, task.hypothesis);
            bool relevant = similarity >= 0.1;
            return {relevant ? JudgeLabel::Yes : JudgeLabel::No, similarity,
                    "cosine similarity " + std::to_string(similarity)};
        }
        case JudgeKind::CompletenessPart: {
            // premise = answer, hypothesis = question part
            auto part_tokens = content_set(task.hypothesis);
            if (part_tokens.empty()) return {JudgeLabel::No, 0.0, "part has no content tokens"};
            auto answer_tokens = content_set(task.premise);
            std::size_t covered = 0;
            for (const auto& token : part_tokens) {
                if (answer_tokens.count(token)) ++covered;
            }
            double coverage =
                static_cast<double>(covered) / static_cast<double>(part_tokens.size());
            return {coverage >= 0.5 ? JudgeLabel::Yes : JudgeLabel::No, coverage,
                    "content coverage " + std::to_string(coverage)};
        }
        case JudgeKind::Safety:
        case JudgeKind::Avoidance:
            break;
    }
    throw BackendError("lexical judge does not implement task kind \"" +
                       std::string(to_string(task.kind)) + "\"");
}

JudgeVerdict parse_judge_response(std::string_view body) {
    json doc;
    try {
        doc = json::parse(body);
    } catch (const json::exception& e) {
        throw ParseError(std::string("judge response is not valid JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("label") || !doc.contains("score")) {
        throw ParseError("judge response must be an object with \"label\" and \"score\"");
    }
    if (!doc["label"].is_string() || !doc["score"].is_number()) {
        throw ParseError("judge response fields have wrong types");
    }
    std::string label = doc["label"].get<std::string>();
    std::transform(label.begin(), label.end(), label.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });

    JudgeVerdict verdict;
    if (label == "entailed") {
        verdict.label = JudgeLabel::Entailed;
    } else if (label == "contradicted") {
        verdict.label = JudgeLabel::Contradicted;
    } else if (label == "neutral") {
        verdict.label = JudgeLabel::Neutral;
    } else if (label == "yes") {
        verdict.label = JudgeLabel::Yes;
    } else if (label == "no") {
        verdict.label = JudgeLabel::No;
    } else {
        throw ParseError("unknown judge label \"" + label + "\"");
    }
    verdict.score = doc["score"].get<double>();
    if (!(verdict.score >= 0.0 && verdict.score <= 1.0)) {
        throw ParseError("judge score " + std::to_string(verdict.score) + " outside [0,1]");
    }
    if (doc.contains("rationale")) {
        if (!doc["rationale"].is_string()) throw ParseError("judge rationale must be a string");
        verdict.rationale = doc["rationale"].get<std::string>();
    }
    return verdict;
}

// Bounds in-flight requests per endpoint; callers block until a slot
// frees. (std::counting_semaphore wants a compile-time max, so hand-rolled.)
class Gate {
public:
    explicit Gate(int limit) : limit_(limit > 0 ? limit : 1) {}

    void acquire() {
        std::unique_lock lock(mutex_);
        cv_.wait(lock, [&] { return in_flight_ < limit_; });
        ++in_flight_;
    }
    void release() {
        {
            std::lock_guard lock(mutex_);
            --in_flight_;
        }
        cv_.notify_one();
    }

private:
    std::mutex mutex_;
    std::condition_variable cv_;
    int limit_;
    int in_flight_ = 0;
};

struct RemoteJudge::Impl {
    JudgeConfig config;
    Gate gate;

    explicit Impl(JudgeConfig c) : config(std::move(c)), gate(config.concurrency) {}
};

RemoteJudge::RemoteJudge(JudgeConfig config) : impl_(std::make_unique<Impl>(std::move(config))) {
    if (impl_->config.endpoint.empty()) {
        throw ConfigError("remote judge requires a non-empty endpoint");
    }
}

RemoteJudge::~RemoteJudge() = default;

JudgeVerdict RemoteJudge::judge(const JudgeTask& task) {
    const auto& config = impl_->config;
    json request = {{"kind", to_string(task.kind)},
                    {"premise", task.premise},
                    {"hypothesis", task.hypothesis}};
    const std::string body = request.dump();

    impl_->gate.acquire();
    struct Release {
        Gate& gate;
        ~Release() { gate.release(); }
    } release{impl_->gate};

    std::string last_failure = "no attempt made";
    int backoff_ms = config.backoff_ms;
    for (int attempt = 0; attempt <= config.retries; ++attempt) {
        if (attempt > 0) {
            std::this_thread::sleep_for(std::chrono::milliseconds(backoff_ms));
            backoff_ms *= 2;
        }
        httplib::Client client(config.endpoint);
        client.set_connection_timeout(0, config.timeout_ms * 1000LL);
        client.set_read_timeout(0, config.timeout_ms * 1000LL);
        client.set_write_timeout(0, config.timeout_ms * 1000LL);

        auto result = client.Post("/judge", body, "application/json");
        if (!result) {
            auto err = result.error();
            last_failure = err == httplib::Error::ConnectionTimeout ||
                                   err == httplib::Error::Read || err == httplib::Error::Write
                               ? "timeout"
                               : "transport error: " + httplib::to_string(err);
            continue;
        }
        if (result->status < 200 || result->status >= 300) {
            last_failure = "HTTP status " + std::to_string(result->status);
            continue;
        }
        // A malformed 2xx body is a protocol bug, not a transient fault:
        // fail immediately and distinctly instead of retrying.
        try {
            return parse_judge_response(result->body);
        } catch (const ParseError& e) {
            throw BackendError(std::string("malformed judge response: ") + e.what());
        }
    }
    throw BackendError("judge backend unavailable after " + std::to_string(config.retries + 1) +
                       " attempts (" + last_failure + ") at " + config.endpoint);
}

std::unique_ptr<Judge> make_judge(const JudgeConfig& config) {
    if (config.backend == JudgeBackendKind::Remote) return std::make_unique<RemoteJudge>(config);
    return std::make_unique<LexicalJudge>();
}

}  // namespace ragmark
