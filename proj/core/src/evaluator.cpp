#include "ragmark/evaluator.hpp"

#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

#include "ragmark/grounded.hpp"
#include "ragmark/properties.hpp"
#include "ragmark/tokenize.hpp"
#include "ragmark/verdict.hpp"
#include "ragmark/version.hpp"

namespace ragmark {

EvaluationRecord evaluate_interaction(const Interaction& interaction, Judge& judge,
                                      const EvalConfig& config) {
    EvaluationRecord record;
    record.id = interaction.id;
    record.question_hash = fnv1a_hex(normalize_text(interaction.question));
    record.timestamp = interaction.timestamp;
    record.version = interaction.version;
    record.engine_version = kEngineVersion;

    record.scores.push_back(retrieval_relevance(interaction, judge));
    record.scores.push_back(grounded_property(grounded_in_context(interaction, judge, config.grounded)));
    record.scores.push_back(completeness(interaction, judge));
    record.scores.push_back(safety_scan(interaction, config.safety));
    if (interaction.expected_output && !interaction.expected_output->empty()) {
        record.scores.push_back(expected_output_similarity(interaction, judge));
    } else {
        record.skipped.emplace_back(props::kExpectedOutputSimilarity);
    }
    record.scores.push_back(answer_avoidance(interaction, config.safety));

    record.verdict = classify_verdict(record.scores, config.thresholds);
    return record;
}

std::vector<EvaluationRecord> evaluate_dataset(const std::vector<Interaction>& interactions,
                                               Judge& judge, const EvalConfig& config, int jobs) {
    std::vector<EvaluationRecord> records(interactions.size());
    if (interactions.empty()) return records;

    const std::size_t workers = jobs > 1
        ? std::min<std::size_t>(static_cast<std::size_t>(jobs), interactions.size())
        : 1;
    if (workers == 1) {
        for (std::size_t i = 0; i < interactions.size(); ++i) {
            records[i] = evaluate_interaction(interactions[i], judge, config);
        }
        return records;
    }

    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex error_mutex;

    auto work = [&] {
        while (!failed.load(std::memory_order_relaxed)) {
            const std::size_t i = next.fetch_add(1);
            if (i >= interactions.size()) return;
            try {
                records[i] = evaluate_interaction(interactions[i], judge, config);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
                failed.store(true, std::memory_order_relaxed);
                return;
            }
        }
    };

    std::vector<std::thread> threads;
    threads.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) threads.emplace_back(work);
    for (auto& thread : threads) thread.join();
    if (error) std::rethrow_exception(error);
    return records;
}

std::vector<EvaluationRecord> evaluate_dataset(const std::vector<Interaction>& interactions,
                                               const EvalConfig& config, int jobs) {
    const std::unique_ptr<Judge> judge = make_judge(config.judge);
    return evaluate_dataset(interactions, *judge, config, jobs);
}

}  // namespace ragmark
