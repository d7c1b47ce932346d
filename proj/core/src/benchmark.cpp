#include "ragmark/benchmark.hpp"

#include <atomic>
#include <chrono>
#include <exception>
#include <mutex>
#include <thread>

#include <nlohmann/json.hpp>

#include "ragmark/errors.hpp"
#include "ragmark/evaluator.hpp"
#include "ragmark/grounded.hpp"
#include "ragmark/judge.hpp"
#include "ragmark/metrics.hpp"

namespace ragmark {
namespace {

std::vector<bool> labels_of(const BenchmarkDataset& dataset) {
    std::vector<bool> labels;
    labels.reserve(dataset.interactions.size());
    for (const auto& interaction : dataset.interactions) {
        if (!interaction.label) {
            throw MetricError("benchmark sample " + interaction.id + " is unlabeled");
        }
        labels.push_back(*interaction.label == Label::Positive);
    }
    return labels;
}

template <typename Fn>
void parallel_for(std::size_t count, int jobs, Fn&& fn) {
    const std::size_t workers =
        jobs > 1 ? std::min<std::size_t>(static_cast<std::size_t>(jobs), count) : 1;
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto work = [&] {
        while (!failed.load(std::memory_order_relaxed)) {
            const std::size_t i = next.fetch_add(1);
            if (i >= count) return;
            try {
                fn(i);
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
}

double grounded_value(const EvaluationRecord& record) {
    const PropertyScore* score = record.find_score(props::kGroundedInContext);
    return score ? score->value : 0.0;
}

}  // namespace

BenchmarkReport run_grounded_benchmark(const BenchmarkDataset& dataset, const EvalConfig& config,
                                       int jobs) {
    const auto started = std::chrono::steady_clock::now();
    const std::vector<bool> labels = labels_of(dataset);

    BenchmarkReport report;
    report.dataset = dataset.name;
    report.protocol = "grounded";
    report.config_fingerprint = config_fingerprint(config);

    const std::unique_ptr<Judge> judge = make_judge(config.judge);
    std::vector<double> scores(dataset.interactions.size());
    parallel_for(dataset.interactions.size(), jobs, [&](std::size_t i) {
        scores[i] = grounded_in_context(dataset.interactions[i], *judge, config.grounded).value;
    });

    report.samples.reserve(scores.size());
    for (std::size_t i = 0; i < scores.size(); ++i) {
        report.samples.push_back(
            {dataset.interactions[i].id, *dataset.interactions[i].label, scores[i], std::nullopt});
    }
    report.metrics["roc_auc"] = roc_auc(scores, labels);
    report.duration_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    return report;
}

BenchmarkReport run_e2e_benchmark(const BenchmarkDataset& dataset, const EvalConfig& config,
                                  int jobs) {
    const auto started = std::chrono::steady_clock::now();
    const std::vector<bool> labels = labels_of(dataset);

    BenchmarkReport report;
    report.dataset = dataset.name;
    report.protocol = "e2e";
    report.config_fingerprint = config_fingerprint(config);

    const std::vector<EvaluationRecord> records =
        evaluate_dataset(dataset.interactions, config, jobs);
    std::vector<bool> predictions;
    predictions.reserve(records.size());
    for (std::size_t i = 0; i < records.size(); ++i) {
        predictions.push_back(records[i].verdict.label == VerdictLabel::Positive);
        report.samples.push_back({records[i].id, *dataset.interactions[i].label,
                                  grounded_value(records[i]), records[i].verdict.label});
    }
    report.metrics["accuracy"] = accuracy(predictions, labels);
    report.duration_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    return report;
}

std::string report_to_json(const BenchmarkReport& report) {
    nlohmann::ordered_json doc;
    doc["dataset"] = report.dataset;
    doc["protocol"] = report.protocol;
    doc["config_fingerprint"] = report.config_fingerprint;
    nlohmann::ordered_json metrics = nlohmann::ordered_json::object();
    for (const auto& [name, value] : report.metrics) metrics[name] = value;
    doc["metrics"] = std::move(metrics);
    nlohmann::ordered_json samples = nlohmann::ordered_json::array();
    for (const auto& sample : report.samples) {
        nlohmann::ordered_json s;
        s["id"] = sample.id;
        s["label"] = to_string(sample.label);
        s["score"] = sample.score;
        if (sample.verdict) s["verdict"] = to_string(*sample.verdict);
        samples.push_back(std::move(s));
    }
    doc["samples"] = std::move(samples);
    return doc.dump(2) + "\n";
}

}  // namespace ragmark
