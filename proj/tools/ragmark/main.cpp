#include <atomic>
#include <chrono>
#include <csignal>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "ragmark/analysis.hpp"
#include "ragmark/benchmark.hpp"
#include "ragmark/config.hpp"
#include "ragmark/corruption.hpp"
#include "ragmark/dataset.hpp"
#include "ragmark/errors.hpp"
#include "ragmark/evaluator.hpp"
#include "ragmark/monitor.hpp"
#include "ragmark/report.hpp"
#include "ragmark/verdict.hpp"
#include "ragmark/version.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitGate = 1;
constexpr int kExitUsage = 2;
constexpr int kExitBackend = 3;

std::atomic<bool> g_shutdown{false};

void on_signal(int) { g_shutdown.store(true); }

ragmark::EvalConfig load_eval_config(const std::string& path) {
    ragmark::EvalConfig config;
    if (!path.empty()) config = ragmark::load_config(path);
    if (const char* url = std::getenv("RAGMARK_JUDGE_URL"); url && *url) {
        config.judge.backend = ragmark::JudgeBackendKind::Remote;
        config.judge.endpoint = url;
    }
    return config;
}

void write_text(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw ragmark::Error("cannot write " + path);
    out << content;
}

ragmark::BenchmarkDataset dataset_from_labeled(const std::string& path) {
    ragmark::BenchmarkDataset dataset;
    dataset.name = path;
    dataset.interactions = ragmark::load_dataset(path, /*expect_labels=*/true);
    for (const auto& interaction : dataset.interactions) {
        (*interaction.label == ragmark::Label::Positive ? dataset.positives : dataset.negatives)++;
    }
    return dataset;
}

struct EvaluateArgs {
    std::string input, config, output, report;
    double fail_under = 0.0;
    bool has_fail_under = false;
    int jobs = 1;
};

int run_evaluate(const EvaluateArgs& args) {
    const ragmark::EvalConfig config = load_eval_config(args.config);
    const std::vector<ragmark::Interaction> interactions = ragmark::load_dataset(args.input);
    const std::vector<ragmark::EvaluationRecord> records =
        ragmark::evaluate_dataset(interactions, config, args.jobs);
    ragmark::save_records(args.output, records);
    if (!args.report.empty()) {
        write_text(args.report, ragmark::render_records_report_html(records, config.thresholds));
    }
    if (args.has_fail_under && !records.empty()) {
        double sum = 0.0;
        for (const auto& record : records) {
            const ragmark::PropertyScore* score =
                record.find_score(ragmark::props::kGroundedInContext);
            sum += score ? score->value : 0.0;
        }
        const double mean = sum / static_cast<double>(records.size());
        if (mean < args.fail_under) {
            std::fprintf(stderr, "mean grounded_in_context %.6f below --fail-under %.6f\n", mean,
                         args.fail_under);
            return kExitGate;
        }
    }
    return kExitOk;
}

struct BenchmarkArgs {
    std::string dataset, config, protocol = "grounded", output, report;
    int jobs = 1;
};

int run_benchmark(const BenchmarkArgs& args) {
    const ragmark::EvalConfig config = load_eval_config(args.config);
    const ragmark::BenchmarkDataset dataset = dataset_from_labeled(args.dataset);
    const ragmark::BenchmarkReport report =
        args.protocol == "grounded" ? ragmark::run_grounded_benchmark(dataset, config, args.jobs)
                                    : ragmark::run_e2e_benchmark(dataset, config, args.jobs);
    write_text(args.output, ragmark::report_to_json(report));
    if (!args.report.empty()) {
        write_text(args.report, ragmark::render_benchmark_report_html(report));
    }
    for (const auto& [metric, value] : report.metrics) {
        std::fprintf(stderr, "%s %.6f (%zu samples, %.2fs)\n", metric.c_str(), value,
                     report.samples.size(), report.duration_seconds);
    }
    return kExitOk;
}

struct CorruptArgs {
    std::string input, mix, output, name = "corrupted";
    std::uint64_t seed = 0;
};

int run_corrupt(const CorruptArgs& args) {
    const std::vector<ragmark::Interaction> clean = ragmark::load_dataset(args.input);
    const ragmark::RecipeMix mix = ragmark::parse_recipe_mix(args.mix);
    const ragmark::BenchmarkDataset dataset =
        ragmark::build_benchmark(clean, mix, args.seed, args.name);
    std::string lines;
    for (const auto& interaction : dataset.interactions) {
        lines += ragmark::interaction_to_json(interaction) + "\n";
    }
    write_text(args.output, lines);
    std::fprintf(stderr, "%zu positives, %zu negatives\n", dataset.positives, dataset.negatives);
    return kExitOk;
}

struct CalibrateArgs {
    std::string labeled, config, output;
    double grid = 0.05;
    int jobs = 1;
};

int run_calibrate(const CalibrateArgs& args) {
    ragmark::EvalConfig config = load_eval_config(args.config);
    const std::vector<ragmark::Interaction> interactions =
        ragmark::load_dataset(args.labeled, /*expect_labels=*/true);
    const std::vector<ragmark::EvaluationRecord> records =
        ragmark::evaluate_dataset(interactions, config, args.jobs);

    std::vector<ragmark::CalibrationSample> samples;
    samples.reserve(records.size());
    for (std::size_t i = 0; i < records.size(); ++i) {
        ragmark::CalibrationSample sample;
        for (const auto& score : records[i].scores) {
            sample.scores[score.property_id] = score.value;
        }
        sample.label = *interactions[i].label;
        samples.push_back(std::move(sample));
    }

    const ragmark::CalibrationResult result =
        ragmark::calibrate_thresholds(samples, args.grid, config.thresholds);
    if (!result.warning.empty()) std::fprintf(stderr, "warning: %s\n", result.warning.c_str());
    std::fprintf(stderr, "calibration accuracy %.6f\n", result.accuracy);
    config.thresholds = result.thresholds;
    write_text(args.output, ragmark::config_to_json_text(config));
    return kExitOk;
}

struct CompareArgs {
    std::string a, b, output;
};

int run_compare(const CompareArgs& args) {
    const auto records_a = ragmark::load_records(args.a);
    const auto records_b = ragmark::load_records(args.b);
    const ragmark::ComparisonReport report = ragmark::compare_versions(records_a, records_b);
    write_text(args.output, ragmark::comparison_to_json(report));
    if (report.low_overlap) std::fprintf(stderr, "warning: %s\n", report.warning.c_str());
    return kExitOk;
}

struct ServeArgs {
    std::string store, config;
    int port = 8080;
    int workers = 2;
    std::int64_t window = 86400;
    double z_threshold = 3.0;
    std::size_t min_n = 30;
};

int run_serve(const ServeArgs& args) {
    ragmark::MonitorConfig monitor;
    monitor.window_seconds = args.window;
    monitor.z_threshold = args.z_threshold;
    monitor.min_n = args.min_n;
    monitor.workers = args.workers;

    ragmark::MonitorService service(args.store, load_eval_config(args.config), monitor);
    const int port = service.start(args.port);
    std::printf("listening on 127.0.0.1:%d\n", port);
    std::fflush(stdout);

    std::signal(SIGINT, on_signal);
    std::signal(SIGTERM, on_signal);
    while (!g_shutdown.load()) {
        std::this_thread::sleep_for(std::chrono::milliseconds(50));
    }
    service.stop();
    return kExitOk;
}

struct ReportArgs {
    std::string from, config, output, format = "html";
};

int run_report(const ReportArgs& args) {
    const ragmark::EvalConfig config = load_eval_config(args.config);
    const auto records = ragmark::load_records(args.from);
    const std::string content =
        args.format == "html" ? ragmark::render_records_report_html(records, config.thresholds)
                              : ragmark::records_report_json(records, config.thresholds);
    write_text(args.output, content);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Reference-free RAG evaluation toolkit"};
    app.set_version_flag("--version", ragmark::kEngineVersion);
    app.require_subcommand(1);

    EvaluateArgs evaluate_args;
    auto* evaluate = app.add_subcommand("evaluate", "Score a dataset and write evaluation records");
    evaluate->add_option("--input", evaluate_args.input, "Interactions JSONL")
        ->required()
        ->check(CLI::ExistingFile);
    evaluate->add_option("--config", evaluate_args.config, "Config JSON")->check(CLI::ExistingFile);
    evaluate->add_option("--output", evaluate_args.output, "Records JSONL to write")->required();
    evaluate->add_option("--report", evaluate_args.report, "Also write an HTML report here");
    auto* fail_under = evaluate->add_option("--fail-under", evaluate_args.fail_under,
                                            "Exit 1 when mean grounded score falls below this");
    evaluate->add_option("--jobs", evaluate_args.jobs, "Worker threads")
        ->check(CLI::PositiveNumber);

    BenchmarkArgs benchmark_args;
    auto* benchmark = app.add_subcommand("benchmark", "Score a labeled dataset against a protocol");
    benchmark->add_option("--dataset", benchmark_args.dataset, "Labeled interactions JSONL")
        ->required()
        ->check(CLI::ExistingFile);
    benchmark->add_option("--protocol", benchmark_args.protocol, "grounded or e2e")
        ->check(CLI::IsMember({"grounded", "e2e"}));
    benchmark->add_option("--config", benchmark_args.config, "Config JSON")
        ->check(CLI::ExistingFile);
    benchmark->add_option("--output", benchmark_args.output, "Report JSON (default stdout)");
    benchmark->add_option("--report", benchmark_args.report, "Also write an HTML report here");
    benchmark->add_option("--jobs", benchmark_args.jobs, "Worker threads")
        ->check(CLI::PositiveNumber);

    CorruptArgs corrupt_args;
    auto* corrupt = app.add_subcommand("corrupt", "Manufacture a labeled benchmark from clean samples");
    corrupt->add_option("--input", corrupt_args.input, "Clean interactions JSONL")
        ->required()
        ->check(CLI::ExistingFile);
    corrupt->add_option("--mix", corrupt_args.mix,
                        "Recipe counts, e.g. contradiction=31,hallucination=31");
    corrupt->add_option("--seed", corrupt_args.seed, "Corruption seed");
    corrupt->add_option("--output", corrupt_args.output, "Output JSONL (default stdout)");
    corrupt->add_option("--name", corrupt_args.name, "Dataset name");

    CalibrateArgs calibrate_args;
    auto* calibrate = app.add_subcommand("calibrate", "Fit verdict thresholds on labeled data");
    calibrate->add_option("--labeled", calibrate_args.labeled, "Labeled interactions JSONL")
        ->required()
        ->check(CLI::ExistingFile);
    calibrate->add_option("--grid", calibrate_args.grid, "Grid step in (0, 0.5]");
    calibrate->add_option("--config", calibrate_args.config, "Base config JSON")
        ->check(CLI::ExistingFile);
    calibrate->add_option("--output", calibrate_args.output,
                          "Where to write the updated config (default stdout)");
    calibrate->add_option("--jobs", calibrate_args.jobs, "Worker threads")
        ->check(CLI::PositiveNumber);

    CompareArgs compare_args;
    auto* compare = app.add_subcommand("compare", "Compare two evaluation record sets");
    compare->add_option("--a", compare_args.a, "Records JSONL of version A")
        ->required()
        ->check(CLI::ExistingFile);
    compare->add_option("--b", compare_args.b, "Records JSONL of version B")
        ->required()
        ->check(CLI::ExistingFile);
    compare->add_option("--output", compare_args.output, "Comparison JSON (default stdout)");

    ServeArgs serve_args;
    auto* serve = app.add_subcommand("serve", "Run the monitoring service");
    serve->add_option("--port", serve_args.port, "Port to bind (0 picks a free port)");
    serve->add_option("--store", serve_args.store, "Durable store directory")->required();
    serve->add_option("--config", serve_args.config, "Config JSON")->check(CLI::ExistingFile);
    serve->add_option("--workers", serve_args.workers, "Evaluation worker threads")
        ->check(CLI::PositiveNumber);
    serve->add_option("--window", serve_args.window, "Aggregation window in seconds")
        ->check(CLI::PositiveNumber);
    serve->add_option("--z-threshold", serve_args.z_threshold, "Drift alert z threshold");
    serve->add_option("--min-n", serve_args.min_n, "Minimum samples per window and baseline");

    ReportArgs report_args;
    auto* report = app.add_subcommand("report", "Render a report from evaluation records");
    report->add_option("--from", report_args.from, "Records JSONL")
        ->required()
        ->check(CLI::ExistingFile);
    report->add_option("--format", report_args.format, "html or json")
        ->check(CLI::IsMember({"html", "json"}));
    report->add_option("--config", report_args.config, "Config JSON")->check(CLI::ExistingFile);
    report->add_option("--output", report_args.output, "Output path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    evaluate_args.has_fail_under = fail_under->count() > 0;
    try {
        if (evaluate->parsed()) return run_evaluate(evaluate_args);
        if (benchmark->parsed()) return run_benchmark(benchmark_args);
        if (corrupt->parsed()) return run_corrupt(corrupt_args);
        if (calibrate->parsed()) return run_calibrate(calibrate_args);
        if (compare->parsed()) return run_compare(compare_args);
        if (serve->parsed()) return run_serve(serve_args);
        if (report->parsed()) return run_report(report_args);
    } catch (const ragmark::BackendError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitBackend;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    }
    return kExitUsage;
}
