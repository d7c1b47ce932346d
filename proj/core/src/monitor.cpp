#include "ragmark/monitor.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <condition_variable>
#include <cstdio>
#include <deque>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <stdexcept>
#include <thread>
#include <unordered_set>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "ragmark/dataset.hpp"
#include "ragmark/errors.hpp"
#include "ragmark/evaluator.hpp"
#include "ragmark/judge.hpp"
#include "ragmark/timeutil.hpp"

namespace ragmark {
namespace {

using json = nlohmann::ordered_json;

std::int64_t align_window(std::int64_t timestamp, std::int64_t width) {
    std::int64_t quotient = timestamp / width;
    if (timestamp % width != 0 && timestamp < 0) --quotient;
    return quotient * width;
}

struct Moments {
    double sum = 0.0;
    double sumsq = 0.0;
    std::size_t count = 0;

    void add(double value) {
        sum += value;
        sumsq += value * value;
        ++count;
    }
    void add(const TimeSeriesPoint& point) {
        sum += point.mean * static_cast<double>(point.count);
        sumsq += static_cast<double>(point.count) *
                 (point.stddev * point.stddev + point.mean * point.mean);
        count += point.count;
    }
    double mean() const { return sum / static_cast<double>(count); }
    double stddev() const {
        const double m = mean();
        return std::sqrt(std::max(0.0, sumsq / static_cast<double>(count) - m * m));
    }
};

}  // namespace

SeriesAggregate window_aggregate(const std::vector<EvaluationRecord>& records, WindowSpec spec) {
    if (spec.width_seconds <= 0) throw std::invalid_argument("window width must be positive");
    SeriesAggregate out;
    std::map<std::pair<std::int64_t, std::string>, Moments> cells;
    for (const auto& record : records) {
        if (!record.timestamp) {
            ++out.skipped;
            continue;
        }
        const std::int64_t window = align_window(*record.timestamp, spec.width_seconds);
        for (const auto& score : record.scores) {
            cells[{window, score.property_id}].add(score.value);
        }
    }
    for (const auto& [key, moments] : cells) {
        TimeSeriesPoint point;
        point.window_start = key.first;
        point.property_id = key.second;
        point.mean = moments.mean();
        point.count = moments.count;
        point.stddev = moments.stddev();
        out.points.push_back(std::move(point));
    }
    return out;
}

std::vector<DriftAlert> detect_drift(const std::vector<TimeSeriesPoint>& series,
                                     std::int64_t baseline_start, std::int64_t baseline_end,
                                     double z_threshold, std::size_t min_n) {
    if (baseline_end <= baseline_start) throw std::invalid_argument("empty baseline range");

    std::map<std::string, std::pair<Moments, std::vector<const TimeSeriesPoint*>>> by_property;
    for (const auto& point : series) {
        auto& [baseline, candidates] = by_property[point.property_id];
        if (point.window_start >= baseline_start && point.window_start < baseline_end) {
            baseline.add(point);
        } else if (point.window_start >= baseline_end) {
            candidates.push_back(&point);
        }
    }

    std::vector<DriftAlert> alerts;
    for (auto& [property_id, entry] : by_property) {
        auto& [baseline, candidates] = entry;
        if (baseline.count < min_n) {
            throw MetricError("insufficient baseline for " + property_id + ": " +
                              std::to_string(baseline.count) + " < " + std::to_string(min_n));
        }
        const double baseline_mean = baseline.mean();
        const double baseline_std = baseline.stddev();
        std::sort(candidates.begin(), candidates.end(),
                  [](const TimeSeriesPoint* a, const TimeSeriesPoint* b) {
                      return a->window_start < b->window_start;
                  });
        for (const TimeSeriesPoint* window : candidates) {
            if (window->count < min_n) continue;
            const double diff = window->mean - baseline_mean;
            double z = 0.0;
            if (diff != 0.0) {
                z = baseline_std == 0.0
                        ? std::copysign(1e12, diff)
                        : diff / (baseline_std / std::sqrt(static_cast<double>(window->count)));
            }
            if (std::abs(z) >= z_threshold) {
                alerts.push_back({property_id, window->window_start, baseline_mean, window->mean,
                                  z, diff > 0.0 ? "up" : "down"});
            }
        }
    }
    return alerts;
}

std::string timeseries_to_json(const std::vector<TimeSeriesPoint>& points) {
    json arr = json::array();
    for (const auto& point : points) {
        json p = json::object();
        p["window_start"] = format_rfc3339(point.window_start);
        p["property_id"] = point.property_id;
        p["mean"] = point.mean;
        p["count"] = point.count;
        p["stddev"] = point.stddev;
        arr.push_back(std::move(p));
    }
    return arr.dump(2) + "\n";
}

std::string alerts_to_json(const std::vector<DriftAlert>& alerts) {
    json arr = json::array();
    for (const auto& alert : alerts) {
        json a = json::object();
        a["property_id"] = alert.property_id;
        a["window_start"] = format_rfc3339(alert.window_start);
        a["baseline_mean"] = alert.baseline_mean;
        a["window_mean"] = alert.window_mean;
        a["z"] = alert.z;
        a["direction"] = alert.direction;
        arr.push_back(std::move(a));
    }
    return arr.dump(2) + "\n";
}

namespace {

void write_all(int fd, const std::string& bytes, const std::string& path) {
    std::size_t written = 0;
    while (written < bytes.size()) {
        const ssize_t n = ::write(fd, bytes.data() + written, bytes.size() - written);
        if (n < 0) {
            if (errno == EINTR) continue;
            throw Error("write failed on " + path);
        }
        written += static_cast<std::size_t>(n);
    }
}

/// Calls per_line(line, line_no) for every complete line and returns the
/// byte length of that durable prefix. A torn final line (no trailing
/// newline) was never acknowledged and is skipped.
template <typename Fn>
std::size_t load_lenient(const std::string& path, Fn&& per_line) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return 0;
    std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    std::size_t begin = 0;
    std::size_t line_no = 0;
    while (begin < content.size()) {
        const std::size_t end = content.find('\n', begin);
        if (end == std::string::npos) break;
        const std::string line = content.substr(begin, end - begin);
        ++line_no;
        if (line.find_first_not_of(" \t\r") != std::string::npos) {
            per_line(line, line_no);
        }
        begin = end + 1;
    }
    return begin;
}

/// Truncates a torn tail so appends cannot splice into a partial record.
void drop_torn_tail(const std::string& path, std::size_t durable_bytes) {
    std::error_code ec;
    const auto size = std::filesystem::file_size(path, ec);
    if (ec || size <= durable_bytes) return;
    std::filesystem::resize_file(path, durable_bytes, ec);
    if (ec) throw Error("cannot truncate torn tail of " + path);
}

int open_append(const std::string& path) {
    const int fd = ::open(path.c_str(), O_WRONLY | O_APPEND | O_CREAT | O_CLOEXEC, 0644);
    if (fd < 0) throw Error("cannot open " + path);
    return fd;
}

}  // namespace

struct RecordStore::Impl {
    std::string interactions_path;
    std::string records_path;
    int interactions_fd = -1;
    int records_fd = -1;
    mutable std::mutex mutex;
    std::vector<Interaction> interactions;
    std::unordered_set<std::string> ids;
    std::vector<EvaluationRecord> records;
    std::unordered_set<std::string> evaluated;
};

RecordStore::RecordStore(const std::string& directory) : impl_(std::make_unique<Impl>()) {
    std::filesystem::create_directories(directory);
    impl_->interactions_path = directory + "/interactions.jsonl";
    impl_->records_path = directory + "/records.jsonl";

    const std::size_t interaction_bytes =
        load_lenient(impl_->interactions_path, [&](const std::string& line, std::size_t line_no) {
            try {
                Interaction interaction = interaction_from_json_text(line);
                if (impl_->ids.insert(interaction.id).second) {
                    impl_->interactions.push_back(std::move(interaction));
                }
            } catch (const ParseError& e) {
                throw ParseError(std::string(e.what()), line_no);
            }
        });
    const std::size_t record_bytes =
        load_lenient(impl_->records_path, [&](const std::string& line, std::size_t line_no) {
            try {
                EvaluationRecord record = record_from_json(line);
                if (impl_->evaluated.insert(record.id).second) {
                    impl_->records.push_back(std::move(record));
                }
            } catch (const ParseError& e) {
                throw ParseError(std::string(e.what()), line_no);
            }
        });
    drop_torn_tail(impl_->interactions_path, interaction_bytes);
    drop_torn_tail(impl_->records_path, record_bytes);

    impl_->interactions_fd = open_append(impl_->interactions_path);
    impl_->records_fd = open_append(impl_->records_path);
}

RecordStore::~RecordStore() {
    if (impl_->interactions_fd >= 0) ::close(impl_->interactions_fd);
    if (impl_->records_fd >= 0) ::close(impl_->records_fd);
}

bool RecordStore::append_interaction(const Interaction& interaction) {
    std::lock_guard<std::mutex> lock(impl_->mutex);
    if (impl_->ids.count(interaction.id)) return false;
    write_all(impl_->interactions_fd, interaction_to_json(interaction) + "\n",
              impl_->interactions_path);
    if (::fsync(impl_->interactions_fd) != 0) {
        throw Error("fsync failed on " + impl_->interactions_path);
    }
    impl_->ids.insert(interaction.id);
    impl_->interactions.push_back(interaction);
    return true;
}

void RecordStore::append_record(const EvaluationRecord& record) {
    std::lock_guard<std::mutex> lock(impl_->mutex);
    write_all(impl_->records_fd, record_to_json(record) + "\n", impl_->records_path);
    if (impl_->evaluated.insert(record.id).second) {
        impl_->records.push_back(record);
    }
}

std::vector<Interaction> RecordStore::interactions() const {
    std::lock_guard<std::mutex> lock(impl_->mutex);
    return impl_->interactions;
}

std::vector<EvaluationRecord> RecordStore::records() const {
    std::lock_guard<std::mutex> lock(impl_->mutex);
    return impl_->records;
}

std::vector<Interaction> RecordStore::unevaluated() const {
    std::lock_guard<std::mutex> lock(impl_->mutex);
    std::vector<Interaction> pending;
    for (const auto& interaction : impl_->interactions) {
        if (!impl_->evaluated.count(interaction.id)) pending.push_back(interaction);
    }
    return pending;
}

std::size_t RecordStore::interaction_count() const {
    std::lock_guard<std::mutex> lock(impl_->mutex);
    return impl_->interactions.size();
}

struct MonitorService::Impl {
    RecordStore store;
    EvalConfig eval_config;
    MonitorConfig monitor_config;
    std::unique_ptr<Judge> judge;

    httplib::Server server;
    std::thread server_thread;
    std::vector<std::thread> workers;

    std::mutex mutex;
    std::condition_variable queue_cv;
    std::condition_variable idle_cv;
    std::deque<Interaction> queue;
    std::size_t lag = 0;
    bool stopping = false;
    bool started = false;

    Impl(const std::string& directory, EvalConfig eval, MonitorConfig monitor)
        : store(directory),
          eval_config(std::move(eval)),
          monitor_config(monitor),
          judge(make_judge(eval_config.judge)) {}

    void worker_loop() {
        for (;;) {
            Interaction interaction;
            {
                std::unique_lock<std::mutex> lock(mutex);
                queue_cv.wait(lock, [&] { return stopping || !queue.empty(); });
                if (queue.empty()) return;
                interaction = std::move(queue.front());
                queue.pop_front();
            }
            bool evaluated = false;
            EvaluationRecord record;
            try {
                record = evaluate_interaction(interaction, *judge, eval_config);
                evaluated = true;
            } catch (const std::exception& e) {
                std::fprintf(stderr, "evaluation failed for %s: %s\n", interaction.id.c_str(),
                             e.what());
            }
            if (evaluated) store.append_record(record);
            {
                std::lock_guard<std::mutex> lock(mutex);
                --lag;
            }
            idle_cv.notify_all();
        }
    }

    std::string serve_timeseries(const httplib::Request& req, httplib::Response& res) {
        if (!req.has_param("property")) {
            res.status = 400;
            return json{{"error", "missing required query parameter \"property\""}}.dump() + "\n";
        }
        WindowSpec spec{monitor_config.window_seconds};
        if (req.has_param("window")) {
            try {
                spec.width_seconds = std::stoll(req.get_param_value("window"));
            } catch (const std::exception&) {
                spec.width_seconds = 0;
            }
            if (spec.width_seconds <= 0) {
                res.status = 400;
                return json{{"error", "window must be a positive number of seconds"}}.dump() + "\n";
            }
        }
        const std::string property = req.get_param_value("property");
        const SeriesAggregate aggregate = window_aggregate(store.records(), spec);
        std::vector<TimeSeriesPoint> filtered;
        for (const auto& point : aggregate.points) {
            if (point.property_id == property) filtered.push_back(point);
        }
        return timeseries_to_json(filtered);
    }

    std::string serve_alerts() {
        const SeriesAggregate aggregate =
            window_aggregate(store.records(), WindowSpec{monitor_config.window_seconds});
        std::map<std::string, std::vector<TimeSeriesPoint>> by_property;
        for (const auto& point : aggregate.points) {
            by_property[point.property_id].push_back(point);
        }
        std::vector<DriftAlert> alerts;
        for (const auto& [property_id, points] : by_property) {
            if (points.size() < 2) continue;
            // Latest window versus everything before it.
            const std::int64_t baseline_start = points.front().window_start;
            const std::int64_t baseline_end = points.back().window_start;
            try {
                const std::vector<DriftAlert> found =
                    detect_drift(points, baseline_start, baseline_end,
                                 monitor_config.z_threshold, monitor_config.min_n);
                alerts.insert(alerts.end(), found.begin(), found.end());
            } catch (const MetricError&) {
                // Baseline too thin for this property; nothing to raise.
            }
        }
        return alerts_to_json(alerts);
    }
};

MonitorService::MonitorService(const std::string& store_directory, EvalConfig eval_config,
                               MonitorConfig monitor_config)
    : impl_(std::make_unique<Impl>(store_directory, std::move(eval_config), monitor_config)) {
    for (Interaction& interaction : impl_->store.unevaluated()) {
        impl_->queue.push_back(std::move(interaction));
    }
    impl_->lag = impl_->queue.size();
}

MonitorService::~MonitorService() { stop(); }

int MonitorService::start(int port) {
    Impl& impl = *impl_;
    impl.server.Post("/v1/interactions",
                     [&impl](const httplib::Request& req, httplib::Response& res) {
                         try {
                             Interaction interaction = interaction_from_json_text(req.body);
                             const std::string id = interaction.id;
                             if (!impl.store.append_interaction(interaction)) {
                                 res.status = 409;
                                 res.set_content(json{{"error", "duplicate id: " + id}}.dump() + "\n",
                                                 "application/json");
                                 return;
                             }
                             {
                                 std::lock_guard<std::mutex> lock(impl.mutex);
                                 impl.queue.push_back(std::move(interaction));
                                 ++impl.lag;
                             }
                             impl.queue_cv.notify_one();
                             res.set_content(json{{"id", id}}.dump() + "\n", "application/json");
                         } catch (const ParseError& e) {
                             res.status = 400;
                             res.set_content(json{{"error", e.what()}}.dump() + "\n",
                                             "application/json");
                         }
                     });
    impl.server.Get("/v1/timeseries", [&impl](const httplib::Request& req, httplib::Response& res) {
        res.set_content(impl.serve_timeseries(req, res), "application/json");
    });
    impl.server.Get("/v1/alerts", [&impl](const httplib::Request&, httplib::Response& res) {
        res.set_content(impl.serve_alerts(), "application/json");
    });
    impl.server.Get("/v1/health", [&impl](const httplib::Request&, httplib::Response& res) {
        std::size_t lag;
        {
            std::lock_guard<std::mutex> lock(impl.mutex);
            lag = impl.lag;
        }
        res.set_content(json{{"lag", lag}}.dump() + "\n", "application/json");
    });

    int bound = port;
    if (port == 0) {
        bound = impl.server.bind_to_any_port("127.0.0.1");
        if (bound <= 0) throw Error("cannot bind monitoring port");
    } else if (!impl.server.bind_to_port("127.0.0.1", port)) {
        throw Error("cannot bind monitoring port " + std::to_string(port));
    }
    impl.server_thread = std::thread([&impl] { impl.server.listen_after_bind(); });
    const auto deadline = std::chrono::steady_clock::now() + std::chrono::seconds(5);
    while (!impl.server.is_running() && std::chrono::steady_clock::now() < deadline) {
        std::this_thread::sleep_for(std::chrono::milliseconds(1));
    }

    const int workers = std::max(1, impl.monitor_config.workers);
    for (int w = 0; w < workers; ++w) {
        impl.workers.emplace_back([&impl] { impl.worker_loop(); });
    }
    impl.started = true;
    return bound;
}

void MonitorService::stop() {
    Impl& impl = *impl_;
    if (!impl.started) return;
    impl.started = false;
    {
        std::lock_guard<std::mutex> lock(impl.mutex);
        impl.stopping = true;
    }
    impl.queue_cv.notify_all();
    for (auto& worker : impl.workers) worker.join();
    impl.workers.clear();
    impl.server.stop();
    if (impl.server_thread.joinable()) impl.server_thread.join();
}

std::size_t MonitorService::lag() const {
    std::lock_guard<std::mutex> lock(impl_->mutex);
    return impl_->lag;
}

void MonitorService::drain() {
    std::unique_lock<std::mutex> lock(impl_->mutex);
    impl_->idle_cv.wait(lock, [&] { return impl_->lag == 0; });
}

std::vector<EvaluationRecord> MonitorService::evaluated_records() const {
    return impl_->store.records();
}

}  // namespace ragmark
