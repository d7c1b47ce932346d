#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "ragmark/config.hpp"
#include "ragmark/model.hpp"

namespace ragmark {

/// Epoch-aligned aggregation windows.
struct WindowSpec {
    std::int64_t width_seconds = 86400;
};

struct TimeSeriesPoint {
    std::int64_t window_start = 0;  // epoch seconds, aligned to the window width
    std::string property_id;
    double mean = 0.0;
    std::size_t count = 0;
    double stddev = 0.0;  // population

    bool operator==(const TimeSeriesPoint&) const = default;
};

struct SeriesAggregate {
    std::vector<TimeSeriesPoint> points;  // sorted by (window_start, property_id)
    std::size_t skipped = 0;              // records without a timestamp
};

/// Windowed mean/count/stddev per (window, property). Windows with no
/// records are omitted; untimestamped records are skipped and counted.
SeriesAggregate window_aggregate(const std::vector<EvaluationRecord>& records, WindowSpec spec);

struct DriftAlert {
    std::string property_id;
    std::int64_t window_start = 0;
    double baseline_mean = 0.0;
    double window_mean = 0.0;
    double z = 0.0;
    std::string direction;  // "up" or "down"

    bool operator==(const DriftAlert&) const = default;
};

/// z-tests every post-baseline window with count >= min_n against the
/// pooled baseline: z = (window_mean - baseline_mean)/(baseline_std /
/// sqrt(count)). Baseline windows are those starting in [baseline_start,
/// baseline_end). A zero-variance baseline yields z = 0 on no change and
/// a clamped +-1e12 otherwise. Throws MetricError when a property's
/// pooled baseline count is below min_n.
std::vector<DriftAlert> detect_drift(const std::vector<TimeSeriesPoint>& series,
                                     std::int64_t baseline_start, std::int64_t baseline_end,
                                     double z_threshold, std::size_t min_n);

std::string timeseries_to_json(const std::vector<TimeSeriesPoint>& points);
std::string alerts_to_json(const std::vector<DriftAlert>& alerts);

/// Append-only persistence: interactions.jsonl (fsynced before every
/// acknowledgment) plus records.jsonl for evaluation results, with an
/// in-memory index rebuilt on startup. A torn final line left by a crash
/// is dropped on load.
class RecordStore {
public:
    explicit RecordStore(const std::string& directory);
    ~RecordStore();

    RecordStore(const RecordStore&) = delete;
    RecordStore& operator=(const RecordStore&) = delete;

    /// Durably appends; returns false without writing when the id is
    /// already stored.
    bool append_interaction(const Interaction& interaction);
    void append_record(const EvaluationRecord& record);

    std::vector<Interaction> interactions() const;
    std::vector<EvaluationRecord> records() const;
    /// Interactions with no evaluation record yet, in ingest order.
    std::vector<Interaction> unevaluated() const;
    std::size_t interaction_count() const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

struct MonitorConfig {
    std::int64_t window_seconds = 86400;
    double z_threshold = 3.0;
    std::size_t min_n = 30;
    int workers = 2;
};

/// The monitoring service: HTTP ingest with durable acknowledgments,
/// asynchronous evaluation workers, served time-series and drift alerts.
///
///   POST /v1/interactions            -> {"id": ...}
///   GET  /v1/timeseries?property=P&window=S
///   GET  /v1/alerts
///   GET  /v1/health                  -> {"lag": n}
///
/// Alerts compare each property's latest window against the pooled
/// earlier windows; properties with an insufficient baseline raise
/// nothing.
class MonitorService {
public:
    MonitorService(const std::string& store_directory, EvalConfig eval_config,
                   MonitorConfig monitor_config = {});
    ~MonitorService();

    MonitorService(const MonitorService&) = delete;
    MonitorService& operator=(const MonitorService&) = delete;

    /// Binds 127.0.0.1:port (0 picks a free port), starts workers and
    /// the server thread, returns the bound port.
    int start(int port);
    void stop();

    std::size_t lag() const;
    /// Blocks until every acknowledged interaction has been evaluated.
    void drain();
    std::vector<EvaluationRecord> evaluated_records() const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

}  // namespace ragmark
