#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace ragmark {

/// Per-property verdict bands. A score below `fail_below` fails the
/// property; a score at or above `pass_at_or_above` passes it; anything
/// in between is inconclusive.
struct ThresholdBand {
    double fail_below = 0.5;
    double pass_at_or_above = 0.8;

    bool operator==(const ThresholdBand&) const = default;
};

struct ThresholdConfig {
    std::map<std::string, ThresholdBand> bands;
    std::vector<std::string> core;  // properties that gate the verdict

    static ThresholdConfig defaults();
    ThresholdBand band_for(std::string_view property_id) const;

    bool operator==(const ThresholdConfig&) const = default;
};

/// Parameters of the faithfulness pipeline.
struct GroundedConfig {
    int top_k = 3;        // evidence passages per statement
    double alpha = 0.5;   // min weight in the min/mean blend
    int window_size = 3;  // sentences per context passage
    int stride = 2;

    bool operator==(const GroundedConfig&) const = default;
};

enum class JudgeBackendKind { Lexical, Remote };

struct JudgeConfig {
    JudgeBackendKind backend = JudgeBackendKind::Lexical;
    std::string endpoint;  // base URL for the remote judge
    int timeout_ms = 30000;
    int retries = 3;
    int backoff_ms = 250;
    int concurrency = 8;

    bool operator==(const JudgeConfig&) const = default;
};

/// Pattern lists and the severity table for the safety scan. Severity is
/// the penalty applied to the safety score (value = 1 - max severity).
struct SafetyConfig {
    double pii_severity = 0.8;
    double toxicity_severity = 1.0;
    double jailbreak_severity = 0.6;
    std::vector<std::string> toxicity_lexicon;
    std::vector<std::string> jailbreak_patterns;
    std::vector<std::string> avoidance_patterns;

    static SafetyConfig defaults();

    bool operator==(const SafetyConfig&) const = default;
};

/// The full engine configuration. With a fixed seed every downstream
/// result is deterministic.
struct EvalConfig {
    ThresholdConfig thresholds = ThresholdConfig::defaults();
    GroundedConfig grounded;
    JudgeConfig judge;
    SafetyConfig safety = SafetyConfig::defaults();
    std::uint64_t seed = 0;

    bool operator==(const EvalConfig&) const = default;
};

/// Reads a config JSON document; absent fields keep their defaults.
/// Throws ConfigError on malformed documents or invalid bands.
EvalConfig load_config(const std::string& path);
EvalConfig config_from_json_text(std::string_view text);

/// Canonical JSON serialization (stable field order, sorted map keys).
std::string config_to_json_text(const EvalConfig& config);
void save_config(const EvalConfig& config, const std::string& path);

/// FNV-1a hash of the canonical serialization; identifies a config in
/// benchmark reports.
std::string config_fingerprint(const EvalConfig& config);

}  // namespace ragmark
