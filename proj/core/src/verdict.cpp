#include "ragmark/verdict.hpp"

#include <cmath>
#include <stdexcept>

#include "ragmark/errors.hpp"

namespace ragmark {

Verdict classify_verdict(const std::map<std::string, double>& scores,
                         const ThresholdConfig& thresholds) {
    Verdict verdict;
    std::vector<VerdictReason> failing;
    std::vector<VerdictReason> inconclusive;
    for (const auto& property_id : thresholds.core) {
        auto it = scores.find(property_id);
        if (it == scores.end()) {
            throw ConfigError("missing score for core property " + property_id);
        }
        const ThresholdBand band = thresholds.band_for(property_id);
        if (it->second < band.fail_below) {
            failing.push_back({property_id, it->second, "below fail threshold"});
        } else if (it->second < band.pass_at_or_above) {
            inconclusive.push_back({property_id, it->second, "below pass threshold"});
        }
    }
    if (!failing.empty()) {
        verdict.label = VerdictLabel::Negative;
        verdict.reasons = std::move(failing);
    } else if (!inconclusive.empty()) {
        verdict.label = VerdictLabel::Unknown;
        verdict.reasons = std::move(inconclusive);
    } else {
        verdict.label = VerdictLabel::Positive;
    }
    return verdict;
}

Verdict classify_verdict(const std::vector<PropertyScore>& scores,
                         const ThresholdConfig& thresholds) {
    std::map<std::string, double> by_id;
    for (const auto& score : scores) by_id[score.property_id] = score.value;
    return classify_verdict(by_id, thresholds);
}

namespace {

ThresholdConfig with_shared_band(const ThresholdConfig& base, double fail, double pass) {
    ThresholdConfig config = base;
    for (const auto& property_id : config.core) {
        config.bands[property_id] = ThresholdBand{fail, pass};
    }
    return config;
}

double grid_accuracy(const std::vector<CalibrationSample>& labeled,
                     const ThresholdConfig& config) {
    std::size_t correct = 0;
    for (const auto& sample : labeled) {
        const Verdict verdict = classify_verdict(sample.scores, config);
        if (verdict.label == VerdictLabel::Positive && sample.label == Label::Positive) ++correct;
        if (verdict.label == VerdictLabel::Negative && sample.label == Label::Negative) ++correct;
    }
    return static_cast<double>(correct) / static_cast<double>(labeled.size());
}

}  // namespace

CalibrationResult calibrate_thresholds(const std::vector<CalibrationSample>& labeled,
                                       double grid_step, const ThresholdConfig& base) {
    if (labeled.empty()) throw std::invalid_argument("calibration needs labeled samples");
    if (!(grid_step > 0.0) || grid_step > 0.5) {
        throw std::invalid_argument("grid_step must lie in (0, 0.5]");
    }

    CalibrationResult result;
    bool seen_positive = false;
    bool seen_negative = false;
    for (const auto& sample : labeled) {
        (sample.label == Label::Positive ? seen_positive : seen_negative) = true;
    }
    if (!seen_positive || !seen_negative) {
        result.thresholds = base;
        result.degenerate = true;
        result.warning = "calibration labels are single-class; keeping existing thresholds";
        result.accuracy = grid_accuracy(labeled, base);
        return result;
    }

    // {0, step, 2*step, ..., 1}, with the endpoint pinned to exactly 1.
    std::vector<double> grid;
    const int steps = static_cast<int>(std::ceil(1.0 / grid_step - 1e-9));
    for (int i = 0; i <= steps; ++i) {
        grid.push_back(std::min(1.0, static_cast<double>(i) * grid_step));
    }

    double best_accuracy = -1.0;
    double best_width = -1.0;
    double best_fail = 0.0;
    double best_pass = 0.0;
    for (double fail : grid) {
        for (double pass : grid) {
            if (pass < fail) continue;
            const double accuracy =
                grid_accuracy(labeled, with_shared_band(base, fail, pass));
            const double width = pass - fail;
            const bool better =
                accuracy > best_accuracy ||
                (accuracy == best_accuracy &&
                 (width > best_width ||
                  (width == best_width &&
                   (fail < best_fail || (fail == best_fail && pass < best_pass)))));
            if (better) {
                best_accuracy = accuracy;
                best_width = width;
                best_fail = fail;
                best_pass = pass;
            }
        }
    }
    result.thresholds = with_shared_band(base, best_fail, best_pass);
    result.accuracy = best_accuracy;
    return result;
}

}  // namespace ragmark
