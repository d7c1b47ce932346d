#pragma once

#include <map>
#include <string>
#include <vector>

#include "ragmark/config.hpp"
#include "ragmark/model.hpp"

namespace ragmark {

/// Three-way classification over the core properties. One failing core
/// property forces Negative; Positive requires every core property at or
/// above its pass threshold; anything else is Unknown. Reasons name
/// exactly the properties violating their band.
/// Throws ConfigError when a core property score is missing.
Verdict classify_verdict(const std::map<std::string, double>& scores,
                         const ThresholdConfig& thresholds);
Verdict classify_verdict(const std::vector<PropertyScore>& scores,
                         const ThresholdConfig& thresholds);

struct CalibrationSample {
    std::map<std::string, double> scores;
    Label label = Label::Positive;
};

struct CalibrationResult {
    ThresholdConfig thresholds;
    double accuracy = 0.0;
    bool degenerate = false;  // single-class input; defaults returned
    std::string warning;
};

/// Grid search for one (fail_below, pass_at_or_above) pair shared by all
/// core properties, maximizing accuracy with Unknown counted incorrect.
/// Ties prefer the wider Unknown band, then the lexicographically
/// smallest pair. Deterministic. grid_step must lie in (0, 0.5].
CalibrationResult calibrate_thresholds(const std::vector<CalibrationSample>& labeled,
                                       double grid_step,
                                       const ThresholdConfig& base = ThresholdConfig::defaults());

}  // namespace ragmark
