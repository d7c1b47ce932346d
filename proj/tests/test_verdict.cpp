#include <doctest.h>

#include <map>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "ragmark/errors.hpp"
#include "ragmark/model.hpp"
#include "ragmark/verdict.hpp"

using namespace ragmark;

namespace {

std::map<std::string, double> core_scores(double relevance, double grounded, double completeness,
                                          double safety) {
    return {{"retrieval_relevance", relevance},
            {"grounded_in_context", grounded},
            {"completeness", completeness},
            {"safety", safety}};
}

CalibrationSample shared_sample(double value, Label label) {
    return {core_scores(value, value, value, value), label};
}

struct OracleBest {
    double accuracy = -1.0;
    double fail = 0.0;
    double pass = 0.0;
};

/// Exhaustive reference: every grid pair, same tie-breaking order.
OracleBest calibration_oracle(const std::vector<CalibrationSample>& labeled, double step,
                              const ThresholdConfig& base) {
    std::vector<double> grid;
    for (int i = 0;; ++i) {
        double value = i * step;
        if (value >= 1.0) {
            grid.push_back(1.0);
            break;
        }
        grid.push_back(value);
    }
    OracleBest best;
    double best_width = -1.0;
    for (double fail : grid) {
        for (double pass : grid) {
            if (pass < fail) continue;
            ThresholdConfig config = base;
            for (const auto& property_id : config.core) {
                config.bands[property_id] = ThresholdBand{fail, pass};
            }
            std::size_t correct = 0;
            for (const auto& sample : labeled) {
                auto verdict = classify_verdict(sample.scores, config);
                if ((verdict.label == VerdictLabel::Positive && sample.label == Label::Positive) ||
                    (verdict.label == VerdictLabel::Negative && sample.label == Label::Negative)) {
                    ++correct;
                }
            }
            double accuracy = static_cast<double>(correct) / labeled.size();
            double width = pass - fail;
            bool better = accuracy > best.accuracy ||
                          (accuracy == best.accuracy &&
                           (width > best_width ||
                            (width == best_width &&
                             (fail < best.fail || (fail == best.fail && pass < best.pass)))));
            if (better) {
                best = {accuracy, fail, pass};
                best_width = width;
            }
        }
    }
    return best;
}

}  // namespace

TEST_SUITE("verdict") {

TEST_CASE("all core properties passing yields positive") {
    auto verdict = classify_verdict(core_scores(1.0, 0.9, 0.8, 1.0), ThresholdConfig::defaults());
    CHECK(verdict.label == VerdictLabel::Positive);
    CHECK(verdict.reasons.empty());
}

TEST_CASE("one failing property forces negative") {
    auto verdict = classify_verdict(core_scores(1.0, 0.4, 1.0, 1.0), ThresholdConfig::defaults());
    CHECK(verdict.label == VerdictLabel::Negative);
    REQUIRE(verdict.reasons.size() == 1);
    CHECK(verdict.reasons[0].property_id == "grounded_in_context");
    CHECK(verdict.reasons[0].score == 0.4);
    CHECK(verdict.reasons[0].rule == "below fail threshold");
}

TEST_CASE("failures list every violating property in core order") {
    auto verdict = classify_verdict(core_scores(0.1, 0.2, 1.0, 0.3), ThresholdConfig::defaults());
    CHECK(verdict.label == VerdictLabel::Negative);
    REQUIRE(verdict.reasons.size() == 3);
    CHECK(verdict.reasons[0].property_id == "retrieval_relevance");
    CHECK(verdict.reasons[1].property_id == "grounded_in_context");
    CHECK(verdict.reasons[2].property_id == "safety");
}

TEST_CASE("scores between the bands are inconclusive") {
    auto verdict = classify_verdict(core_scores(1.0, 0.7, 1.0, 1.0), ThresholdConfig::defaults());
    CHECK(verdict.label == VerdictLabel::Unknown);
    REQUIRE(verdict.reasons.size() == 1);
    CHECK(verdict.reasons[0].property_id == "grounded_in_context");
    CHECK(verdict.reasons[0].rule == "below pass threshold");
}

TEST_CASE("a failure dominates an inconclusive property") {
    auto verdict = classify_verdict(core_scores(0.3, 0.7, 1.0, 1.0), ThresholdConfig::defaults());
    CHECK(verdict.label == VerdictLabel::Negative);
    REQUIRE(verdict.reasons.size() == 1);
    CHECK(verdict.reasons[0].property_id == "retrieval_relevance");
}

TEST_CASE("band edges are inclusive on the correct sides") {
    auto verdict = classify_verdict(core_scores(0.5, 0.5, 0.5, 0.5), ThresholdConfig::defaults());
    CHECK(verdict.label == VerdictLabel::Unknown);
    verdict = classify_verdict(core_scores(0.8, 0.8, 0.8, 0.8), ThresholdConfig::defaults());
    CHECK(verdict.label == VerdictLabel::Positive);
}

TEST_CASE("a missing core score is a config error") {
    std::map<std::string, double> scores{{"grounded_in_context", 1.0}};
    CHECK_THROWS_AS(classify_verdict(scores, ThresholdConfig::defaults()), ConfigError);
}

TEST_CASE("the property score overload matches the map overload") {
    std::vector<PropertyScore> scores;
    scores.push_back({"retrieval_relevance", 0.9, "", {}});
    scores.push_back({"grounded_in_context", 0.6, "", {}});
    scores.push_back({"completeness", 1.0, "", {}});
    scores.push_back({"safety", 1.0, "", {}});
    scores.push_back({"expected_output_similarity", 0.1, "", {}});  // non-core, ignored
    auto verdict = classify_verdict(scores, ThresholdConfig::defaults());
    CHECK(verdict == classify_verdict(core_scores(0.9, 0.6, 1.0, 1.0),
                                      ThresholdConfig::defaults()));
    CHECK(verdict.label == VerdictLabel::Unknown);
}

TEST_CASE("per-property bands are honoured") {
    ThresholdConfig thresholds = ThresholdConfig::defaults();
    thresholds.bands["safety"] = ThresholdBand{0.95, 1.0};
    auto verdict = classify_verdict(core_scores(1.0, 1.0, 1.0, 0.9), thresholds);
    CHECK(verdict.label == VerdictLabel::Negative);
    CHECK(verdict.reasons[0].property_id == "safety");
}

TEST_CASE("random scores always follow the three rules") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const ThresholdConfig thresholds = ThresholdConfig::defaults();
    for (int i = 0; i < 2000; ++i) {
        auto scores = core_scores(unit(rng), unit(rng), unit(rng), unit(rng));
        auto verdict = classify_verdict(scores, thresholds);
        bool any_fail = false;
        bool all_pass = true;
        for (const auto& [id, value] : scores) {
            const ThresholdBand band = thresholds.band_for(id);
            any_fail = any_fail || value < band.fail_below;
            all_pass = all_pass && value >= band.pass_at_or_above;
        }
        if (any_fail) {
            CHECK(verdict.label == VerdictLabel::Negative);
        } else if (all_pass) {
            CHECK(verdict.label == VerdictLabel::Positive);
        } else {
            CHECK(verdict.label == VerdictLabel::Unknown);
        }
        CHECK((verdict.label == VerdictLabel::Positive) == verdict.reasons.empty());
    }
}

TEST_CASE("raising any score never worsens the verdict") {
    auto rank = [](VerdictLabel label) {
        return label == VerdictLabel::Negative ? 0 : label == VerdictLabel::Unknown ? 1 : 2;
    };
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const ThresholdConfig thresholds = ThresholdConfig::defaults();
    const std::vector<std::string> ids{"retrieval_relevance", "grounded_in_context",
                                       "completeness", "safety"};
    for (int i = 0; i < 500; ++i) {
        auto scores = core_scores(unit(rng), unit(rng), unit(rng), unit(rng));
        const int before = rank(classify_verdict(scores, thresholds).label);
        auto& bumped = scores[ids[i % ids.size()]];
        bumped = bumped + (1.0 - bumped) * unit(rng);
        CHECK(rank(classify_verdict(scores, thresholds).label) >= before);
    }
}

TEST_CASE("calibration validates its inputs") {
    CHECK_THROWS_AS(calibrate_thresholds({}, 0.1), std::invalid_argument);
    std::vector<CalibrationSample> samples{shared_sample(0.9, Label::Positive),
                                           shared_sample(0.1, Label::Negative)};
    CHECK_THROWS_AS(calibrate_thresholds(samples, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(calibrate_thresholds(samples, -0.1), std::invalid_argument);
    CHECK_THROWS_AS(calibrate_thresholds(samples, 0.51), std::invalid_argument);
}

TEST_CASE("single-class labels keep the base thresholds") {
    std::vector<CalibrationSample> samples{shared_sample(0.9, Label::Positive),
                                           shared_sample(0.85, Label::Positive)};
    auto result = calibrate_thresholds(samples, 0.1);
    CHECK(result.degenerate);
    CHECK(result.warning == "calibration labels are single-class; keeping existing thresholds");
    CHECK(result.thresholds == ThresholdConfig::defaults());
    CHECK(result.accuracy == 1.0);
}

TEST_CASE("a separable set calibrates to full accuracy with the widest band") {
    std::vector<CalibrationSample> samples;
    for (int i = 0; i < 5; ++i) samples.push_back(shared_sample(0.9, Label::Positive));
    for (int i = 0; i < 5; ++i) samples.push_back(shared_sample(0.2, Label::Negative));
    auto result = calibrate_thresholds(samples, 0.25);
    CHECK(result.accuracy == 1.0);
    CHECK_FALSE(result.degenerate);
    const ThresholdBand band = result.thresholds.band_for("grounded_in_context");
    CHECK(band.fail_below == 0.25);
    CHECK(band.pass_at_or_above == 0.75);
}

TEST_CASE("calibration matches the exhaustive oracle") {
    std::vector<CalibrationSample> samples{
        shared_sample(0.9, Label::Positive), shared_sample(0.6, Label::Positive),
        shared_sample(0.55, Label::Negative), shared_sample(0.1, Label::Negative)};
    const ThresholdConfig base = ThresholdConfig::defaults();
    auto result = calibrate_thresholds(samples, 0.25, base);
    auto oracle = calibration_oracle(samples, 0.25, base);
    CHECK(result.accuracy == oracle.accuracy);
    const ThresholdBand band = result.thresholds.band_for("safety");
    CHECK(band.fail_below == oracle.fail);
    CHECK(band.pass_at_or_above == oracle.pass);
    CHECK(result.accuracy == 0.75);
    CHECK(oracle.fail == 0.25);
    CHECK(oracle.pass == 0.5);
}

TEST_CASE("mixed per-property scores calibrate against the oracle") {
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<CalibrationSample> samples;
    for (int i = 0; i < 12; ++i) {
        CalibrationSample sample;
        sample.scores = core_scores(unit(rng), unit(rng), unit(rng), unit(rng));
        sample.label = i % 2 == 0 ? Label::Positive : Label::Negative;
        samples.push_back(std::move(sample));
    }
    const ThresholdConfig base = ThresholdConfig::defaults();
    auto result = calibrate_thresholds(samples, 0.25, base);
    auto oracle = calibration_oracle(samples, 0.25, base);
    CHECK(result.accuracy == oracle.accuracy);
    const ThresholdBand band = result.thresholds.band_for("completeness");
    CHECK(band.fail_below == oracle.fail);
    CHECK(band.pass_at_or_above == oracle.pass);
}

}  // TEST_SUITE
