#include <doctest.h>

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ragmark/benchmark.hpp"
#include "ragmark/config.hpp"
#include "ragmark/model.hpp"
#include "ragmark/report.hpp"

using namespace ragmark;

namespace {

EvaluationRecord make_record(const std::string& id, VerdictLabel verdict, double relevance,
                             double grounded) {
    EvaluationRecord record;
    record.id = id;
    record.question_hash = "00000000000000" + std::to_string(10 + id.size());
    record.engine_version = "test";
    record.scores.push_back({"retrieval_relevance", relevance, "", {}});
    record.scores.push_back({"grounded_in_context", grounded, "", {}});
    record.scores.push_back({"completeness", 1.0, "", {}});
    record.scores.push_back({"safety", 1.0, "", {}});
    record.verdict.label = verdict;
    if (verdict == VerdictLabel::Negative) {
        record.verdict.reasons.push_back({"retrieval_relevance", relevance,
                                          "below fail threshold"});
    }
    return record;
}

}  // namespace

TEST_SUITE("report") {

TEST_CASE("html escaping covers the four metacharacters") {
    CHECK(html_escape("a<b & \"c\">") == "a&lt;b &amp; &quot;c&quot;&gt;");
    CHECK(html_escape("plain text") == "plain text");
    CHECK(html_escape("") == "");
}

TEST_CASE("method tables render rows against columns") {
    MethodTable table;
    table.title = "A <b>title</b>";
    table.columns = {"c1", "c2"};
    table.rows = {{"m1", {0.5, 0.25}}, {"m2", {1.0}}};
    const std::string expected =
        "<table><caption>A &lt;b&gt;title&lt;/b&gt;</caption>\n"
        "<tr><th></th><th>c1</th><th>c2</th></tr>\n"
        "<tr><th>m1</th><td>0.500</td><td>0.250</td></tr>\n"
        "<tr><th>m2</th><td>1.000</td></tr>\n"
        "</table>\n";
    CHECK(render_method_table_html(table) == expected);
}

TEST_CASE("records report renders summary, insights, and per-record rows") {
    std::vector<EvaluationRecord> records{
        make_record("good-1", VerdictLabel::Positive, 1.0, 0.9),
        make_record("bad-1", VerdictLabel::Negative, 0.1, 0.95),
    };
    records[0].scores.push_back({"answer_avoidance", 0.0, "", {}});

    const std::string html = render_records_report_html(records, ThresholdConfig{});
    CHECK(html.rfind("<!DOCTYPE html>", 0) == 0);
    CHECK(html.find("<title>Evaluation report</title>") != std::string::npos);
    CHECK(html.find("Verdicts over 2 interactions") != std::string::npos);
    CHECK(html.find("<tr><td>1</td><td>1</td><td>0</td></tr>") != std::string::npos);

    CHECK(html.find("<h2>Root-cause insights</h2>") != std::string::npos);
    CHECK(html.find("<li><b>retrieval</b>: ") != std::string::npos);

    CHECK(html.find("<tr class=\"positive\"><td>good-1</td><td>positive</td>") !=
          std::string::npos);
    CHECK(html.find("<tr class=\"negative\"><td>bad-1</td><td>negative</td>") !=
          std::string::npos);
    CHECK(html.find("retrieval_relevance 0.100 (below fail threshold)") != std::string::npos);
    CHECK(html.find("<td></td>") != std::string::npos);
    CHECK(html.substr(html.size() - 15) == "</body></html>\n");
}

TEST_CASE("records report of nothing still renders a page") {
    const std::string html = render_records_report_html({}, ThresholdConfig{});
    CHECK(html.find("Verdicts over 0 interactions") != std::string::npos);
    CHECK(html.find("Root-cause insights") == std::string::npos);
}

TEST_CASE("records report serializes to structured JSON") {
    std::vector<EvaluationRecord> records{
        make_record("good-1", VerdictLabel::Positive, 1.0, 0.9),
        make_record("bad-1", VerdictLabel::Negative, 0.1, 0.95),
    };
    const std::string text = records_report_json(records, ThresholdConfig{});
    CHECK(text.back() == '\n');
    nlohmann::json doc = nlohmann::json::parse(text);
    CHECK(doc["records"] == 2);
    CHECK(doc["verdicts"]["positive"] == 1);
    CHECK(doc["verdicts"]["negative"] == 1);
    CHECK(doc["verdicts"]["unknown"] == 0);
    std::vector<int> grounded = doc["histograms"]["grounded_in_context"];
    CHECK(grounded == std::vector<int>{0, 0, 2});
    std::vector<int> relevance = doc["histograms"]["retrieval_relevance"];
    CHECK(relevance == std::vector<int>{1, 0, 1});
    CHECK(doc["property_means"]["grounded_in_context"].get<double>() == doctest::Approx(0.925));
    CHECK(doc["property_means"]["retrieval_relevance"].get<double>() == doctest::Approx(0.55));
    REQUIRE(doc["insights"].size() == 1);
    CHECK(doc["insights"][0]["component"] == "retrieval");
    CHECK(doc["insights"][0]["message"].get<std::string>().rfind("rule: ", 0) == 0);
    CHECK(doc["insights"][0]["evidence"]["negative_count"].get<double>() == doctest::Approx(1.0));
}

TEST_CASE("benchmark report renders metrics and per-sample outcomes") {
    BenchmarkReport report;
    report.dataset = "bench";
    report.protocol = "grounded";
    report.metrics = {{"roc_auc", 0.875}};
    report.config_fingerprint = "deadbeef00112233";
    report.samples.push_back({"s-1", Label::Positive, 1.0, std::nullopt});
    report.samples.push_back({"s-2", Label::Negative, 0.25, VerdictLabel::Negative});

    const std::string html = render_benchmark_report_html(report);
    CHECK(html.find("Benchmark: bench (grounded protocol)") != std::string::npos);
    CHECK(html.find("<th>roc_auc</th>") != std::string::npos);
    CHECK(html.find("<tr><th>ragmark</th><td>0.875</td></tr>") != std::string::npos);
    CHECK(html.find("config fingerprint: <code>deadbeef00112233</code>") != std::string::npos);
    CHECK(html.find("<tr><td>s-1</td><td>positive</td><td>1.000</td><td></td></tr>") !=
          std::string::npos);
    CHECK(html.find("<tr><td>s-2</td><td>negative</td><td>0.250</td><td>negative</td></tr>") !=
          std::string::npos);
}

}  // TEST_SUITE
