#include "ragmark/report.hpp"

#include <cstdio>
#include <map>

#include <nlohmann/json.hpp>

namespace ragmark {
namespace {

const char* kStyle =
    "body{font-family:sans-serif;margin:2rem;color:#222}"
    "table{border-collapse:collapse;margin:1rem 0}"
    "th,td{border:1px solid #bbb;padding:0.3rem 0.6rem;text-align:left}"
    "th{background:#eee}"
    "caption{font-weight:bold;padding:0.3rem;text-align:left}"
    ".negative{background:#fdd}.unknown{background:#ffd}.positive{background:#dfd}";

std::string fmt(double value) {
    char buffer[32];
    std::snprintf(buffer, sizeof buffer, "%.3f", value);
    return buffer;
}

std::string page(const std::string& title, const std::string& body) {
    return "<!DOCTYPE html>\n<html><head><meta charset=\"utf-8\"><title>" + html_escape(title) +
           "</title><style>" + kStyle + "</style></head>\n<body>\n<h1>" + html_escape(title) +
           "</h1>\n" + body + "</body></html>\n";
}

const char* verdict_class(VerdictLabel label) {
    switch (label) {
        case VerdictLabel::Positive: return "positive";
        case VerdictLabel::Negative: return "negative";
        case VerdictLabel::Unknown: break;
    }
    return "unknown";
}

}  // namespace

std::string html_escape(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    for (char c : text) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

std::string render_method_table_html(const MethodTable& table) {
    std::string out = "<table><caption>" + html_escape(table.title) + "</caption>\n<tr><th></th>";
    for (const auto& column : table.columns) {
        out += "<th>" + html_escape(column) + "</th>";
    }
    out += "</tr>\n";
    for (const auto& [method, values] : table.rows) {
        out += "<tr><th>" + html_escape(method) + "</th>";
        for (double value : values) out += "<td>" + fmt(value) + "</td>";
        out += "</tr>\n";
    }
    out += "</table>\n";
    return out;
}

std::string render_records_report_html(const std::vector<EvaluationRecord>& records,
                                       const ThresholdConfig& thresholds) {
    const AnnotationBreakdown breakdown = annotation_breakdown(records);
    const std::vector<RcaInsight> insights = rca_insights(records, thresholds);

    std::string body;
    body += "<table><caption>Verdicts over " + std::to_string(records.size()) +
            " interactions</caption>\n";
    body += "<tr><th>positive</th><th>negative</th><th>unknown</th></tr>\n";
    body += "<tr><td>" + std::to_string(breakdown.positive) + "</td><td>" +
            std::to_string(breakdown.negative) + "</td><td>" + std::to_string(breakdown.unknown) +
            "</td></tr>\n</table>\n";

    body += "<table><caption>Score distribution by property</caption>\n";
    body += "<tr><th>property</th><th>[0, 0.5)</th><th>[0.5, 0.8)</th><th>[0.8, 1]</th></tr>\n";
    for (const auto& [property_id, histogram] : breakdown.histograms) {
        body += "<tr><th>" + html_escape(property_id) + "</th>";
        for (std::size_t count : histogram) body += "<td>" + std::to_string(count) + "</td>";
        body += "</tr>\n";
    }
    body += "</table>\n";

    if (!insights.empty()) {
        body += "<h2>Root-cause insights</h2>\n<ul>\n";
        for (const auto& insight : insights) {
            body += "<li><b>" + html_escape(insight.component) + "</b>: " +
                    html_escape(insight.message) + "</li>\n";
        }
        body += "</ul>\n";
    }

    body += "<table><caption>Records</caption>\n<tr><th>id</th><th>verdict</th>";
    std::vector<std::string> property_ids;
    for (const auto& [property_id, histogram] : breakdown.histograms) {
        (void)histogram;
        property_ids.push_back(property_id);
        body += "<th>" + html_escape(property_id) + "</th>";
    }
    body += "<th>reasons</th></tr>\n";
    for (const auto& record : records) {
        body += "<tr class=\"" + std::string(verdict_class(record.verdict.label)) + "\"><td>" +
                html_escape(record.id) + "</td><td>" +
                std::string(to_string(record.verdict.label)) + "</td>";
        for (const auto& property_id : property_ids) {
            const PropertyScore* score = record.find_score(property_id);
            body += score ? "<td>" + fmt(score->value) + "</td>" : "<td></td>";
        }
        std::string reasons;
        for (const auto& reason : record.verdict.reasons) {
            if (!reasons.empty()) reasons += "; ";
            reasons += reason.property_id + " " + fmt(reason.score) + " (" + reason.rule + ")";
        }
        body += "<td>" + html_escape(reasons) + "</td></tr>\n";
    }
    body += "</table>\n";
    return page("Evaluation report", body);
}

std::string records_report_json(const std::vector<EvaluationRecord>& records,
                                const ThresholdConfig& thresholds) {
    const AnnotationBreakdown breakdown = annotation_breakdown(records);
    const std::vector<RcaInsight> insights = rca_insights(records, thresholds);

    std::map<std::string, std::pair<double, std::size_t>> sums;
    for (const auto& record : records) {
        for (const auto& score : record.scores) {
            auto& [sum, count] = sums[score.property_id];
            sum += score.value;
            ++count;
        }
    }

    nlohmann::ordered_json doc;
    doc["records"] = records.size();
    doc["verdicts"] = {{"positive", breakdown.positive},
                       {"negative", breakdown.negative},
                       {"unknown", breakdown.unknown}};
    nlohmann::ordered_json histograms = nlohmann::ordered_json::object();
    for (const auto& [property_id, histogram] : breakdown.histograms) {
        histograms[property_id] = histogram;
    }
    doc["histograms"] = std::move(histograms);
    nlohmann::ordered_json means = nlohmann::ordered_json::object();
    for (const auto& [property_id, entry] : sums) {
        means[property_id] = entry.first / static_cast<double>(entry.second);
    }
    doc["property_means"] = std::move(means);
    nlohmann::ordered_json insight_list = nlohmann::ordered_json::array();
    for (const auto& insight : insights) {
        insight_list.push_back({{"component", insight.component},
                                {"message", insight.message},
                                {"evidence", insight.evidence}});
    }
    doc["insights"] = std::move(insight_list);
    return doc.dump(2) + "\n";
}

std::string render_benchmark_report_html(const BenchmarkReport& report) {
    MethodTable table;
    table.title = "Benchmark: " + report.dataset + " (" + report.protocol + " protocol)";
    std::vector<double> values;
    for (const auto& [metric, value] : report.metrics) {
        table.columns.push_back(metric);
        values.push_back(value);
    }
    table.rows.emplace_back("ragmark", std::move(values));

    std::string body = render_method_table_html(table);
    body += "<p>config fingerprint: <code>" + html_escape(report.config_fingerprint) +
            "</code></p>\n";
    body += "<table><caption>Samples</caption>\n"
            "<tr><th>id</th><th>label</th><th>score</th><th>verdict</th></tr>\n";
    for (const auto& sample : report.samples) {
        body += "<tr><td>" + html_escape(sample.id) + "</td><td>" +
                std::string(to_string(sample.label)) + "</td><td>" + fmt(sample.score) +
                "</td><td>" +
                (sample.verdict ? std::string(to_string(*sample.verdict)) : std::string()) +
                "</td></tr>\n";
    }
    body += "</table>\n";
    return page("Benchmark report", body);
}

}  // namespace ragmark
