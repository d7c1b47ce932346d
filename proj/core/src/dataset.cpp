#include "ragmark/dataset.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "ragmark/errors.hpp"
#include "ragmark/timeutil.hpp"

namespace ragmark {
namespace {

using json = nlohmann::ordered_json;

std::string stringify(const json& value) {
    if (value.is_string()) return value.get<std::string>();
    return value.dump();
}

const json& require_field(const json& obj, const char* key, std::size_t line) {
    auto it = obj.find(key);
    if (it == obj.end()) {
        throw ParseError(std::string("missing field \"") + key + "\"", line);
    }
    return *it;
}

std::string require_string(const json& obj, const char* key, std::size_t line) {
    const json& value = require_field(obj, key, line);
    if (!value.is_string()) {
        throw ParseError(std::string("field \"") + key + "\" must be a string", line);
    }
    return value.get<std::string>();
}

Interaction interaction_from_json(const json& obj, std::size_t line, bool expect_label) {
    if (!obj.is_object()) throw ParseError("record must be a JSON object", line);

    Interaction out;
    out.id = require_string(obj, "id", line);
    if (out.id.empty()) throw ParseError("field \"id\" must be non-empty", line);
    out.question = require_string(obj, "question", line);
    out.answer = require_string(obj, "answer", line);

    const json& context = require_field(obj, "context", line);
    if (!context.is_array()) throw ParseError("field \"context\" must be an array", line);
    int rank = 0;
    for (const auto& doc : context) {
        if (!doc.is_object()) throw ParseError("context entries must be objects", line);
        ContextDocument cd;
        cd.doc_id = require_string(doc, "doc_id", line);
        cd.text = require_string(doc, "text", line);
        cd.rank = ++rank;
        out.context.push_back(std::move(cd));
    }

    if (auto it = obj.find("expected_output"); it != obj.end()) {
        if (!it->is_string()) throw ParseError("field \"expected_output\" must be a string", line);
        out.expected_output = it->get<std::string>();
    }
    if (auto it = obj.find("label"); it != obj.end()) {
        if (!it->is_string()) throw ParseError("field \"label\" must be a string", line);
        try {
            out.label = label_from_string(it->get<std::string>());
        } catch (const std::invalid_argument& e) {
            throw ParseError(e.what(), line);
        }
    } else if (expect_label) {
        throw ParseError("missing field \"label\"", line);
    }
    if (auto it = obj.find("timestamp"); it != obj.end()) {
        if (!it->is_string()) throw ParseError("field \"timestamp\" must be a string", line);
        try {
            out.timestamp = parse_rfc3339(it->get<std::string>());
        } catch (const std::invalid_argument& e) {
            throw ParseError(e.what(), line);
        }
    }
    if (auto it = obj.find("version"); it != obj.end()) {
        if (!it->is_string()) throw ParseError("field \"version\" must be a string", line);
        out.version = it->get<std::string>();
    }
    if (auto it = obj.find("metadata"); it != obj.end()) {
        if (!it->is_object()) throw ParseError("field \"metadata\" must be an object", line);
        for (const auto& [key, value] : it->items()) {
            out.metadata[key] = stringify(value);
        }
    }

    // Unrecognized top-level fields are preserved rather than dropped.
    static const char* kKnown[] = {"id",        "question", "context", "answer", "expected_output",
                                   "label",     "timestamp", "version", "metadata"};
    for (const auto& [key, value] : obj.items()) {
        bool known = false;
        for (const char* k : kKnown) {
            if (key == k) {
                known = true;
                break;
            }
        }
        if (!known) out.metadata.emplace(key, stringify(value));
    }
    return out;
}

json interaction_to_ordered(const Interaction& interaction) {
    json j = json::object();
    j["id"] = interaction.id;
    j["question"] = interaction.question;
    json ctx = json::array();
    for (const auto& doc : interaction.context) {
        json d = json::object();
        d["doc_id"] = doc.doc_id;
        d["text"] = doc.text;
        ctx.push_back(std::move(d));
    }
    j["context"] = std::move(ctx);
    j["answer"] = interaction.answer;
    if (interaction.expected_output) j["expected_output"] = *interaction.expected_output;
    if (interaction.label) j["label"] = to_string(*interaction.label);
    if (interaction.timestamp) j["timestamp"] = format_rfc3339(*interaction.timestamp);
    if (interaction.version) j["version"] = *interaction.version;
    if (!interaction.metadata.empty()) {
        json meta = json::object();
        for (const auto& [key, value] : interaction.metadata) meta[key] = value;
        j["metadata"] = std::move(meta);
    }
    return j;
}

json record_to_ordered(const EvaluationRecord& record) {
    json j = json::object();
    j["id"] = record.id;
    j["question_hash"] = record.question_hash;
    if (record.timestamp) j["timestamp"] = format_rfc3339(*record.timestamp);
    if (record.version) j["version"] = *record.version;
    json scores = json::array();
    for (const auto& score : record.scores) {
        json s = json::object();
        s["property_id"] = score.property_id;
        s["value"] = score.value;
        s["explanation"] = score.explanation;
        if (!score.details.empty()) {
            json details = json::array();
            for (const auto& finding : score.details) {
                json f = json::object();
                f["start"] = finding.start;
                f["end"] = finding.end;
                f["finding"] = finding.finding;
                details.push_back(std::move(f));
            }
            s["details"] = std::move(details);
        }
        scores.push_back(std::move(s));
    }
    j["scores"] = std::move(scores);
    json verdict = json::object();
    verdict["label"] = to_string(record.verdict.label);
    json reasons = json::array();
    for (const auto& reason : record.verdict.reasons) {
        json r = json::object();
        r["property_id"] = reason.property_id;
        r["score"] = reason.score;
        r["rule"] = reason.rule;
        reasons.push_back(std::move(r));
    }
    verdict["reasons"] = std::move(reasons);
    j["verdict"] = std::move(verdict);
    j["skipped"] = record.skipped;
    j["engine_version"] = record.engine_version;
    return j;
}

EvaluationRecord record_from_ordered(const json& obj, std::size_t line) {
    if (!obj.is_object()) throw ParseError("record must be a JSON object", line);
    EvaluationRecord out;
    out.id = require_string(obj, "id", line);
    out.question_hash = require_string(obj, "question_hash", line);
    if (auto it = obj.find("timestamp"); it != obj.end()) {
        try {
            out.timestamp = parse_rfc3339(it->get<std::string>());
        } catch (const std::invalid_argument& e) {
            throw ParseError(e.what(), line);
        }
    }
    if (auto it = obj.find("version"); it != obj.end()) out.version = it->get<std::string>();

    const json& scores = require_field(obj, "scores", line);
    if (!scores.is_array()) throw ParseError("field \"scores\" must be an array", line);
    for (const auto& s : scores) {
        PropertyScore score;
        score.property_id = require_string(s, "property_id", line);
        const json& value = require_field(s, "value", line);
        if (!value.is_number()) throw ParseError("score value must be a number", line);
        score.value = value.get<double>();
        if (auto it = s.find("explanation"); it != s.end()) score.explanation = it->get<std::string>();
        if (auto it = s.find("details"); it != s.end()) {
            for (const auto& f : *it) {
                SpanFinding finding;
                finding.start = f.at("start").get<std::size_t>();
                finding.end = f.at("end").get<std::size_t>();
                finding.finding = f.at("finding").get<std::string>();
                score.details.push_back(std::move(finding));
            }
        }
        out.scores.push_back(std::move(score));
    }

    const json& verdict = require_field(obj, "verdict", line);
    try {
        out.verdict.label = verdict_label_from_string(require_string(verdict, "label", line));
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what(), line);
    }
    if (auto it = verdict.find("reasons"); it != verdict.end()) {
        for (const auto& r : *it) {
            VerdictReason reason;
            reason.property_id = r.at("property_id").get<std::string>();
            reason.score = r.at("score").get<double>();
            reason.rule = r.at("rule").get<std::string>();
            out.verdict.reasons.push_back(std::move(reason));
        }
    }
    if (auto it = obj.find("skipped"); it != obj.end()) {
        out.skipped = it->get<std::vector<std::string>>();
    }
    out.engine_version = require_string(obj, "engine_version", line);
    return out;
}

json parse_line(const std::string& text, std::size_t line) {
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what(), line);
    }
}

bool blank(const std::string& text) {
    return text.find_first_not_of(" \t\r\n") == std::string::npos;
}

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    return in;
}

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw Error("cannot write " + path);
    return out;
}

}  // namespace

std::vector<Interaction> parse_dataset(std::istream& in, bool expect_labels) {
    std::vector<Interaction> out;
    std::string text;
    std::size_t line = 0;
    while (std::getline(in, text)) {
        ++line;
        if (blank(text)) continue;
        out.push_back(interaction_from_json(parse_line(text, line), line, expect_labels));
    }
    return out;
}

std::vector<Interaction> load_dataset(const std::string& path, bool expect_labels) {
    auto in = open_input(path);
    return parse_dataset(in, expect_labels);
}

Interaction interaction_from_json_text(const std::string& text) {
    return interaction_from_json(parse_line(text, 0), 0, false);
}

std::string interaction_to_json(const Interaction& interaction) {
    return interaction_to_ordered(interaction).dump();
}

void write_interactions(std::ostream& out, const std::vector<Interaction>& interactions) {
    for (const auto& interaction : interactions) {
        out << interaction_to_json(interaction) << '\n';
    }
}

void save_dataset(const std::string& path, const std::vector<Interaction>& interactions) {
    auto out = open_output(path);
    write_interactions(out, interactions);
}

std::string record_to_json(const EvaluationRecord& record) {
    return record_to_ordered(record).dump();
}

EvaluationRecord record_from_json(const std::string& text) {
    return record_from_ordered(parse_line(text, 0), 0);
}

std::vector<EvaluationRecord> parse_records(std::istream& in) {
    std::vector<EvaluationRecord> out;
    std::string text;
    std::size_t line = 0;
    while (std::getline(in, text)) {
        ++line;
        if (blank(text)) continue;
        out.push_back(record_from_ordered(parse_line(text, line), line));
    }
    return out;
}

std::vector<EvaluationRecord> load_records(const std::string& path) {
    auto in = open_input(path);
    return parse_records(in);
}

void write_records(std::ostream& out, const std::vector<EvaluationRecord>& records) {
    for (const auto& record : records) {
        out << record_to_json(record) << '\n';
    }
}

void save_records(const std::string& path, const std::vector<EvaluationRecord>& records) {
    auto out = open_output(path);
    write_records(out, records);
}

}  // namespace ragmark
