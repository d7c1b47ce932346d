#include <doctest.h>

#include <sstream>
#include <string>
#include <vector>

#include "ragmark/dataset.hpp"
#include "ragmark/errors.hpp"
#include "ragmark/timeutil.hpp"
#include "support/corpus.hpp"

using namespace ragmark;

namespace {

const char* kLine =
    R"({"id":"s-1","question":"What colour is the lantern?",)"
    R"("context":[{"doc_id":"d-1","text":"The lantern is red."},{"doc_id":"d-2","text":"It hangs high."}],)"
    R"("answer":"The lantern is red.","label":"positive","timestamp":"2026-01-05T12:00:00Z",)"
    R"("version":"v3","metadata":{"topic":"harbour"}})";

}  // namespace

TEST_SUITE("dataset") {

TEST_CASE("a full record parses with ranks assigned in order") {
    std::istringstream in(std::string(kLine) + "\n");
    auto interactions = parse_dataset(in);
    REQUIRE(interactions.size() == 1);
    const Interaction& interaction = interactions[0];
    CHECK(interaction.id == "s-1");
    CHECK(interaction.question == "What colour is the lantern?");
    REQUIRE(interaction.context.size() == 2);
    CHECK(interaction.context[0].doc_id == "d-1");
    CHECK(interaction.context[0].rank == 1);
    CHECK(interaction.context[1].rank == 2);
    CHECK(interaction.answer == "The lantern is red.");
    CHECK(interaction.label == Label::Positive);
    CHECK(interaction.timestamp == parse_rfc3339("2026-01-05T12:00:00Z"));
    CHECK(interaction.version == "v3");
    CHECK(interaction.metadata.at("topic") == "harbour");
    CHECK_FALSE(interaction.expected_output.has_value());
}

TEST_CASE("blank lines are skipped and errors carry line numbers") {
    std::istringstream in("\n  \n" + std::string(kLine) + "\nnot json\n");
    try {
        parse_dataset(in);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 4);
        CHECK(std::string(e.what()).rfind("line 4: invalid JSON", 0) == 0);
    }
}

TEST_CASE("required fields are enforced") {
    auto expect_parse_error = [](const std::string& line, const std::string& needle) {
        std::istringstream in(line);
        try {
            parse_dataset(in);
            FAIL_CHECK("expected ParseError for ", line);
        } catch (const ParseError& e) {
            CHECK(std::string(e.what()).find(needle) != std::string::npos);
        }
    };
    expect_parse_error(R"({"question":"q","context":[],"answer":"a"})", "missing field \"id\"");
    expect_parse_error(R"({"id":"","question":"q","context":[],"answer":"a"})",
                       "\"id\" must be non-empty");
    expect_parse_error(R"({"id":"x","context":[],"answer":"a"})", "missing field \"question\"");
    expect_parse_error(R"({"id":"x","question":"q","answer":"a"})", "missing field \"context\"");
    expect_parse_error(R"({"id":"x","question":"q","context":{},"answer":"a"})",
                       "must be an array");
    expect_parse_error(R"({"id":"x","question":"q","context":[{"doc_id":"d"}],"answer":"a"})",
                       "missing field \"text\"");
    expect_parse_error(R"({"id":"x","question":"q","context":[],"answer":7})",
                       "must be a string");
    expect_parse_error(R"([1,2,3])", "must be a JSON object");
    expect_parse_error(R"({"id":"x","question":"q","context":[],"answer":"a","label":"maybe"})",
                       "label");
    expect_parse_error(
        R"({"id":"x","question":"q","context":[],"answer":"a","timestamp":"yesterday"})",
        "timestamp");
}

TEST_CASE("labels are demanded only when expected") {
    std::istringstream unlabeled(R"({"id":"x","question":"q","context":[],"answer":"a"})");
    CHECK(parse_dataset(unlabeled, false).size() == 1);
    std::istringstream again(R"({"id":"x","question":"q","context":[],"answer":"a"})");
    CHECK_THROWS_AS(parse_dataset(again, true), ParseError);
}

TEST_CASE("unknown top-level fields land in metadata") {
    Interaction interaction = interaction_from_json_text(
        R"({"id":"x","question":"q","context":[],"answer":"a","trace_id":"t-9","weights":[1,2]})");
    CHECK(interaction.metadata.at("trace_id") == "t-9");
    CHECK(interaction.metadata.at("weights") == "[1,2]");
}

TEST_CASE("explicit metadata wins over an unknown field copy") {
    Interaction interaction = interaction_from_json_text(
        R"({"id":"x","question":"q","context":[],"answer":"a",)"
        R"("metadata":{"source":"curated"},"source":"scraped"})");
    CHECK(interaction.metadata.at("source") == "curated");
}

TEST_CASE("non-string metadata values are stringified") {
    Interaction interaction = interaction_from_json_text(
        R"({"id":"x","question":"q","context":[],"answer":"a","metadata":{"attempt":2}})");
    CHECK(interaction.metadata.at("attempt") == "2");
}

TEST_CASE("canonical serialization round trips byte for byte") {
    Interaction interaction = interaction_from_json_text(kLine);
    const std::string serialized = interaction_to_json(interaction);
    CHECK(serialized == kLine);
    CHECK(interaction_to_json(interaction_from_json_text(serialized)) == serialized);
}

TEST_CASE("optional fields are omitted when absent") {
    Interaction interaction;
    interaction.id = "min-1";
    interaction.question = "q";
    interaction.answer = "a";
    const std::string serialized = interaction_to_json(interaction);
    CHECK(serialized == R"({"id":"min-1","question":"q","context":[],"answer":"a"})");
}

TEST_CASE("timestamps serialize as rfc3339 strings") {
    Interaction interaction;
    interaction.id = "t-1";
    interaction.question = "q";
    interaction.answer = "a";
    interaction.timestamp = 0;
    CHECK(interaction_to_json(interaction).find("\"1970-01-01T00:00:00Z\"") != std::string::npos);
}

TEST_CASE("datasets save and load through files") {
    const std::string dir = testing::make_scratch_dir("dataset");
    const auto corpus = testing::make_clean_corpus(5);
    save_dataset(dir + "/corpus.jsonl", corpus);
    CHECK(load_dataset(dir + "/corpus.jsonl") == corpus);
    CHECK_THROWS_AS(load_dataset(dir + "/absent.jsonl"), ParseError);
}

TEST_CASE("evaluation records round trip byte for byte") {
    EvaluationRecord record;
    record.id = "r-1";
    record.question_hash = "cbf29ce484222325";
    record.timestamp = 1767225600;
    record.version = "v1";
    PropertyScore score;
    score.property_id = "grounded_in_context";
    score.value = 0.25;
    score.explanation = "1 statements: 0 entailed, 1 contradicted, 0 neutral";
    score.details.push_back({0, 12, "contradicted: negation polarity mismatch"});
    record.scores.push_back(score);
    record.verdict.label = VerdictLabel::Negative;
    record.verdict.reasons.push_back({"grounded_in_context", 0.25, "below fail threshold"});
    record.skipped.push_back("expected_output_similarity");
    record.engine_version = "0.1.0";

    const std::string serialized = record_to_json(record);
    CHECK(record_from_json(serialized) == record);
    CHECK(record_to_json(record_from_json(serialized)) == serialized);
    CHECK(serialized.find("\"timestamp\":\"2026-01-01T00:00:00Z\"") != std::string::npos);
}

TEST_CASE("record files round trip with line numbers on errors") {
    const std::string dir = testing::make_scratch_dir("records");
    EvaluationRecord record;
    record.id = "r-2";
    record.question_hash = "deadbeefdeadbeef";
    record.verdict.label = VerdictLabel::Positive;
    record.engine_version = "0.1.0";
    save_records(dir + "/records.jsonl", {record});
    auto loaded = load_records(dir + "/records.jsonl");
    REQUIRE(loaded.size() == 1);
    CHECK(loaded[0] == record);

    std::istringstream bad(record_to_json(record) + "\n{\"id\":\"r-3\"}\n");
    try {
        parse_records(bad);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
    }
}

TEST_CASE("the bundled corpus matches its generator byte for byte") {
    std::ostringstream expected;
    write_interactions(expected, testing::make_clean_corpus(100));
    CHECK(testing::read_file(testing::clean_corpus_path()) == expected.str());
}

}  // TEST_SUITE
