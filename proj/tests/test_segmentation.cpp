#include <doctest.h>

#include <string>
#include <vector>

#include "ragmark/model.hpp"
#include "ragmark/segmentation.hpp"

using namespace ragmark;

TEST_SUITE("segmentation") {

TEST_CASE("sentences split on terminators followed by capitals") {
    const std::string text = "The dam holds. Water rises quickly! Is it safe? Yes.";
    const std::vector<Sentence> sentences = split_sentences(text);
    REQUIRE(sentences.size() == 4);
    CHECK(sentences[0].text == "The dam holds.");
    CHECK(sentences[1].text == "Water rises quickly!");
    CHECK(sentences[2].text == "Is it safe?");
    CHECK(sentences[3].text == "Yes.");
    for (const auto& sentence : sentences) {
        CHECK(text.substr(sentence.start, sentence.end - sentence.start) == sentence.text);
    }
}

TEST_CASE("abbreviations do not end sentences") {
    const std::vector<Sentence> sentences =
        split_sentences("Dr. Moro visited the site. Mr. Hale stayed, e.g. for repairs. The end.");
    REQUIRE(sentences.size() == 3);
    CHECK(sentences[0].text == "Dr. Moro visited the site.");
    CHECK(sentences[1].text == "Mr. Hale stayed, e.g. for repairs.");
}

TEST_CASE("a period before a lowercase letter does not split") {
    const std::vector<Sentence> sentences = split_sentences("version 2.1 shipped. it works");
    REQUIRE(sentences.size() == 1);
}

TEST_CASE("terminator runs close one sentence") {
    const std::vector<Sentence> sentences = split_sentences("Really?! Yes.");
    REQUIRE(sentences.size() == 2);
    CHECK(sentences[0].text == "Really?!");
}

TEST_CASE("empty and whitespace input yield no sentences") {
    CHECK(split_sentences("").empty());
    CHECK(split_sentences("  \n\t ").empty());
}

TEST_CASE("extraction keeps anchored declaratives with spans") {
    const std::vector<Statement> statements =
        extract_statements("The dam is 96 meters tall. It was finished by Arno Keel.");
    REQUIRE(statements.size() == 2);
    CHECK(statements[0].text == "The dam is 96 meters tall.");
    CHECK(statements[0].start == 0);
    CHECK(statements[1].start == 27);
    CHECK(statements[0].density > 0.3);
}

TEST_CASE("extraction drops questions imperatives greetings and boilerplate") {
    CHECK(extract_statements("Is the dam tall?").empty());
    CHECK(extract_statements("Please check the manual for details.").empty());
    CHECK(extract_statements("See the appendix about turbines.").empty());
    CHECK(extract_statements("Thanks for asking about turbines!").empty());
    CHECK(extract_statements("I hope this helps with the turbine question.").empty());
    CHECK(extract_statements("I cannot answer the turbine question.").empty());
}

TEST_CASE("extraction requires a factual anchor") {
    CHECK(extract_statements("It is big.").empty());
    CHECK_FALSE(extract_statements("It is 96 m.").empty());
    CHECK_FALSE(extract_statements("It honours Arno Keel.").empty());
    CHECK_FALSE(extract_statements("The turbine spins.").empty());
}

TEST_CASE("low-density sentences are dropped") {
    CHECK(extract_statements("It was from over there by the tall one of them.").empty());
}

TEST_CASE("chunking windows slide per document and cover every sentence") {
    std::vector<ContextDocument> docs;
    docs.push_back({"d1", "One fact here. Two facts here. Three facts here. Four facts here. "
                          "Five facts here.",
                    1});
    const std::vector<Passage> passages = chunk_context(docs, 3, 2);
    REQUIRE(passages.size() == 2);
    CHECK(passages[0].text == "One fact here. Two facts here. Three facts here.");
    CHECK(passages[1].text == "Three facts here. Four facts here. Five facts here.");
    CHECK(passages[0].doc_id == "d1");
    CHECK(passages[0].doc_rank == 1);
    CHECK(passages[1].start > 0);
}

TEST_CASE("final window clamps at the document tail") {
    std::vector<ContextDocument> docs;
    docs.push_back({"d1", "One fact here. Two facts here. Three facts here. Four facts here.", 1});
    const std::vector<Passage> passages = chunk_context(docs, 3, 2);
    REQUIRE(passages.size() == 2);
    CHECK(passages[1].text == "Three facts here. Four facts here.");
}

TEST_CASE("chunking validates window and stride") {
    std::vector<ContextDocument> docs{{"d1", "A fact.", 1}};
    CHECK_THROWS_AS(chunk_context(docs, 0, 1), std::invalid_argument);
    CHECK_THROWS_AS(chunk_context(docs, 2, 0), std::invalid_argument);
    CHECK_THROWS_AS(chunk_context(docs, 2, 3), std::invalid_argument);
}

TEST_CASE("empty documents produce no passages") {
    std::vector<ContextDocument> docs{{"d1", "   ", 1}, {"d2", "Real text here.", 2}};
    const std::vector<Passage> passages = chunk_context(docs, 3, 2);
    REQUIRE(passages.size() == 1);
    CHECK(passages[0].doc_id == "d2");
}

}  // TEST_SUITE
