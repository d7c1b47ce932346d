#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "ragmark/model.hpp"

namespace ragmark {

/// A sentence with its byte span into the source text. Spans are
/// non-overlapping, ascending, and cover every non-whitespace byte.
struct Sentence {
    std::string text;
    std::size_t start = 0;
    std::size_t end = 0;

    bool operator==(const Sentence&) const = default;
};

/// A factual claim extracted from an answer, with its span and an
/// information-density score (fraction of content tokens).
struct Statement {
    std::string text;
    std::size_t start = 0;
    std::size_t end = 0;
    double density = 0.0;

    bool operator==(const Statement&) const = default;
};

/// A window of consecutive sentences from one context document.
struct Passage {
    std::string doc_id;
    int doc_rank = 0;
    std::size_t start = 0;  // byte span into the document text
    std::size_t end = 0;
    std::string text;

    bool operator==(const Passage&) const = default;
};

/// Rule-based segmentation: a sentence ends at {. ! ?} followed by
/// whitespace and an uppercase letter (or end of text), guarded by a fixed
/// abbreviation list (Dr., Mr., Mrs., e.g., i.e., etc., vs., No., Fig.).
std::vector<Sentence> split_sentences(std::string_view text);

/// Pluggable statement extraction. The default heuristic keeps declarative
/// sentences that carry at least one content token and one factual anchor
/// (number, mid-sentence capitalized token, or a content token of >= 4
/// characters), dropping interrogatives, imperative leads, and boilerplate.
class StatementExtractor {
public:
    virtual ~StatementExtractor() = default;
    virtual std::vector<Statement> extract(std::string_view answer) const = 0;
};

class HeuristicStatementExtractor final : public StatementExtractor {
public:
    static constexpr double kDensityThreshold = 0.3;

    std::vector<Statement> extract(std::string_view answer) const override;
};

/// Extraction with the default heuristic extractor.
std::vector<Statement> extract_statements(std::string_view answer);

/// Sliding sentence windows per document. Every sentence lands in at
/// least one passage; the final window is clamped at the document tail.
/// Throws std::invalid_argument unless window_size >= 1 and
/// 1 <= stride <= window_size.
std::vector<Passage> chunk_context(const std::vector<ContextDocument>& docs, int window_size,
                                   int stride);

}  // namespace ragmark
