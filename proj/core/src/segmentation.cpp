#include "ragmark/segmentation.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <stdexcept>

#include "ragmark/tokenize.hpp"

namespace ragmark {
namespace {

constexpr std::array<std::string_view, 9> kAbbreviations = {
    "dr.", "mr.", "mrs.", "e.g.", "i.e.", "etc.", "vs.", "no.", "fig.",
};

bool is_terminator(char c) {
    return c == '.' || c == '!' || c == '?';
}

// The word (letters and internal dots) ending at `dot_pos`, dot included.
std::string word_before_dot(std::string_view text, std::size_t dot_pos) {
    std::size_t begin = dot_pos;
    while (begin > 0) {
        unsigned char c = static_cast<unsigned char>(text[begin - 1]);
        if (std::isalpha(c) || c == '.') {
            --begin;
        } else {
            break;
        }
    }
    std::string word(text.substr(begin, dot_pos - begin + 1));
    std::transform(word.begin(), word.end(), word.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return word;
}

bool is_abbreviation(std::string_view text, std::size_t dot_pos) {
    if (text[dot_pos] != '.') return false;
    std::string word = word_before_dot(text, dot_pos);
    return std::find(kAbbreviations.begin(), kAbbreviations.end(), word) != kAbbreviations.end();
}

// After a terminator run: boundary iff end of text, or whitespace followed
// by an uppercase letter (skipping opening quotes/brackets).
bool boundary_follows(std::string_view text, std::size_t pos) {
    if (pos >= text.size()) return true;
    if (!std::isspace(static_cast<unsigned char>(text[pos]))) return false;
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    while (pos < text.size() &&
           (text[pos] == '"' || text[pos] == '\'' || text[pos] == '(' || text[pos] == '[')) {
        ++pos;
    }
    if (pos >= text.size()) return true;
    return std::isupper(static_cast<unsigned char>(text[pos])) != 0;
}

constexpr std::array<std::string_view, 16> kImperativeLeads = {
    "please", "see", "note", "consider", "check", "visit", "click", "try",
    "refer", "remember", "contact", "call", "read", "use", "follow", "ensure",
};

// Phrases that mark chit-chat, refusals, and assistant boilerplate.
// Matched case-insensitively anywhere in the sentence.
constexpr std::array<std::string_view, 16> kBoilerplatePhrases = {
    "i hope this helps", "hope this helps", "as an ai",      "let me know",
    "feel free to",      "i'm sorry",       "i am sorry",    "i apologize",
    "i cannot",          "i can't",         "i'm unable",    "i am unable",
    "i don't know",      "i do not know",   "you're welcome", "my pleasure",
};

constexpr std::array<std::string_view, 7> kGreetingLeads = {
    "thanks", "thank", "hello", "hi", "hey", "greetings", "dear",
};

bool contains_phrase(const std::string& lower_sentence, std::string_view phrase) {
    return lower_sentence.find(phrase) != std::string::npos;
}

std::string ascii_lower(std::string_view text) {
    std::string out(text);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) {
        return c < 0x80 ? static_cast<char>(std::tolower(c)) : static_cast<char>(c);
    });
    return out;
}

}  // namespace

std::vector<Sentence> split_sentences(std::string_view text) {
    std::vector<Sentence> sentences;
    std::size_t i = 0;
    const std::size_t n = text.size();
    while (i < n) {
        while (i < n && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
        if (i >= n) break;
        std::size_t start = i;
        std::size_t end = n;
        for (std::size_t k = i; k < n; ++k) {
            if (!is_terminator(text[k])) continue;
            if (is_abbreviation(text, k)) continue;
            std::size_t run_end = k + 1;
            while (run_end < n && is_terminator(text[run_end])) ++run_end;
            if (boundary_follows(text, run_end)) {
                end = run_end;
                break;
            }
            k = run_end - 1;
        }
        // trim trailing whitespace inside the span (none by construction,
        // but a terminator-less tail can end in spaces)
        while (end > start && std::isspace(static_cast<unsigned char>(text[end - 1]))) --end;
        sentences.push_back(Sentence{std::string(text.substr(start, end - start)), start, end});
        i = end;
    }
    return sentences;
}

std::vector<Statement> HeuristicStatementExtractor::extract(std::string_view answer) const {
    std::vector<Statement> statements;
    for (const auto& sentence : split_sentences(answer)) {
        if (!sentence.text.empty() && sentence.text.back() == '?') continue;  // interrogative

        auto tokens = tokenize(sentence.text);
        if (tokens.empty()) continue;

        if (std::find(kImperativeLeads.begin(), kImperativeLeads.end(), tokens.front().lower) !=
            kImperativeLeads.end()) {
            continue;
        }
        std::string lower = ascii_lower(sentence.text);
        bool boilerplate =
            std::any_of(kBoilerplatePhrases.begin(), kBoilerplatePhrases.end(),
                        [&](std::string_view phrase) { return contains_phrase(lower, phrase); });
        if (!boilerplate &&
            std::find(kGreetingLeads.begin(), kGreetingLeads.end(), tokens.front().lower) !=
                kGreetingLeads.end()) {
            boilerplate = true;
        }
        if (boilerplate) continue;

        // density counts every non-stopword, including unit letters like
        // "m"; the anchor check is stricter
        std::size_t content = 0;
        bool has_anchor = false;
        for (std::size_t t = 0; t < tokens.size(); ++t) {
            const auto& token = tokens[t];
            if (is_stopword(token.lower)) continue;
            ++content;
            if (token.numeric || (t > 0 && token.capitalized) ||
                (!token.numeric && token.lower.size() >= 4)) {
                has_anchor = true;
            }
        }
        if (content == 0 || !has_anchor) continue;

        double density = static_cast<double>(content) / static_cast<double>(tokens.size());
        if (density < kDensityThreshold) continue;

        statements.push_back(Statement{sentence.text, sentence.start, sentence.end, density});
    }
    return statements;
}

std::vector<Statement> extract_statements(std::string_view answer) {
    static const HeuristicStatementExtractor extractor;
    return extractor.extract(answer);
}

std::vector<Passage> chunk_context(const std::vector<ContextDocument>& docs, int window_size,
                                   int stride) {
    if (window_size < 1) throw std::invalid_argument("chunk_context: window_size must be >= 1");
    if (stride < 1 || stride > window_size) {
        throw std::invalid_argument("chunk_context: stride must satisfy 1 <= stride <= window_size");
    }
    std::vector<Passage> passages;
    for (const auto& doc : docs) {
        auto sentences = split_sentences(doc.text);
        if (sentences.empty()) continue;
        const std::size_t n = sentences.size();
        const std::size_t window = static_cast<std::size_t>(window_size);
        for (std::size_t start = 0;; start += static_cast<std::size_t>(stride)) {
            std::size_t last = std::min(start + window, n) - 1;
            Passage passage;
            passage.doc_id = doc.doc_id;
            passage.doc_rank = doc.rank;
            passage.start = sentences[start].start;
            passage.end = sentences[last].end;
            passage.text = doc.text.substr(passage.start, passage.end - passage.start);
            passages.push_back(std::move(passage));
            if (start + window >= n) break;
        }
    }
    return passages;
}

}  // namespace ragmark
