#include "ragmark/tokenize.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <unordered_set>

namespace ragmark {
namespace {

bool is_word_byte(unsigned char c) {
    return std::isalnum(c) || c == '_' || c >= 0x80;
}

// ~125 function words. Negation cues and auxiliaries are included so that
// content-token coverage is insensitive to polarity (polarity is scored
// separately, per clause). Interrogative leads are deliberately absent.
const std::unordered_set<std::string_view>& stopword_set() {
    static const std::unordered_set<std::string_view> kStopwords = {
        "a", "about", "above", "after", "again", "against", "all", "also", "am", "an",
        "and", "any", "are", "as", "at", "be", "because", "been", "before", "being",
        "below", "between", "both", "but", "by", "can", "could", "did", "do", "does",
        "doing", "down", "during", "each", "few", "for", "from", "further", "had",
        "has", "have", "having", "he", "her", "here", "hers", "herself", "him",
        "himself", "his", "i", "if", "in", "into", "is", "it", "its", "itself",
        "just", "may", "me", "might", "more", "most", "must", "my", "myself",
        "neither", "never", "no", "nor", "not", "of", "off", "on", "once", "only",
        "or", "other", "our", "ours", "ourselves", "out", "over", "own", "same",
        "shall", "she", "should", "so", "some", "such", "than", "that", "the",
        "their", "theirs", "them", "themselves", "then", "there", "these", "they",
        "this", "those", "through", "to", "too", "under", "until", "up", "very",
        "was", "we", "were", "will", "with", "without", "would", "you", "your",
        "yours", "yourself", "yourselves",
    };
    return kStopwords;
}

}  // namespace

std::vector<Token> tokenize(std::string_view text) {
    std::vector<Token> tokens;
    std::size_t i = 0;
    const std::size_t n = text.size();
    while (i < n) {
        unsigned char c = static_cast<unsigned char>(text[i]);
        if (!is_word_byte(c)) {
            ++i;
            continue;
        }
        std::size_t start = i;
        while (i < n) {
            unsigned char cur = static_cast<unsigned char>(text[i]);
            if (is_word_byte(cur)) {
                ++i;
                continue;
            }
            // keep an apostrophe joining two word bytes ("don't")
            if (cur == '\'' && i + 1 < n && is_word_byte(static_cast<unsigned char>(text[i + 1]))) {
                i += 2;
                continue;
            }
            break;
        }
        Token token;
        token.start = start;
        token.end = i;
        token.capitalized = std::isupper(static_cast<unsigned char>(text[start])) != 0;
        token.numeric = true;
        token.lower.reserve(i - start);
        for (std::size_t k = start; k < i; ++k) {
            unsigned char b = static_cast<unsigned char>(text[k]);
            if (!std::isdigit(b)) token.numeric = false;
            token.lower.push_back(b < 0x80 ? static_cast<char>(std::tolower(b))
                                           : static_cast<char>(b));
        }
        tokens.push_back(std::move(token));
    }
    return tokens;
}

bool is_stopword(std::string_view lower) {
    return stopword_set().count(lower) > 0;
}

bool is_content_token(const Token& token) {
    if (token.numeric) return true;
    if (token.lower.size() < 2) return false;
    return !is_stopword(token.lower);
}

std::vector<Token> content_tokens(std::string_view text) {
    std::vector<Token> out;
    for (auto& token : tokenize(text)) {
        if (is_content_token(token)) out.push_back(std::move(token));
    }
    return out;
}

TermVector term_vector(std::string_view text) {
    std::map<std::string, int, std::less<>> counts;
    for (const auto& token : content_tokens(text)) counts[token.lower] += 1;
    TermVector vec;
    for (const auto& [term, count] : counts) vec[term] = 1.0 + std::log(static_cast<double>(count));
    return vec;
}

double cosine(const TermVector& a, const TermVector& b) {
    if (a.empty() || b.empty()) return 0.0;
    double dot = 0.0;
    for (const auto& [term, weight] : a) {
        auto it = b.find(term);
        if (it != b.end()) dot += weight * it->second;
    }
    if (dot == 0.0) return 0.0;
    auto norm = [](const TermVector& v) {
        double sum = 0.0;
        for (const auto& [term, weight] : v) sum += weight * weight;
        return std::sqrt(sum);
    };
    return dot / (norm(a) * norm(b));
}

double cosine(std::string_view a, std::string_view b) {
    return cosine(term_vector(a), term_vector(b));
}

bool is_negation_cue(std::string_view lower) {
    static const std::array<std::string_view, 6> kCues = {"not", "no",      "never",
                                                          "nor", "neither", "without"};
    if (std::find(kCues.begin(), kCues.end(), lower) != kCues.end()) return true;
    return lower.size() > 3 && lower.ends_with("n't");
}

std::vector<Clause> split_clauses(std::string_view text) {
    static const std::array<std::string_view, 3> kConjunctions = {"and", "but", "or"};
    std::vector<Clause> clauses;
    Clause current;
    std::size_t prev_end = 0;
    for (auto& token : tokenize(text)) {
        bool gap_breaks = false;
        for (std::size_t k = prev_end; k < token.start; ++k) {
            if (text[k] == ',' || text[k] == ';') gap_breaks = true;
        }
        bool conj = std::find(kConjunctions.begin(), kConjunctions.end(), token.lower) !=
                    kConjunctions.end();
        if ((gap_breaks || conj) && !current.tokens.empty()) {
            clauses.push_back(std::move(current));
            current = Clause{};
        }
        prev_end = token.end;
        if (conj) continue;  // the conjunction itself belongs to no clause
        if (is_negation_cue(token.lower)) current.negated = !current.negated;
        current.tokens.push_back(std::move(token));
    }
    if (!current.tokens.empty()) clauses.push_back(std::move(current));
    return clauses;
}

std::string fnv1a_hex(std::string_view bytes) {
    std::uint64_t hash = 0xcbf29ce484222325ull;
    for (unsigned char c : bytes) {
        hash ^= c;
        hash *= 0x100000001b3ull;
    }
    static const char* kHex = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = kHex[hash & 0xf];
        hash >>= 4;
    }
    return out;
}

std::string normalize_text(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    bool in_space = true;
    for (unsigned char c : text) {
        if (std::isspace(c)) {
            if (!in_space) out.push_back(' ');
            in_space = true;
        } else {
            out.push_back(c < 0x80 ? static_cast<char>(std::tolower(c)) : static_cast<char>(c));
            in_space = false;
        }
    }
    while (!out.empty() && out.back() == ' ') out.pop_back();
    return out;
}

}  // namespace ragmark
