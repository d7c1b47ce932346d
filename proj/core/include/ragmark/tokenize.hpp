#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace ragmark {

/// A word token with its byte span into the source text. `lower` is the
/// ASCII-lowercased form used for all lexical comparisons.
struct Token {
    std::string lower;
    std::size_t start = 0;
    std::size_t end = 0;
    bool capitalized = false;  // first byte is ASCII uppercase
    bool numeric = false;      // all bytes are ASCII digits
};

/// Splits text into word tokens: maximal runs of alphanumerics (bytes
/// >= 0x80 count as letters so UTF-8 sequences stay intact), keeping
/// apostrophes between alphanumerics ("don't" is one token).
std::vector<Token> tokenize(std::string_view text);

/// True for function words excluded from content-token comparisons.
/// Negation cues and auxiliaries are stopwords; interrogative leads
/// (who/what/when/...) are not, so question parts keep their anchor token.
bool is_stopword(std::string_view lower);

/// Content tokens: non-stopword tokens of length >= 2, plus all numbers.
bool is_content_token(const Token& token);

std::vector<Token> content_tokens(std::string_view text);

/// Sublinear term-frequency vector (1 + ln tf) over content tokens.
using TermVector = std::map<std::string, double, std::less<>>;

TermVector term_vector(std::string_view text);

/// Cosine similarity of two term vectors; 0 when either is empty.
double cosine(const TermVector& a, const TermVector& b);
double cosine(std::string_view a, std::string_view b);

/// Negation cues: not/no/never/neither/nor/without plus n't suffixes.
bool is_negation_cue(std::string_view lower);

/// A clause: a run of tokens delimited by commas, semicolons, or the
/// coordinating conjunctions and/but/or. Polarity is negative when the
/// clause holds an odd number of negation cues.
struct Clause {
    std::vector<Token> tokens;
    bool negated = false;
};

std::vector<Clause> split_clauses(std::string_view text);

/// FNV-1a 64-bit hash, hex encoded. Stable across platforms and runs.
std::string fnv1a_hex(std::string_view bytes);

/// Lowercases and collapses runs of whitespace to single spaces; used to
/// match question text across versions.
std::string normalize_text(std::string_view text);

}  // namespace ragmark
