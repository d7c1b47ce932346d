#include "ragmark/corruption.hpp"

#include <algorithm>
#include <optional>
#include <random>
#include <stdexcept>

#include "ragmark/errors.hpp"
#include "ragmark/segmentation.hpp"
#include "ragmark/tokenize.hpp"

namespace ragmark {
namespace {

std::size_t pick(std::mt19937_64& rng, std::size_t n) {
    return static_cast<std::size_t>(rng() % n);
}

bool is_auxiliary(std::string_view lower) {
    static const char* kAux[] = {"is",   "are",  "was",  "were",   "has", "have", "had",
                                 "can",  "could", "will", "would",  "does", "do",  "did",
                                 "should", "may", "might", "must", "shall"};
    for (const char* aux : kAux) {
        if (lower == aux) return true;
    }
    return false;
}

Interaction base_negative(const Interaction& interaction, CorruptionKind kind) {
    Interaction out = interaction;
    out.label = Label::Negative;
    out.metadata["corruption"] = std::string(to_string(kind));
    return out;
}

std::string strip_contraction(std::string_view lower) {
    if (lower == "can't") return "can";
    if (lower == "won't") return "will";
    if (lower == "shan't") return "shall";
    return std::string(lower.substr(0, lower.size() - 3));
}

std::optional<std::string> flip_polarity(const std::string& answer, const Statement& statement) {
    const std::vector<Token> tokens = tokenize(statement.text);

    for (const auto& token : tokens) {
        if (!is_negation_cue(token.lower)) continue;
        std::string out = answer;
        const std::size_t begin = statement.start + token.start;
        const std::size_t end = statement.start + token.end;
        if (token.lower.size() > 3 && token.lower.ends_with("n't")) {
            out.replace(begin, end - begin, strip_contraction(token.lower));
        } else if (end < out.size() && out[end] == ' ') {
            out.erase(begin, end - begin + 1);
        } else if (begin > 0 && out[begin - 1] == ' ') {
            out.erase(begin - 1, end - begin + 1);
        } else {
            out.erase(begin, end - begin);
        }
        return out;
    }

    for (const auto& token : tokens) {
        if (is_auxiliary(token.lower)) {
            std::string out = answer;
            out.insert(statement.start + token.end, " not");
            return out;
        }
    }

    for (const auto& token : tokens) {
        if (token.numeric) {
            unsigned long long value = std::stoull(token.lower);
            const std::string replacement = value == 0 ? "10" : std::to_string(value * 10);
            std::string out = answer;
            out.replace(statement.start + token.start, token.end - token.start, replacement);
            return out;
        }
    }
    return std::nullopt;
}

struct Site {
    enum Kind { Number, Entity } kind = Number;
    std::size_t start = 0;
    std::size_t end = 0;
    std::string text;
};

/// Numbers plus capitalized token runs that do not open a sentence.
std::vector<Site> candidate_sites(const std::string& answer) {
    const std::vector<Token> tokens = tokenize(answer);
    const std::vector<Sentence> sentences = split_sentences(answer);

    std::vector<bool> sentence_initial(tokens.size(), false);
    std::size_t t = 0;
    for (const auto& sentence : sentences) {
        while (t < tokens.size() && tokens[t].start < sentence.start) ++t;
        if (t < tokens.size() && tokens[t].end <= sentence.end) sentence_initial[t] = true;
    }

    std::vector<Site> sites;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        if (tokens[i].numeric) {
            sites.push_back({Site::Number, tokens[i].start, tokens[i].end, tokens[i].lower});
            continue;
        }
        if (!tokens[i].capitalized || sentence_initial[i]) continue;
        std::size_t j = i;
        while (j + 1 < tokens.size() && tokens[j + 1].capitalized && !tokens[j + 1].numeric) ++j;
        if (!(i == j && tokens[i].lower == "i")) {
            Site site;
            site.kind = Site::Entity;
            site.start = tokens[i].start;
            site.end = tokens[j].end;
            site.text = answer.substr(site.start, site.end - site.start);
            sites.push_back(std::move(site));
        }
        i = j;
    }
    return sites;
}

std::vector<std::string> donor_entities(const Interaction& interaction,
                                        const std::vector<Interaction>& donor_pool) {
    std::vector<std::string> entities;
    for (const auto& donor : donor_pool) {
        if (donor.id == interaction.id) continue;
        for (const auto& site : candidate_sites(donor.answer)) {
            if (site.kind == Site::Entity) entities.push_back(site.text);
        }
    }
    return entities;
}

bool context_contains(const Interaction& interaction, std::string_view needle) {
    for (const auto& doc : interaction.context) {
        if (doc.text.find(needle) != std::string::npos) return true;
    }
    return false;
}

void shuffle_indices(std::vector<std::size_t>& indices, std::mt19937_64& rng) {
    for (std::size_t i = indices.size(); i > 1; --i) {
        std::swap(indices[i - 1], indices[pick(rng, i)]);
    }
}

}  // namespace

std::string_view to_string(CorruptionKind kind) {
    switch (kind) {
        case CorruptionKind::Contradiction: return "contradiction";
        case CorruptionKind::Hallucination: return "hallucination";
        case CorruptionKind::IrrelevantFaithful: break;
    }
    return "irrelevant_faithful";
}

CorruptionKind corruption_kind_from_string(std::string_view text) {
    if (text == "contradiction") return CorruptionKind::Contradiction;
    if (text == "hallucination") return CorruptionKind::Hallucination;
    if (text == "irrelevant_faithful" || text == "irrelevant-faithful" || text == "irrelevant") {
        return CorruptionKind::IrrelevantFaithful;
    }
    throw std::invalid_argument("unknown corruption recipe: " + std::string(text));
}

Interaction corrupt_contradiction(const Interaction& interaction, std::uint64_t seed) {
    const std::vector<Statement> statements = extract_statements(interaction.answer);
    if (statements.empty()) throw NotCorruptibleError("no extractable statements in answer");
    std::mt19937_64 rng(seed);
    const std::size_t start = pick(rng, statements.size());
    for (std::size_t offset = 0; offset < statements.size(); ++offset) {
        const Statement& statement = statements[(start + offset) % statements.size()];
        if (auto flipped = flip_polarity(interaction.answer, statement)) {
            Interaction out = base_negative(interaction, CorruptionKind::Contradiction);
            out.answer = std::move(*flipped);
            return out;
        }
    }
    throw NotCorruptibleError("no statement with a flippable verb or number");
}

Interaction corrupt_hallucination(const Interaction& interaction,
                                  const std::vector<Interaction>& donor_pool,
                                  std::uint64_t seed) {
    const std::vector<Site> sites = candidate_sites(interaction.answer);
    if (sites.empty()) throw NotCorruptibleError("answer has no numbers or entities");

    std::mt19937_64 rng(seed);
    const std::size_t start = pick(rng, sites.size());
    std::optional<std::vector<std::string>> donors;

    for (std::size_t offset = 0; offset < sites.size(); ++offset) {
        const Site& site = sites[(start + offset) % sites.size()];
        std::optional<std::string> replacement;
        if (site.kind == Site::Number) {
            const unsigned long long value = std::stoull(site.text);
            const std::size_t first = pick(rng, 9);
            for (std::size_t i = 0; i < 9 && !replacement; ++i) {
                const unsigned long long delta = 1 + (first + i) % 9;
                std::string candidate = std::to_string(value + delta);
                if (candidate != site.text && !context_contains(interaction, candidate)) {
                    replacement = std::move(candidate);
                }
            }
        } else {
            if (!donors) donors = donor_entities(interaction, donor_pool);
            if (donors->empty()) continue;
            const std::size_t first = pick(rng, donors->size());
            for (std::size_t i = 0; i < donors->size() && !replacement; ++i) {
                const std::string& candidate = (*donors)[(first + i) % donors->size()];
                if (candidate != site.text && !context_contains(interaction, candidate)) {
                    replacement = candidate;
                }
            }
        }
        if (replacement) {
            Interaction out = base_negative(interaction, CorruptionKind::Hallucination);
            out.answer.replace(site.start, site.end - site.start, *replacement);
            return out;
        }
    }
    throw NotCorruptibleError("no substitutable token absent from the context");
}

Interaction corrupt_irrelevant(const Interaction& interaction,
                               const std::vector<Interaction>& pool, std::uint64_t seed) {
    (void)seed;
    const TermVector query = term_vector(interaction.question);
    const Interaction* best = nullptr;
    double best_similarity = -1.0;
    for (const auto& donor : pool) {
        if (donor.id == interaction.id) continue;
        const double similarity = cosine(query, term_vector(donor.question));
        if (similarity > best_similarity) {
            best_similarity = similarity;
            best = &donor;
        }
    }
    if (!best) throw NotCorruptibleError("no donor interaction available");

    Interaction out = base_negative(interaction, CorruptionKind::IrrelevantFaithful);
    out.answer = best->answer;
    out.context = best->context;
    out.metadata["corruption_donor"] = best->id;
    return out;
}

RecipeMix parse_recipe_mix(std::string_view text) {
    RecipeMix mix;
    std::size_t begin = 0;
    while (begin <= text.size()) {
        std::size_t end = text.find(',', begin);
        if (end == std::string_view::npos) end = text.size();
        const std::string_view item = text.substr(begin, end - begin);
        if (!item.empty()) {
            const std::size_t eq = item.find('=');
            if (eq == std::string_view::npos) {
                throw std::invalid_argument("mix entries must look like recipe=count");
            }
            const CorruptionKind kind = corruption_kind_from_string(item.substr(0, eq));
            const std::string count(item.substr(eq + 1));
            std::size_t parsed = 0;
            unsigned long value = 0;
            try {
                value = std::stoul(count, &parsed);
            } catch (const std::exception&) {
                throw std::invalid_argument("invalid mix count: " + count);
            }
            if (parsed != count.size()) throw std::invalid_argument("invalid mix count: " + count);
            mix[kind] = static_cast<std::size_t>(value);
        }
        begin = end + 1;
    }
    return mix;
}

BenchmarkDataset build_benchmark(const std::vector<Interaction>& clean, const RecipeMix& mix,
                                 std::uint64_t seed, std::string name) {
    BenchmarkDataset dataset;
    dataset.name = std::move(name);

    for (const auto& interaction : clean) {
        Interaction positive = interaction;
        positive.label = Label::Positive;
        dataset.interactions.push_back(std::move(positive));
    }
    dataset.positives = clean.size();

    std::vector<std::size_t> remaining(clean.size());
    for (std::size_t i = 0; i < remaining.size(); ++i) remaining[i] = i;
    std::mt19937_64 assign_rng(seed);
    shuffle_indices(remaining, assign_rng);

    static constexpr CorruptionKind kOrder[] = {CorruptionKind::Contradiction,
                                                CorruptionKind::Hallucination,
                                                CorruptionKind::IrrelevantFaithful};
    for (CorruptionKind kind : kOrder) {
        auto it = mix.find(kind);
        if (it == mix.end() || it->second == 0) continue;
        const std::size_t requested = it->second;
        std::size_t produced = 0;
        std::vector<std::size_t> leftover;
        for (std::size_t idx : remaining) {
            if (produced == requested) {
                leftover.push_back(idx);
                continue;
            }
            const std::uint64_t sample_seed = seed ^ static_cast<std::uint64_t>(idx);
            try {
                Interaction corrupted;
                switch (kind) {
                    case CorruptionKind::Contradiction:
                        corrupted = corrupt_contradiction(clean[idx], sample_seed);
                        break;
                    case CorruptionKind::Hallucination:
                        corrupted = corrupt_hallucination(clean[idx], clean, sample_seed);
                        break;
                    case CorruptionKind::IrrelevantFaithful:
                        corrupted = corrupt_irrelevant(clean[idx], clean, sample_seed);
                        break;
                }
                corrupted.id += "::" + std::string(to_string(kind));
                dataset.interactions.push_back(std::move(corrupted));
                ++produced;
            } catch (const NotCorruptibleError&) {
                leftover.push_back(idx);
            }
        }
        if (produced < requested) {
            throw NotCorruptibleError("recipe " + std::string(to_string(kind)) + ": requested " +
                                      std::to_string(requested) + ", only " +
                                      std::to_string(produced) + " samples corruptible");
        }
        dataset.negatives += produced;
        remaining = std::move(leftover);
    }

    std::mt19937_64 order_rng(seed ^ 0x9e3779b97f4a7c15ULL);
    for (std::size_t i = dataset.interactions.size(); i > 1; --i) {
        std::swap(dataset.interactions[i - 1], dataset.interactions[pick(order_rng, i)]);
    }
    return dataset;
}

}  // namespace ragmark
