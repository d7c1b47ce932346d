#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "ragmark/model.hpp"

namespace ragmark {

enum class CorruptionKind { Contradiction, Hallucination, IrrelevantFaithful };

std::string_view to_string(CorruptionKind kind);
CorruptionKind corruption_kind_from_string(std::string_view text);

/// Flips the polarity of one seeded-random statement: an existing
/// negation is removed, otherwise "not" is inserted after the first
/// auxiliary verb, otherwise a number is shifted by an order of
/// magnitude. Context stays untouched; the output is labeled negative
/// with metadata.corruption set. Throws NotCorruptibleError when no
/// statement can be flipped.
Interaction corrupt_contradiction(const Interaction& interaction, std::uint64_t seed);

/// Replaces one number or capitalized entity in the answer with a
/// same-type token that is absent from this interaction's context and
/// differs from the original. Numbers get a seeded nonzero delta;
/// entities are drawn from the donor pool's answers.
Interaction corrupt_hallucination(const Interaction& interaction,
                                  const std::vector<Interaction>& donor_pool, std::uint64_t seed);

/// Transplants the answer and context of the pool interaction whose
/// question is most cosine-similar to this one (self excluded, earliest
/// donor wins ties). The donor pair stays mutually faithful.
Interaction corrupt_irrelevant(const Interaction& interaction,
                               const std::vector<Interaction>& pool, std::uint64_t seed);

struct BenchmarkDataset {
    std::string name;
    std::vector<Interaction> interactions;
    std::size_t positives = 0;
    std::size_t negatives = 0;
};

using RecipeMix = std::map<CorruptionKind, std::size_t>;

RecipeMix parse_recipe_mix(std::string_view text);

/// Emits every clean sample as a labeled positive plus the requested
/// number of corrupted negatives per recipe, shuffled by seed. Negative
/// ids carry a "::recipe" suffix. Per-sample corruption seeds derive
/// from seed XOR the sample's index in `clean`. Throws
/// NotCorruptibleError naming the recipe and shortfall when too few
/// samples can be corrupted.
BenchmarkDataset build_benchmark(const std::vector<Interaction>& clean, const RecipeMix& mix,
                                 std::uint64_t seed, std::string name = "corrupted");

}  // namespace ragmark
