#include <benchmark/benchmark.h>

#include <string>
#include <vector>

#include "ragmark/config.hpp"
#include "ragmark/grounded.hpp"
#include "ragmark/judge.hpp"
#include "ragmark/model.hpp"
#include "ragmark/segmentation.hpp"

namespace {

ragmark::Interaction sample_interaction(int sentences_per_doc) {
    ragmark::Interaction interaction;
    interaction.id = "bench-1";
    interaction.question = "How long is the Elbe river and where does it rise?";
    std::string text;
    for (int i = 0; i < sentences_per_doc; ++i) {
        text += "The Elbe river is 1094 kilometers long and rises in the Krkonose mountains. ";
        text += "It flows through Germany before reaching the North Sea near Cuxhaven. ";
    }
    interaction.context.push_back({"doc-1", text, 1});
    interaction.context.push_back({"doc-2", text, 2});
    interaction.answer =
        "The Elbe is 1094 kilometers long. It rises in the Krkonose mountains. "
        "The river reaches the North Sea near Cuxhaven after crossing Germany.";
    return interaction;
}

void BM_ChunkContext(benchmark::State& state) {
    const ragmark::Interaction interaction = sample_interaction(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(ragmark::chunk_context(interaction.context, 3, 2));
    }
}
BENCHMARK(BM_ChunkContext)->Arg(8)->Arg(64);

void BM_RetrievePassages(benchmark::State& state) {
    const ragmark::Interaction interaction = sample_interaction(static_cast<int>(state.range(0)));
    const std::vector<ragmark::Passage> passages =
        ragmark::chunk_context(interaction.context, 3, 2);
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            ragmark::retrieve_passages(interaction.answer, passages, 3));
    }
}
BENCHMARK(BM_RetrievePassages)->Arg(8)->Arg(64);

void BM_GroundedPipeline(benchmark::State& state) {
    const ragmark::Interaction interaction = sample_interaction(static_cast<int>(state.range(0)));
    ragmark::LexicalJudge judge;
    const ragmark::GroundedConfig config;
    for (auto _ : state) {
        benchmark::DoNotOptimize(ragmark::grounded_in_context(interaction, judge, config));
    }
}
BENCHMARK(BM_GroundedPipeline)->Arg(4)->Arg(32);

}  // namespace
