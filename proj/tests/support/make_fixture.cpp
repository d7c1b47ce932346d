#include <cstdio>
#include <filesystem>
#include <string>

#include "ragmark/config.hpp"
#include "ragmark/dataset.hpp"
#include "support/corpus.hpp"

// Regenerates the committed fixtures: the 100-sample clean corpus and the
// default engine config. Run with the target directory as the only
// argument.
int main(int argc, char** argv) {
    if (argc != 2) {
        std::fprintf(stderr, "usage: %s <data-dir>\n", argv[0]);
        return 2;
    }
    const std::string dir = argv[1];
    std::filesystem::create_directories(dir);
    ragmark::save_dataset(dir + "/clean_corpus.jsonl", ragmark::testing::make_clean_corpus(100));
    ragmark::save_config(ragmark::EvalConfig{}, dir + "/default_config.json");
    return 0;
}
