#include <benchmark/benchmark.h>

#include "piex/lexicon.h"
#include "piex/overlap.h"

namespace {

const std::string kData = PIEX_BENCH_DATA;

void BM_Levenshtein(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(piex::levenshtein_ratio("make a mountain out of a molehill",
                                                         "make mountains out of molehills"));
    }
}
BENCHMARK(BM_Levenshtein);

void BM_CandidatePairs(benchmark::State& state) {
    static const auto a = piex::load_lexicon(kData + "/lexicon591.tsv", "a");
    static const auto b = piex::load_lexicon(kData + "/lexicon.tsv", "b");
    for (auto _ : state) benchmark::DoNotOptimize(piex::candidate_pairs(a, b));
}
BENCHMARK(BM_CandidatePairs)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
