// Serial reference kernels against their OpenMP counterparts.

#include <benchmark/benchmark.h>

#include "fixtures.hpp"
#include "kpindex/parallel.hpp"
#include "kpindex/pipeline.hpp"
#include "kpindex/similarity.hpp"

namespace {

const kpindex::Corpus& corpus_of(std::size_t docs_per_topic) {
  static std::map<std::size_t, kpindex::Corpus> cache;
  auto it = cache.find(docs_per_topic);
  if (it == cache.end()) {
    const auto synth = kpindex::testing::synthetic_corpus({.docs_per_topic = docs_per_topic});
    it = cache.emplace(docs_per_topic, kpindex::testing::make_corpus(synth.docs)).first;
  }
  return it->second;
}

void BM_NeighborsSerial(benchmark::State& state) {
  const kpindex::TfidfSimilarity provider(corpus_of(static_cast<std::size_t>(state.range(0))));
  for (auto _ : state) {
    benchmark::DoNotOptimize(kpindex::all_neighbors_serial(provider, 5, 0.1));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(provider.size()));
}

void BM_NeighborsParallel(benchmark::State& state) {
  const kpindex::TfidfSimilarity provider(corpus_of(static_cast<std::size_t>(state.range(0))));
  for (auto _ : state) {
    benchmark::DoNotOptimize(kpindex::all_neighbors(provider, 5, 0.1));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(provider.size()));
  state.counters["threads"] = kpindex::parallel::threads();
}

void BM_ExtractSerial(benchmark::State& state) {
  const auto& corpus = corpus_of(static_cast<std::size_t>(state.range(0)));
  const kpindex::KeyphraseExtractor ex(corpus, kpindex::Config{});
  for (auto _ : state) {
    std::vector<kpindex::Ranking> out;
    out.reserve(corpus.size());
    for (std::size_t i = 0; i < corpus.size(); ++i) out.push_back(ex.extract(i));
    benchmark::DoNotOptimize(out);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(corpus.size()));
}

void BM_ExtractParallel(benchmark::State& state) {
  const auto& corpus = corpus_of(static_cast<std::size_t>(state.range(0)));
  const kpindex::KeyphraseExtractor ex(corpus, kpindex::Config{});
  for (auto _ : state) {
    benchmark::DoNotOptimize(ex.extract_all());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(corpus.size()));
  state.counters["threads"] = kpindex::parallel::threads();
}

}  // namespace

BENCHMARK(BM_NeighborsSerial)->Arg(20)->Arg(100)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_NeighborsParallel)->Arg(20)->Arg(100)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ExtractSerial)->Arg(20)->Arg(100)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ExtractParallel)->Arg(20)->Arg(100)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
