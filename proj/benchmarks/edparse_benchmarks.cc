#include <benchmark/benchmark.h>

#include <map>
#include <string>

#include "edparse/conllu.h"
#include "edparse/features.h"
#include "edparse/oracle.h"
#include "edparse/policy.h"

namespace edparse {
namespace {

const Document& Fixture(const std::string& name) {
  static std::map<std::string, Document> cache;
  auto it = cache.find(name);
  if (it == cache.end()) {
    it = cache.emplace(name, ReadConlluFile(std::string(EDPARSE_BENCH_DATA_DIR) +
                                            "/" + name))
             .first;
  }
  return it->second;
}

void BM_OracleFigure2(benchmark::State& state) {
  const Sentence& s = Fixture("figure2.conllu")[0];
  const EnhancedGraph gold = ExtractGraph(s);
  for (auto _ : state) {
    benchmark::DoNotOptimize(OracleSequence(gold, s.WordCount()));
  }
}
BENCHMARK(BM_OracleFigure2);

void BM_OracleParseSynthetic(benchmark::State& state) {
  const Document& doc = Fixture("synthetic50.conllu");
  std::vector<EnhancedGraph> gold;
  std::int64_t words = 0;
  for (const Sentence& s : doc) {
    gold.push_back(ExtractGraph(s));
    words += s.WordCount();
  }
  for (auto _ : state) {
    for (size_t i = 0; i < doc.size(); ++i) {
      OraclePolicy policy(gold[i]);
      benchmark::DoNotOptimize(Parse(doc[i], policy));
    }
  }
  state.counters["words/s"] = benchmark::Counter(
      static_cast<double>(words * state.iterations()),
      benchmark::Counter::kIsRate);
}
BENCHMARK(BM_OracleParseSynthetic)->Unit(benchmark::kMillisecond);

void BM_FeaturizeFigure2Trace(benchmark::State& state) {
  const Sentence& s = Fixture("figure2.conllu")[0];
  const SentenceContext context(s);
  const OracleResult result = OracleSequence(ExtractGraph(s), s.WordCount());
  std::vector<Configuration> configs;
  TransitionSystem system;
  Configuration c = Configuration::Initial(s.WordCount());
  for (const TraceStep& step : result.steps) {
    configs.push_back(c);
    system.Apply(c, step.transition);
  }
  for (auto _ : state) {
    for (const Configuration& config : configs) {
      benchmark::DoNotOptimize(Featurize(config, context));
    }
  }
  state.SetItemsProcessed(state.iterations() *
                          static_cast<std::int64_t>(configs.size()));
}
BENCHMARK(BM_FeaturizeFigure2Trace);

}  // namespace
}  // namespace edparse

BENCHMARK_MAIN();
