// Parallel kernels against their serial references.

#include <benchmark/benchmark.h>

#include <random>
#include <string>
#include <vector>

#include "dmaug/alignment.hpp"
#include "dmaug/artificial.hpp"
#include "dmaug/pipeline.hpp"

using namespace dmaug;

namespace {

const std::vector<std::string> kWords = {"cats", "rain", "people", "should", "vote", "taxes", "help", "the",
                                         "city", "runs", "green", "energy", "costs", "money", "we", "it"};

TokenSequence random_tokens(std::mt19937_64& rng, std::size_t n) {
  std::vector<std::string> t;
  for (std::size_t i = 0; i < n; ++i) t.push_back(kWords[rng() % kWords.size()]);
  return TokenSequence(std::move(t));
}

// Paragraph with ADU labels and a copy with connectives inserted.
struct Pair {
  TokenSequence x, x_m;
  LabelSequence y;
};

Pair random_pair(std::mt19937_64& rng, std::size_t len) {
  Pair p;
  p.x = random_tokens(rng, len);
  std::vector<std::string> y(len, "O");
  for (std::size_t s = 0; s + 6 < len; s += 10) {
    y[s] = "B-Claim";
    for (std::size_t k = 1; k < 6; ++k) y[s + k] = "I-Claim";
  }
  p.y = LabelSequence(std::move(y));
  std::vector<std::string> m;
  for (std::size_t i = 0; i < len; ++i) {
    if (p.y[i][0] == 'B') {
      m.push_back("Moreover");
      m.push_back(",");
    }
    m.push_back(p.x[i]);
  }
  p.x_m = TokenSequence(std::move(m));
  return p;
}

std::vector<Pair> pairs(std::size_t n, std::size_t len) {
  std::mt19937_64 rng(7);
  std::vector<Pair> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(random_pair(rng, len));
  return out;
}

void BM_nw_score(benchmark::State& state) {
  std::mt19937_64 rng(1);
  const auto a = random_tokens(rng, static_cast<std::size_t>(state.range(0)));
  const auto b = random_tokens(rng, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(nw_score(a, b));
}

void BM_nw_score_wavefront(benchmark::State& state) {
  std::mt19937_64 rng(1);
  const auto a = random_tokens(rng, static_cast<std::size_t>(state.range(0)));
  const auto b = random_tokens(rng, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(nw_score_wavefront(a, b));
}

template <bool Parallel>
void BM_project_batch(benchmark::State& state) {
  const auto ps = pairs(static_cast<std::size_t>(state.range(0)), 120);
  std::vector<ProjectionTask> tasks;
  for (const auto& p : ps) tasks.push_back({&p.x, &p.y, &p.x_m});
  for (auto _ : state) {
    auto r = Parallel ? project_batch(tasks) : project_batch_serial(tasks);
    benchmark::DoNotOptimize(r);
  }
}

const std::vector<CoreElements>& cores() {
  static const auto c = read_cores(std::string(DMAUG_DATA_DIR) + "/demo_cores.tsv");
  return c;
}

template <bool Parallel>
void BM_generate_split(benchmark::State& state) {
  const std::set<StanceRole> both = {StanceRole::original, StanceRole::opposite};
  const DmPolicy policy;
  for (auto _ : state) {
    auto r = Parallel ? generate_split(cores(), both, policy) : generate_split_serial(cores(), both, policy);
    benchmark::DoNotOptimize(r);
  }
}

template <bool Parallel>
void BM_prepare_corpus(benchmark::State& state) {
  std::vector<LabeledSequence> corpus;
  for (const auto& s : generate_split(cores(), {StanceRole::original, StanceRole::opposite}, DmPolicy{})) {
    const auto toks = tokenize(s.full_text);
    corpus.push_back({toks, spans_to_bio(s.adu_spans, toks.size())});
  }
  RunConfig cfg;
  cfg.input_mode = InputMode::removed_dms;
  cfg.augmenter = AugmenterKind::rule;
  cfg.schema = CorpusSchema::artificial();
  cfg.role_map = default_role_map(cfg.schema);
  for (auto _ : state) {
    auto r = Parallel ? prepare_corpus(corpus, cfg) : prepare_corpus_serial(corpus, cfg);
    benchmark::DoNotOptimize(r);
  }
}

}  // namespace

BENCHMARK(BM_nw_score)->Arg(256)->Arg(2048);
BENCHMARK(BM_nw_score_wavefront)->Arg(256)->Arg(2048);
BENCHMARK_TEMPLATE(BM_project_batch, false)->Arg(500);
BENCHMARK_TEMPLATE(BM_project_batch, true)->Arg(500);
BENCHMARK_TEMPLATE(BM_generate_split, false);
BENCHMARK_TEMPLATE(BM_generate_split, true);
BENCHMARK_TEMPLATE(BM_prepare_corpus, false);
BENCHMARK_TEMPLATE(BM_prepare_corpus, true);

BENCHMARK_MAIN();
