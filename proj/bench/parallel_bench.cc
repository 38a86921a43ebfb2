// Copyright 2026 The ranlay Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// OpenMP kernels against their serial references.

#include <benchmark/benchmark.h>

#include "ranlay/composer.h"
#include "ranlay/crop_bank.h"
#include "ranlay/metrics.h"
#include "test_util.h"

namespace ranlay {
namespace {

GenConfig BenchConfig(int64_t pages) {
  GenConfig cfg;
  cfg.page_count = pages;
  cfg.master_seed = 11;
  cfg.noise = {0.05, 1.0};
  return cfg;
}

const CropBank& Bank() {
  static const CropBank bank = testing::MakeSyntheticBank(20, 3);
  return bank;
}

void BM_ComposePages(benchmark::State& state) {
  const GenConfig cfg = BenchConfig(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(ComposePages(Bank(), cfg));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_ComposePagesSerial(benchmark::State& state) {
  const GenConfig cfg = BenchConfig(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(ComposePagesSerial(Bank(), cfg));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

BENCHMARK(BM_ComposePages)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ComposePagesSerial)->Arg(16)->Unit(benchmark::kMillisecond);

const testing::EvalCase& Case() {
  static const testing::EvalCase c = [] {
    Rng rng(5);
    testing::EvalCase out;
    for (int i = 0; i < 400; ++i) {
      testing::EvalCase part = testing::RandomEvalCase(rng, 4, 40, 30);
      for (auto& p : part.preds) p.image_path = std::to_string(i) + "/" + p.image_path;
      for (auto& p : part.gts.pages) p.image_path = std::to_string(i) + "/" + p.image_path;
      out.preds.insert(out.preds.end(), part.preds.begin(), part.preds.end());
      out.gts.pages.insert(out.gts.pages.end(), part.gts.pages.begin(), part.gts.pages.end());
    }
    return out;
  }();
  return c;
}

void BM_Evaluate(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(Evaluate(Case().preds, Case().gts, {}));
}

void BM_EvaluateSerial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(EvaluateSerial(Case().preds, Case().gts, {}));
}

BENCHMARK(BM_Evaluate)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EvaluateSerial)->Unit(benchmark::kMillisecond);

struct Corpus {
  testing::TempDir dir{"bench_corpus"};
  Dataset d;
  Corpus() { d = testing::MakeSourceCorpus(dir.path(), {.pages = 24}); }
};

const Corpus& SourceCorpus() {
  static const Corpus c;
  return c;
}

void BM_BuildBank(benchmark::State& state) {
  const Corpus& c = SourceCorpus();
  for (auto _ : state) benchmark::DoNotOptimize(BuildBank(c.d, c.dir.path()));
}

void BM_BuildBankSerial(benchmark::State& state) {
  const Corpus& c = SourceCorpus();
  for (auto _ : state) benchmark::DoNotOptimize(BuildBankSerial(c.d, c.dir.path()));
}

BENCHMARK(BM_BuildBank)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BuildBankSerial)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace ranlay

BENCHMARK_MAIN();
