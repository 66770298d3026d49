// Copyright 2026 The posbias Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include <random>

#include "posbias/duplication.h"
#include "posbias/metrics.h"
#include "posbias/tagger/model.h"
#include "posbias/tagger/synth.h"
#include "posbias/transforms.h"

namespace {

using namespace posbias;

const Dataset& Corpus() {
  static const Dataset ds = [] {
    tagger::SynthConfig sc;
    sc.n_train = 2000;
    sc.n_test = 1;
    return tagger::GenerateSyntheticCorpus(sc).first;
  }();
  return ds;
}

EncodedBatch Batch(std::size_t size) {
  EncodedBatch b;
  for (std::size_t i = 0; i < size; ++i)
    b.sequences.push_back(EncodeForTraining(Corpus().sentences()[i], b.max_len));
  return b;
}

void BM_ChunkPrf(benchmark::State& state) {
  std::vector<std::vector<std::string>> gold, pred;
  for (const Sentence& s : Corpus().sentences()) {
    gold.push_back(s.Labels());
    auto p = s.Labels();
    std::rotate(p.begin(), p.begin() + 1, p.end());
    pred.push_back(p);
  }
  for (auto _ : state) benchmark::DoNotOptimize(ChunkPrf(gold, pred));
  state.SetItemsProcessed(state.iterations() * gold.size());
}
BENCHMARK(BM_ChunkPrf);

void BM_BuildEvalSet(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(BuildEvalSet(Corpus(), k, 512));
}
BENCHMARK(BM_BuildEvalSet)->Arg(1)->Arg(5)->Arg(10);

void BM_RppShift(benchmark::State& state) {
  const EncodedBatch b = Batch(16);
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(RppShift(b, ++seed));
}
BENCHMARK(BM_RppShift);

void BM_CpPerturb(benchmark::State& state) {
  const EncodedBatch b = Batch(static_cast<std::size_t>(state.range(0)));
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(CpPerturb(b, ++seed));
}
BENCHMARK(BM_CpPerturb)->Arg(16)->Arg(64);

void BM_Forward(benchmark::State& state) {
  tagger::ModelConfig c;
  c.local_attention = state.range(1) != 0;
  const tagger::Model m = tagger::Model::Initialize(
      c, tagger::Vocabulary::FromDataset(Corpus()),
      tagger::LabelSpace::FromDataset(Corpus()));
  const DuplicatedSequence d = DuplicateSentence(
      Corpus().sentences()[0], static_cast<int>(state.range(0)), 512);
  const EncodedSequence seq = ToEncoded(d);
  for (auto _ : state) benchmark::DoNotOptimize(tagger::Forward(m, seq));
  state.SetItemsProcessed(state.iterations() * seq.size());
}
BENCHMARK(BM_Forward)->Args({1, 0})->Args({10, 0})->Args({10, 1});

void BM_LossAndGrads(benchmark::State& state) {
  tagger::ModelConfig c;
  const tagger::Model m = tagger::Model::Initialize(
      c, tagger::Vocabulary::FromDataset(Corpus()),
      tagger::LabelSpace::FromDataset(Corpus()));
  const EncodedBatch b = Batch(16);
  for (auto _ : state) benchmark::DoNotOptimize(tagger::ComputeLossAndGrads(m, b));
}
BENCHMARK(BM_LossAndGrads);

}  // namespace
BENCHMARK_MAIN();
