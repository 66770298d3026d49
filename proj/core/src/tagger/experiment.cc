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

#include "posbias/tagger/experiment.h"

#include <algorithm>
#include <chrono>

#include "posbias/error.h"
#include "posbias/stats.h"

namespace posbias::tagger {

DemoConfig DefaultDemoConfig() {
  DemoConfig c;
  c.synth.n_train = 10000;
  c.synth.n_test = 2000;
  c.synth.position_skew = 0.3;
  c.synth.min_length = 8;
  c.synth.max_length = 25;
  c.synth.topic_share = 0.7;
  c.synth.topic_vocab = 50;
  c.model.learning_rate = 2.0;
  c.model.local_attention = true;
  c.seeds.assign(kDefaultSeeds.begin(), kDefaultSeeds.end());
  return c;
}

std::pair<Dataset, Dataset> DemoCorpus(const DemoConfig& config) {
  auto [train, test] = GenerateSyntheticCorpus(config.synth);
  if (!config.quantile_subset) return {std::move(train), std::move(test)};
  return {QuantileSubset(train), QuantileSubset(test)};
}

SeedRun RunSeed(const DemoConfig& config, const Dataset& train,
                const Dataset& test, Transform transform, std::uint64_t seed) {
  if (config.k_min < 1 || config.k_max < config.k_min)
    throw InvalidArgument("invalid k range");
  ModelConfig mc = config.model;
  mc.seed = seed;
  TrainOptions options;
  options.transform = transform;
  options.rpp = config.rpp;

  SeedRun run;
  run.seed = seed;
  const auto t0 = std::chrono::steady_clock::now();
  TrainResult trained = Train(mc, train, options);
  run.train_seconds = std::chrono::duration<double>(
                          std::chrono::steady_clock::now() - t0)
                          .count();
  run.final_loss =
      trained.loss_trace.empty() ? trained.initial_loss : trained.loss_trace.back();
  std::set<int> ks;
  for (int k = config.k_min; k <= config.k_max; ++k) ks.insert(k);
  run.scores = EvaluateDuplicated(trained.model, test, ks);
  return run;
}

RegimeRuns RunRegime(const DemoConfig& config, const Dataset& train,
                     const Dataset& test, Transform transform) {
  RegimeRuns regime;
  regime.transform = transform;
  for (std::uint64_t seed : config.seeds)
    regime.runs.push_back(RunSeed(config, train, test, transform, seed));
  return regime;
}

std::set<int> AggregateRange(const DemoConfig& config) {
  std::set<int> ks;
  for (int k = std::max(config.k_min, config.aggregate_k_min);
       k <= config.k_max; ++k)
    ks.insert(k);
  return ks;
}

double RunF1(const DemoConfig& config, const SeedRun& run, int alpha) {
  return AggregateOverK(run.scores, alpha, AggregateRange(config)).mean_f1;
}

std::pair<double, double> GapStats(const DemoConfig& config,
                                   const RegimeRuns& regime, int alpha_lo,
                                   int alpha_hi) {
  std::vector<double> gaps;
  for (const SeedRun& run : regime.runs)
    gaps.push_back(RunF1(config, run, alpha_lo) - RunF1(config, run, alpha_hi));
  return MeanStd(gaps);
}

std::pair<double, double> F1Stats(const DemoConfig& config,
                                  const RegimeRuns& regime, int alpha) {
  std::vector<double> values;
  for (const SeedRun& run : regime.runs)
    values.push_back(RunF1(config, run, alpha));
  return MeanStd(values);
}

}  // namespace posbias::tagger
