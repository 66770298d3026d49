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

#ifndef POSBIAS_TAGGER_EXPERIMENT_H_
#define POSBIAS_TAGGER_EXPERIMENT_H_

#include <cstdint>
#include <map>
#include <set>
#include <utility>
#include <vector>

#include "posbias/corpus.h"
#include "posbias/metrics.h"
#include "posbias/tagger/model.h"
#include "posbias/tagger/synth.h"
#include "posbias/tagger/train.h"

namespace posbias::tagger {

// End-to-end bias experiment on the synthetic corpus: train one tagger per
// seed and regime on D*_train and score every copy of D*_test(k).
struct DemoConfig {
  SynthConfig synth;
  ModelConfig model;
  std::vector<std::uint64_t> seeds;
  int k_min = 1;
  int k_max = 10;
  // k range over which F1(alpha) is averaged.
  int aggregate_k_min = 2;
  RppOptions rpp;
  // Restrict both splits to sentences within their Q1..Q3 length band.
  bool quantile_subset = true;
};

// Settings used for the shipped bias demonstration.
DemoConfig DefaultDemoConfig();

struct SeedRun {
  std::uint64_t seed = 0;
  std::map<std::pair<int, int>, Scores> scores;  // (k, alpha)
  double train_seconds = 0.0;
  double final_loss = 0.0;
};

struct RegimeRuns {
  Transform transform = Transform::kNone;
  std::vector<SeedRun> runs;
};

// D*_train and D*_test (or the raw splits when quantile_subset is off).
std::pair<Dataset, Dataset> DemoCorpus(const DemoConfig& config);

SeedRun RunSeed(const DemoConfig& config, const Dataset& train,
                const Dataset& test, Transform transform, std::uint64_t seed);

RegimeRuns RunRegime(const DemoConfig& config, const Dataset& train,
                     const Dataset& test, Transform transform);

std::set<int> AggregateRange(const DemoConfig& config);

// F1(alpha) of one run, averaged over the aggregate k range.
double RunF1(const DemoConfig& config, const SeedRun& run, int alpha);

// Mean and sample std over seeds of F1(alpha_lo) - F1(alpha_hi).
std::pair<double, double> GapStats(const DemoConfig& config,
                                   const RegimeRuns& regime, int alpha_lo,
                                   int alpha_hi);

// Mean and sample std over seeds of F1(alpha).
std::pair<double, double> F1Stats(const DemoConfig& config,
                                  const RegimeRuns& regime, int alpha);

}  // namespace posbias::tagger

#endif  // POSBIAS_TAGGER_EXPERIMENT_H_
