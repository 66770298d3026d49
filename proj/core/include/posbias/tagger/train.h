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

#ifndef POSBIAS_TAGGER_TRAIN_H_
#define POSBIAS_TAGGER_TRAIN_H_

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string_view>
#include <utility>
#include <vector>

#include "posbias/corpus.h"
#include "posbias/duplication.h"
#include "posbias/metrics.h"
#include "posbias/tagger/model.h"
#include "posbias/transforms.h"

namespace posbias::tagger {

enum class Transform { kNone, kRpp, kCp };

std::string_view TransformName(Transform t);
Transform ParseTransform(std::string_view name);

struct TrainOptions {
  Transform transform = Transform::kNone;
  RppOptions rpp;
  // Train on a fixed vocabulary/label space instead of deriving them from the
  // dataset (labels must still cover the dataset).
  std::optional<Vocabulary> vocab;
  std::optional<LabelSpace> labels;
};

struct TrainResult {
  Model model;
  // Mean batch loss, one entry per SGD step.
  std::vector<double> loss_trace;
  // Loss of the first batch before any update.
  double initial_loss = 0.0;
  // How often each position id was fed to the model during training.
  std::vector<std::size_t> position_counts;
  std::vector<std::vector<RppDraw>> rpp_draws;
  std::vector<CpPlan> cp_plans;
};

// Plain mini-batch SGD for config.epochs epochs over batches reshuffled every
// epoch. The transform is applied to each encoded batch before the gradient
// step. Throws Error naming epoch and batch if the loss stops being finite.
TrainResult Train(const ModelConfig& config, const Dataset& dataset,
                  const TrainOptions& options = {});

// Predicted labels for every sequence of an eval set.
std::vector<std::vector<std::string>> PredictEvalSet(const Model& model,
                                                     const EvalSet& eval_set);

// (k, alpha) -> scores for every k in `ks` and alpha in 1..k. Sentences that
// do not fit k copies into the model's position table are dropped per k.
std::map<std::pair<int, int>, Scores> EvaluateDuplicated(
    const Model& model, const Dataset& test, const std::set<int>& ks,
    const ScoreOptions& options = {});

}  // namespace posbias::tagger

#endif  // POSBIAS_TAGGER_TRAIN_H_
