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

#include "posbias/tagger/train.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "posbias/error.h"

namespace posbias::tagger {
namespace {

constexpr std::uint32_t kShuffleTag = 0x5f;
constexpr std::uint32_t kTransformTag = 0x7f;

std::uint64_t BatchSeed(std::uint64_t seed, int epoch, std::size_t batch) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32), kTransformTag,
                    static_cast<std::uint32_t>(epoch),
                    static_cast<std::uint32_t>(batch)};
  std::mt19937_64 rng(seq);
  return rng();
}

void ApplySgd(Model& model, Parameters& grads) {
  auto params = model.params.Views();
  auto g = grads.Views();
  const double lr = model.config.learning_rate;
  for (std::size_t t = 0; t < params.size(); ++t)
    params[t].second -= lr * g[t].second;
}

}  // namespace

std::string_view TransformName(Transform t) {
  switch (t) {
    case Transform::kNone:
      return "none";
    case Transform::kRpp:
      return "rpp";
    case Transform::kCp:
      return "cp";
  }
  return "none";
}

Transform ParseTransform(std::string_view name) {
  if (name == "none") return Transform::kNone;
  if (name == "rpp") return Transform::kRpp;
  if (name == "cp") return Transform::kCp;
  throw InvalidArgument("unknown transform '" + std::string(name) + "'");
}

TrainResult Train(const ModelConfig& config, const Dataset& dataset,
                  const TrainOptions& options) {
  if (dataset.empty()) throw InvalidArgument("cannot train on an empty dataset");
  if (config.epochs < 0) throw InvalidArgument("epochs must be >= 0");
  Vocabulary vocab = options.vocab.value_or(Vocabulary::FromDataset(dataset));
  LabelSpace labels = options.labels.value_or(LabelSpace::FromDataset(dataset));
  for (const std::string& l : dataset.label_inventory()) labels.Index(l);

  TrainResult result;
  result.model = Model::Initialize(config, std::move(vocab), std::move(labels));
  Model& model = result.model;
  const auto max_len = static_cast<std::size_t>(model.config.max_positions);
  result.position_counts.assign(max_len, 0);

  std::vector<EncodedSequence> encoded;
  encoded.reserve(dataset.size());
  for (const Sentence& s : dataset.sentences())
    encoded.push_back(EncodeForTraining(s, max_len));

  std::vector<std::size_t> order(encoded.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  auto shuffle_rng = SeedStream(model.config.seed, kShuffleTag);
  const auto batch_size = static_cast<std::size_t>(model.config.batch_size);

  bool first_step = true;
  for (int epoch = 0; epoch < model.config.epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), shuffle_rng);
    for (std::size_t b = 0; b * batch_size < order.size(); ++b) {
      EncodedBatch batch;
      batch.max_len = max_len;
      batch.seed = BatchSeed(model.config.seed, epoch, b);
      const std::size_t end = std::min(order.size(), (b + 1) * batch_size);
      for (std::size_t i = b * batch_size; i < end; ++i)
        batch.sequences.push_back(encoded[order[i]]);

      switch (options.transform) {
        case Transform::kNone:
          break;
        case Transform::kRpp: {
          RppResult r = RppShift(batch, batch.seed, options.rpp);
          batch = std::move(r.batch);
          result.rpp_draws.push_back(std::move(r.draws));
          break;
        }
        case Transform::kCp: {
          CpResult r = CpPerturb(batch, batch.seed);
          batch = std::move(r.batch);
          result.cp_plans.push_back(std::move(r.plan));
          break;
        }
      }
      for (const EncodedSequence& s : batch.sequences)
        for (int p : s.position_ids) ++result.position_counts[p];

      LossAndGrads lg = ComputeLossAndGrads(model, batch);
      if (!std::isfinite(lg.loss))
        throw Error("training diverged at epoch " + std::to_string(epoch) +
                    ", batch " + std::to_string(b));
      if (first_step) {
        result.initial_loss = lg.loss;
        first_step = false;
      }
      result.loss_trace.push_back(lg.loss);
      ApplySgd(model, lg.grads);
    }
  }
  return result;
}

std::vector<std::vector<std::string>> PredictEvalSet(const Model& model,
                                                     const EvalSet& eval_set) {
  std::vector<std::vector<std::string>> preds;
  preds.reserve(eval_set.sequences.size());
  for (const DuplicatedSequence& seq : eval_set.sequences)
    preds.push_back(Predict(model, ToEncoded(seq)));
  return preds;
}

std::map<std::pair<int, int>, Scores> EvaluateDuplicated(
    const Model& model, const Dataset& test, const std::set<int>& ks,
    const ScoreOptions& options) {
  std::map<std::pair<int, int>, Scores> out;
  const auto max_len = static_cast<std::size_t>(model.config.max_positions);
  for (int k : ks) {
    const EvalSet es = BuildEvalSet(test, k, max_len);
    const auto preds = PredictEvalSet(model, es);
    for (int alpha = 1; alpha <= k; ++alpha)
      out[{k, alpha}] = WindowedScores(es, preds, alpha, test.task(), options);
  }
  return out;
}

}  // namespace posbias::tagger
