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

#ifndef POSBIAS_TAGGER_MODEL_H_
#define POSBIAS_TAGGER_MODEL_H_

#include <Eigen/Dense>

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <unordered_map>
#include <vector>

#include "posbias/corpus.h"
#include "posbias/transforms.h"

namespace posbias::tagger {

// Run seeds used for five-run mean/std reporting.
inline const std::vector<std::uint64_t> kDefaultSeeds = {23456, 34567, 45678,
                                                         56789, 67890};

struct ModelConfig {
  int d_model = 32;
  int max_positions = 512;
  // Filled from the training data when left at 0.
  int vocab_size = 0;
  int num_labels = 0;
  bool use_attention = true;
  // Restrict attention to the [SEP]-terminated segment of each token, so
  // concatenated or duplicated sentences do not attend to one another.
  bool local_attention = false;
  double learning_rate = 1e-3;
  int epochs = 5;
  std::uint64_t seed = 23456;
  int batch_size = 16;
  int eval_batch_size = 64;
};

// Word -> row of the token table. Ids 0..2 are [UNK], [CLS] and [SEP].
class Vocabulary {
 public:
  static constexpr int kUnk = 0;

  Vocabulary();
  static Vocabulary FromDataset(const Dataset& dataset);

  int Add(const std::string& word);
  // kUnk for unknown words.
  int Id(const std::string& word) const;
  int size() const { return static_cast<int>(words_.size()); }
  const std::vector<std::string>& words() const { return words_; }

 private:
  std::vector<std::string> words_;
  std::unordered_map<std::string, int> ids_;
};

// Output classes, sorted. "IGN" is never a class.
class LabelSpace {
 public:
  LabelSpace() = default;
  explicit LabelSpace(std::vector<std::string> labels);
  static LabelSpace FromDataset(const Dataset& dataset);

  // -1 for "IGN"; throws InvalidArgument for labels outside the space.
  int Index(const std::string& label) const;
  const std::string& Label(int index) const { return labels_.at(index); }
  int size() const { return static_cast<int>(labels_.size()); }
  const std::vector<std::string>& labels() const { return labels_; }

 private:
  std::vector<std::string> labels_;
  std::unordered_map<std::string, int> index_;
};

// All learnable tensors; also used for gradients of the same shapes.
struct Parameters {
  Eigen::MatrixXd token_table;     // vocab x d
  Eigen::MatrixXd position_table;  // M x d
  Eigen::MatrixXd w_query;         // d x d
  Eigen::MatrixXd w_key;           // d x d
  Eigen::MatrixXd w_value;         // d x d
  Eigen::MatrixXd classifier;      // d x labels
  Eigen::VectorXd bias;            // labels

  static Parameters Zeros(const ModelConfig& config);
  void SetZero();
  std::size_t Count() const;
  // Flat views in a fixed order, for update loops and gradient checks.
  std::vector<std::pair<std::string, Eigen::Map<Eigen::VectorXd>>> Views();
};

struct Model {
  ModelConfig config;
  Vocabulary vocab;
  LabelSpace labels;
  Parameters params;
  // Inert segment embedding, fixed at zero (single-segment inputs).
  Eigen::VectorXd segment;

  // uniform(-0.1, 0.1) initialization from config.seed.
  static Model Initialize(ModelConfig config, Vocabulary vocab,
                          LabelSpace labels);
  static Model Zero(ModelConfig config, Vocabulary vocab, LabelSpace labels);
};

// Per-token label scores (logits), one row per token. Throws InvalidArgument
// for position ids outside [0, max_positions).
Eigen::MatrixXd Forward(const Model& model, const EncodedSequence& seq);

// Attention weights of the single head (rows sum to 1). Empty when attention
// is disabled.
Eigen::MatrixXd AttentionWeights(const Model& model, const EncodedSequence& seq);

struct LossAndGrads {
  double loss = 0.0;
  std::size_t tokens = 0;
  Parameters grads;
};

// Mean cross-entropy over the non-"IGN" tokens of the batch. Throws
// InvalidArgument when there are none.
LossAndGrads ComputeLossAndGrads(const Model& model, const EncodedBatch& batch);

// Loss only; same value as ComputeLossAndGrads.
double ComputeLoss(const Model& model, const EncodedBatch& batch);

// Argmax label per token (lowest index wins ties); specials get "IGN".
std::vector<std::string> Predict(const Model& model, const EncodedSequence& seq);

// Central differences against ComputeLossAndGrads over every parameter.
// Returns max |g_a - g_n| / max(1e-6, |g_a| + |g_n|). The floor keeps
// entries whose true gradient sits near the rounding noise of the difference
// quotient (about 1e-12 at the default step) from dominating the maximum.
double FiniteDifferenceCheck(const Model& model, const EncodedBatch& batch,
                             double epsilon = 1e-4);

// JSON checkpoint: {"format","version","config","vocab","labels","tensors"}.
void SaveModel(const Model& model, std::ostream& out);
Model LoadModel(std::istream& in);

}  // namespace posbias::tagger

#endif  // POSBIAS_TAGGER_MODEL_H_
