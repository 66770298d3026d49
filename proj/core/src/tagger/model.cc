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

#include "posbias/tagger/model.h"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <random>

#include "json.hpp"
#include "posbias/error.h"

namespace posbias::tagger {
namespace {

using nlohmann::json;

constexpr int kCheckpointVersion = 1;
constexpr std::uint64_t kInitStream = 0x1417;

struct Activations {
  std::vector<int> token_ids;
  std::vector<int> positions;
  Eigen::MatrixXd x;  // embedding sum
  Eigen::MatrixXd q, k, v, a;
  Eigen::MatrixXd h;  // attention output + residual
  Eigen::MatrixXd z;  // logits
  // (first row, length) of each attention block.
  std::vector<std::pair<int, int>> blocks;
};

// One block spanning the sequence, or one block per [SEP]-terminated segment
// when attention is sentence-local. [CLS] joins the first segment.
std::vector<std::pair<int, int>> AttentionBlocks(const Model& model,
                                                 const EncodedSequence& seq) {
  const int n = static_cast<int>(seq.size());
  if (!model.config.local_attention) return {{0, n}};
  std::vector<std::pair<int, int>> blocks;
  int begin = 0;
  for (int i = 0; i < n; ++i) {
    if (seq.tokens[i] == kSepToken || i + 1 == n) {
      blocks.emplace_back(begin, i + 1 - begin);
      begin = i + 1;
    }
  }
  return blocks;
}

Activations RunForward(const Model& model, const EncodedSequence& seq) {
  const auto& p = model.params;
  const int n = static_cast<int>(seq.size());
  const int d = model.config.d_model;
  if (seq.tokens.size() != seq.position_ids.size())
    throw InvalidArgument("tokens and position_ids differ in length");

  Activations act;
  act.token_ids.resize(n);
  act.positions.resize(n);
  act.x.resize(n, d);
  for (int i = 0; i < n; ++i) {
    const int pos = seq.position_ids[i];
    if (pos < 0 || pos >= model.config.max_positions)
      throw InvalidArgument("position id " + std::to_string(pos) +
                            " outside [0, " +
                            std::to_string(model.config.max_positions) + ")");
    act.token_ids[i] = model.vocab.Id(seq.tokens[i]);
    act.positions[i] = pos;
    act.x.row(i) = p.token_table.row(act.token_ids[i]) +
                   model.segment.transpose() + p.position_table.row(pos);
  }

  if (model.config.use_attention) {
    act.blocks = AttentionBlocks(model, seq);
    act.q = act.x * p.w_query;
    act.k = act.x * p.w_key;
    act.v = act.x * p.w_value;
    const double scale = 1.0 / std::sqrt(static_cast<double>(d));
    act.a = Eigen::MatrixXd::Zero(n, n);
    act.h = act.x;
    for (const auto& [b, len] : act.blocks) {
      auto a = act.a.block(b, b, len, len);
      a.noalias() = act.q.middleRows(b, len) * act.k.middleRows(b, len).transpose();
      a *= scale;
      for (int i = 0; i < len; ++i) {
        auto row = a.row(i);
        row.array() -= row.maxCoeff();
        row = row.array().exp().matrix();
        row /= row.sum();
      }
      act.h.middleRows(b, len).noalias() += a * act.v.middleRows(b, len);
    }
  } else {
    act.h = act.x;
  }
  act.z = act.h * p.classifier;
  act.z.rowwise() += p.bias.transpose();
  return act;
}

// Accumulates gradients of the loss with respect to every parameter given
// dL/dz for one sequence.
void Backward(const Model& model, const Activations& act,
              const Eigen::MatrixXd& dz, Parameters& g) {
  const auto& p = model.params;
  g.classifier.noalias() += act.h.transpose() * dz;
  g.bias += dz.colwise().sum().transpose();
  Eigen::MatrixXd dh = dz * p.classifier.transpose();

  Eigen::MatrixXd dx = dh;
  if (model.config.use_attention) {
    const double scale =
        1.0 / std::sqrt(static_cast<double>(model.config.d_model));
    const int n = static_cast<int>(act.token_ids.size());
    const int d = model.config.d_model;
    Eigen::MatrixXd dq = Eigen::MatrixXd::Zero(n, d);
    Eigen::MatrixXd dk = Eigen::MatrixXd::Zero(n, d);
    Eigen::MatrixXd dv = Eigen::MatrixXd::Zero(n, d);
    for (const auto& [b, len] : act.blocks) {
      const auto a = act.a.block(b, b, len, len);
      const auto dhb = dh.middleRows(b, len);
      const Eigen::MatrixXd da = dhb * act.v.middleRows(b, len).transpose();
      dv.middleRows(b, len).noalias() = a.transpose() * dhb;
      // Softmax Jacobian, row by row.
      const Eigen::VectorXd inner = (da.array() * a.array()).rowwise().sum();
      const Eigen::MatrixXd ds =
          (a.array() * (da.colwise() - inner).array()).matrix() * scale;
      dq.middleRows(b, len).noalias() = ds * act.k.middleRows(b, len);
      dk.middleRows(b, len).noalias() = ds.transpose() * act.q.middleRows(b, len);
    }
    g.w_query.noalias() += act.x.transpose() * dq;
    g.w_key.noalias() += act.x.transpose() * dk;
    g.w_value.noalias() += act.x.transpose() * dv;
    dx.noalias() += dq * p.w_query.transpose();
    dx.noalias() += dk * p.w_key.transpose();
    dx.noalias() += dv * p.w_value.transpose();
  }
  for (std::size_t i = 0; i < act.token_ids.size(); ++i) {
    g.token_table.row(act.token_ids[i]) += dx.row(i);
    g.position_table.row(act.positions[i]) += dx.row(i);
  }
}

std::size_t CountScoredTokens(const Model& model, const EncodedBatch& batch) {
  std::size_t n = 0;
  for (const EncodedSequence& s : batch.sequences)
    for (const std::string& l : s.labels) n += model.labels.Index(l) >= 0;
  if (n == 0)
    throw InvalidArgument("batch has no tokens outside the ignore label");
  return n;
}

// Cross-entropy summed over scored tokens; fills dz with the per-token
// gradient scaled by 1/total when `dz` is non-null.
double SequenceLoss(const Model& model, const EncodedSequence& seq,
                    const Activations& act, double total,
                    Eigen::MatrixXd* dz) {
  double loss = 0.0;
  if (dz) dz->setZero(act.z.rows(), act.z.cols());
  for (Eigen::Index i = 0; i < act.z.rows(); ++i) {
    const int y = model.labels.Index(seq.labels[i]);
    if (y < 0) continue;
    const auto row = act.z.row(i);
    const double m = row.maxCoeff();
    const Eigen::RowVectorXd e = (row.array() - m).exp();
    const double sum = e.sum();
    loss += std::log(sum) + m - row(y);
    if (dz) {
      dz->row(i) = e / (sum * total);
      (*dz)(i, y) -= 1.0 / total;
    }
  }
  return loss;
}

json MatrixToJson(const Eigen::MatrixXd& m) {
  std::vector<double> data(m.data(), m.data() + m.size());
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", data}};
}

Eigen::MatrixXd MatrixFromJson(const json& j, Eigen::Index rows,
                               Eigen::Index cols) {
  if (j.at("rows").get<Eigen::Index>() != rows ||
      j.at("cols").get<Eigen::Index>() != cols)
    throw ParseError("tensor shape does not match the config", 0);
  const auto data = j.at("data").get<std::vector<double>>();
  if (static_cast<Eigen::Index>(data.size()) != rows * cols)
    throw ParseError("tensor data has the wrong size", 0);
  return Eigen::Map<const Eigen::MatrixXd>(data.data(), rows, cols);
}

}  // namespace

Vocabulary::Vocabulary() {
  Add("[UNK]");
  Add(std::string(kClsToken));
  Add(std::string(kSepToken));
}

Vocabulary Vocabulary::FromDataset(const Dataset& dataset) {
  Vocabulary v;
  for (const Sentence& s : dataset.sentences())
    for (const Token& t : s.tokens) v.Add(t.surface);
  return v;
}

int Vocabulary::Add(const std::string& word) {
  const auto [it, inserted] =
      ids_.emplace(word, static_cast<int>(words_.size()));
  if (inserted) words_.push_back(word);
  return it->second;
}

int Vocabulary::Id(const std::string& word) const {
  const auto it = ids_.find(word);
  return it == ids_.end() ? kUnk : it->second;
}

LabelSpace::LabelSpace(std::vector<std::string> labels)
    : labels_(std::move(labels)) {
  std::sort(labels_.begin(), labels_.end());
  labels_.erase(std::unique(labels_.begin(), labels_.end()), labels_.end());
  std::erase(labels_, std::string(kIgnoreLabel));
  for (std::size_t i = 0; i < labels_.size(); ++i)
    index_[labels_[i]] = static_cast<int>(i);
}

LabelSpace LabelSpace::FromDataset(const Dataset& dataset) {
  return LabelSpace({dataset.label_inventory().begin(),
                     dataset.label_inventory().end()});
}

int LabelSpace::Index(const std::string& label) const {
  if (label == kIgnoreLabel) return -1;
  const auto it = index_.find(label);
  if (it == index_.end())
    throw InvalidArgument("label '" + label + "' is not in the label space");
  return it->second;
}

Parameters Parameters::Zeros(const ModelConfig& c) {
  Parameters p;
  p.token_table = Eigen::MatrixXd::Zero(c.vocab_size, c.d_model);
  p.position_table = Eigen::MatrixXd::Zero(c.max_positions, c.d_model);
  p.w_query = Eigen::MatrixXd::Zero(c.d_model, c.d_model);
  p.w_key = Eigen::MatrixXd::Zero(c.d_model, c.d_model);
  p.w_value = Eigen::MatrixXd::Zero(c.d_model, c.d_model);
  p.classifier = Eigen::MatrixXd::Zero(c.d_model, c.num_labels);
  p.bias = Eigen::VectorXd::Zero(c.num_labels);
  return p;
}

void Parameters::SetZero() {
  for (auto& [name, view] : Views()) view.setZero();
}

std::size_t Parameters::Count() const {
  return token_table.size() + position_table.size() + w_query.size() +
         w_key.size() + w_value.size() + classifier.size() + bias.size();
}

std::vector<std::pair<std::string, Eigen::Map<Eigen::VectorXd>>>
Parameters::Views() {
  using Map = Eigen::Map<Eigen::VectorXd>;
  std::vector<std::pair<std::string, Map>> v;
  v.emplace_back("token_table", Map(token_table.data(), token_table.size()));
  v.emplace_back("position_table",
                 Map(position_table.data(), position_table.size()));
  v.emplace_back("w_query", Map(w_query.data(), w_query.size()));
  v.emplace_back("w_key", Map(w_key.data(), w_key.size()));
  v.emplace_back("w_value", Map(w_value.data(), w_value.size()));
  v.emplace_back("classifier", Map(classifier.data(), classifier.size()));
  v.emplace_back("bias", Map(bias.data(), bias.size()));
  return v;
}

Model Model::Zero(ModelConfig config, Vocabulary vocab, LabelSpace labels) {
  config.vocab_size = vocab.size();
  config.num_labels = labels.size();
  if (config.d_model < 1 || config.max_positions < 1 ||
      config.num_labels < 1 || config.batch_size < 1)
    throw InvalidArgument("model dimensions must be >= 1");
  Model m;
  m.params = Parameters::Zeros(config);
  m.segment = Eigen::VectorXd::Zero(config.d_model);
  m.config = config;
  m.vocab = std::move(vocab);
  m.labels = std::move(labels);
  return m;
}

Model Model::Initialize(ModelConfig config, Vocabulary vocab,
                        LabelSpace labels) {
  Model m = Zero(config, std::move(vocab), std::move(labels));
  auto rng = SeedStream(m.config.seed, kInitStream);
  std::uniform_real_distribution<double> uniform(-0.1, 0.1);
  for (auto& [name, view] : m.params.Views())
    for (Eigen::Index i = 0; i < view.size(); ++i) view[i] = uniform(rng);
  return m;
}

Eigen::MatrixXd Forward(const Model& model, const EncodedSequence& seq) {
  return RunForward(model, seq).z;
}

Eigen::MatrixXd AttentionWeights(const Model& model,
                                 const EncodedSequence& seq) {
  return RunForward(model, seq).a;
}

LossAndGrads ComputeLossAndGrads(const Model& model,
                                 const EncodedBatch& batch) {
  LossAndGrads out;
  out.tokens = CountScoredTokens(model, batch);
  out.grads = Parameters::Zeros(model.config);
  const double total = static_cast<double>(out.tokens);
  Eigen::MatrixXd dz;
  for (const EncodedSequence& seq : batch.sequences) {
    const Activations act = RunForward(model, seq);
    out.loss += SequenceLoss(model, seq, act, total, &dz);
    Backward(model, act, dz, out.grads);
  }
  out.loss /= total;
  return out;
}

double ComputeLoss(const Model& model, const EncodedBatch& batch) {
  const double total = static_cast<double>(CountScoredTokens(model, batch));
  double loss = 0.0;
  for (const EncodedSequence& seq : batch.sequences)
    loss += SequenceLoss(model, seq, RunForward(model, seq), total, nullptr);
  return loss / total;
}

std::vector<std::string> Predict(const Model& model,
                                 const EncodedSequence& seq) {
  const Eigen::MatrixXd z = Forward(model, seq);
  std::vector<std::string> out(seq.size());
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (seq.is_special(i)) {
      out[i] = std::string(kIgnoreLabel);
      continue;
    }
    Eigen::Index best = 0;
    for (Eigen::Index c = 1; c < z.cols(); ++c)
      if (z(i, c) > z(i, best)) best = c;
    out[i] = model.labels.Label(static_cast<int>(best));
  }
  return out;
}

double FiniteDifferenceCheck(const Model& model, const EncodedBatch& batch,
                             double epsilon) {
  constexpr double kRelativeFloor = 1e-6;
  const LossAndGrads analytic = ComputeLossAndGrads(model, batch);
  Model probe = model;
  Parameters grads = analytic.grads;
  auto param_views = probe.params.Views();
  auto grad_views = grads.Views();
  double worst = 0.0;
  for (std::size_t t = 0; t < param_views.size(); ++t) {
    auto& param = param_views[t].second;
    const auto& grad = grad_views[t].second;
    for (Eigen::Index i = 0; i < param.size(); ++i) {
      const double saved = param[i];
      param[i] = saved + epsilon;
      const double plus = ComputeLoss(probe, batch);
      param[i] = saved - epsilon;
      const double minus = ComputeLoss(probe, batch);
      param[i] = saved;
      const double numeric = (plus - minus) / (2.0 * epsilon);
      const double err = std::abs(grad[i] - numeric) /
                         std::max(kRelativeFloor, std::abs(grad[i]) + std::abs(numeric));
      worst = std::max(worst, err);
    }
  }
  return worst;
}

void SaveModel(const Model& model, std::ostream& out) {
  const ModelConfig& c = model.config;
  json j;
  j["format"] = "posbias-toytagger";
  j["version"] = kCheckpointVersion;
  j["config"] = {{"d_model", c.d_model},
                 {"max_positions", c.max_positions},
                 {"vocab_size", c.vocab_size},
                 {"num_labels", c.num_labels},
                 {"use_attention", c.use_attention},
                 {"local_attention", c.local_attention},
                 {"learning_rate", c.learning_rate},
                 {"epochs", c.epochs},
                 {"seed", c.seed},
                 {"batch_size", c.batch_size},
                 {"eval_batch_size", c.eval_batch_size}};
  j["vocab"] = model.vocab.words();
  j["labels"] = model.labels.labels();
  const auto& p = model.params;
  j["tensors"] = {{"token_table", MatrixToJson(p.token_table)},
                  {"position_table", MatrixToJson(p.position_table)},
                  {"w_query", MatrixToJson(p.w_query)},
                  {"w_key", MatrixToJson(p.w_key)},
                  {"w_value", MatrixToJson(p.w_value)},
                  {"classifier", MatrixToJson(p.classifier)},
                  {"bias", MatrixToJson(p.bias)}};
  out << j.dump() << '\n';
}

Model LoadModel(std::istream& in) {
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw ParseError(std::string("checkpoint: ") + e.what(), 0);
  }
  try {
    if (j.at("format") != "posbias-toytagger")
      throw ParseError("not a toy tagger checkpoint", 0);
    if (j.at("version").get<int>() != kCheckpointVersion)
      throw ParseError("unsupported checkpoint version", 0);
    const json& jc = j.at("config");
    ModelConfig c;
    c.d_model = jc.at("d_model");
    c.max_positions = jc.at("max_positions");
    c.use_attention = jc.at("use_attention");
    c.local_attention = jc.value("local_attention", false);
    c.learning_rate = jc.at("learning_rate");
    c.epochs = jc.at("epochs");
    c.seed = jc.at("seed");
    c.batch_size = jc.at("batch_size");
    c.eval_batch_size = jc.at("eval_batch_size");

    Vocabulary vocab;
    for (const auto& w : j.at("vocab")) vocab.Add(w.get<std::string>());
    LabelSpace labels(j.at("labels").get<std::vector<std::string>>());
    Model m = Model::Zero(c, std::move(vocab), std::move(labels));
    if (m.config.vocab_size != jc.at("vocab_size").get<int>() ||
        m.config.num_labels != jc.at("num_labels").get<int>())
      throw ParseError("vocabulary or label count does not match the config",
                       0);

    const json& t = j.at("tensors");
    const auto d = c.d_model;
    auto& p = m.params;
    p.token_table =
        MatrixFromJson(t.at("token_table"), m.config.vocab_size, d);
    p.position_table =
        MatrixFromJson(t.at("position_table"), c.max_positions, d);
    p.w_query = MatrixFromJson(t.at("w_query"), d, d);
    p.w_key = MatrixFromJson(t.at("w_key"), d, d);
    p.w_value = MatrixFromJson(t.at("w_value"), d, d);
    p.classifier =
        MatrixFromJson(t.at("classifier"), d, m.config.num_labels);
    p.bias = MatrixFromJson(t.at("bias"), m.config.num_labels, 1);
    return m;
  } catch (const json::exception& e) {
    throw ParseError(std::string("checkpoint: ") + e.what(), 0);
  }
}

}  // namespace posbias::tagger
