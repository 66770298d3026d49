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

#include "posbias/metrics.h"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numeric>
#include <tuple>
#include <ostream>

#include "json.hpp"
#include "posbias/duplication.h"
#include "posbias/error.h"

namespace posbias {
namespace {

using nlohmann::json;
using LabelLists = std::vector<std::vector<std::string>>;

void CheckAligned(const LabelLists& gold, const LabelLists& pred) {
  if (gold.size() != pred.size())
    throw InvalidArgument("gold has " + std::to_string(gold.size()) +
                          " sequences, predictions have " +
                          std::to_string(pred.size()));
  for (std::size_t i = 0; i < gold.size(); ++i) {
    if (gold[i].size() != pred[i].size())
      throw InvalidArgument("sequence " + std::to_string(i) + ": gold has " +
                            std::to_string(gold[i].size()) +
                            " labels, prediction has " +
                            std::to_string(pred[i].size()));
  }
}

Scores FromCounts(std::size_t tp, std::size_t n_pred, std::size_t n_gold) {
  Scores s;
  s.true_positives = tp;
  s.predicted = n_pred;
  s.support = n_gold;
  s.precision = n_pred == 0 ? 0.0 : static_cast<double>(tp) / n_pred;
  s.recall = n_gold == 0 ? 0.0 : static_cast<double>(tp) / n_gold;
  const double pr = s.precision + s.recall;
  s.f1 = pr > 0.0 ? 2.0 * s.precision * s.recall / pr : 0.0;
  return s;
}

}  // namespace

std::vector<Chunk> ExtractChunks(const std::vector<std::string>& labels) {
  std::vector<Chunk> chunks;
  bool open = false;
  Chunk current;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const std::string& l = labels[i];
    const bool bio = l != "O" && IsBioLabel(l);
    const char tag = bio ? l[0] : 'O';
    const std::string_view type = bio ? EntityType(l) : std::string_view{};

    if (open && (tag != 'I' || type != current.type)) {
      current.end = i - 1;
      chunks.push_back(current);
      open = false;
    }
    if (tag == 'B' || (tag == 'I' && !open)) {
      open = true;
      current.type = std::string(type);
      current.start = i;
    }
  }
  if (open) {
    current.end = labels.size() - 1;
    chunks.push_back(current);
  }
  return chunks;
}

Scores ChunkPrf(const LabelLists& gold, const LabelLists& pred,
                const ScoreOptions& options) {
  CheckAligned(gold, pred);
  std::size_t tp = 0, n_pred = 0, n_gold = 0;
  const auto keep = [&](const Chunk& c) {
    return !options.label || c.type == *options.label;
  };
  std::vector<std::string> masked;
  for (std::size_t i = 0; i < gold.size(); ++i) {
    masked = pred[i];
    for (std::size_t j = 0; j < masked.size(); ++j) {
      if (gold[i][j] == kIgnoreLabel) masked[j] = kIgnoreLabel;
    }
    auto g = ExtractChunks(gold[i]);
    auto p = ExtractChunks(masked);
    std::erase_if(g, [&](const Chunk& c) { return !keep(c); });
    std::erase_if(p, [&](const Chunk& c) { return !keep(c); });
    n_gold += g.size();
    n_pred += p.size();
    // Both lists are sorted by start and chunks within one list never
    // overlap, so an exact match can be found by merging.
    std::size_t a = 0, b = 0;
    while (a < g.size() && b < p.size()) {
      if (g[a] == p[b]) {
        ++tp;
        ++a;
        ++b;
      } else if (std::tie(g[a].start, g[a].end, g[a].type) <
                 std::tie(p[b].start, p[b].end, p[b].type)) {
        ++a;
      } else {
        ++b;
      }
    }
  }
  return FromCounts(tp, n_pred, n_gold);
}

Scores TokenAccuracyScores(const LabelLists& gold, const LabelLists& pred,
                           const ScoreOptions& options) {
  CheckAligned(gold, pred);
  std::size_t tp = 0, n_pred = 0, n_gold = 0;
  for (std::size_t i = 0; i < gold.size(); ++i) {
    for (std::size_t j = 0; j < gold[i].size(); ++j) {
      const std::string& g = gold[i][j];
      if (g == kIgnoreLabel) continue;
      const std::string& p = pred[i][j];
      if (options.label) {
        const bool gl = g == *options.label, pl = p == *options.label;
        n_gold += gl;
        n_pred += pl;
        tp += gl && pl;
      } else {
        ++n_gold;
        ++n_pred;
        tp += g == p;
      }
    }
  }
  return FromCounts(tp, n_pred, n_gold);
}

Scores ScoreTask(Task task, const LabelLists& gold, const LabelLists& pred,
                 const ScoreOptions& options) {
  return task == Task::kNerBio ? ChunkPrf(gold, pred, options)
                               : TokenAccuracyScores(gold, pred, options);
}

Scores WindowedScores(const EvalSet& eval_set, const LabelLists& preds,
                      int alpha, Task task, const ScoreOptions& options) {
  if (alpha < 1 || alpha > eval_set.k)
    throw InvalidArgument("alpha " + std::to_string(alpha) +
                          " outside 1.." + std::to_string(eval_set.k));
  if (preds.size() != eval_set.sequences.size())
    throw InvalidArgument("expected " +
                          std::to_string(eval_set.sequences.size()) +
                          " prediction sequences, got " +
                          std::to_string(preds.size()));
  LabelLists gold_window, pred_window;
  gold_window.reserve(preds.size());
  pred_window.reserve(preds.size());
  for (std::size_t i = 0; i < preds.size(); ++i) {
    const DuplicatedSequence& seq = eval_set.sequences[i];
    if (preds[i].size() != seq.tokens.size())
      throw InvalidArgument("sequence '" + seq.origin_id +
                            "': prediction length does not match");
    const CopySpan& span = seq.copy_spans.at(alpha - 1);
    std::vector<std::string> g, p;
    for (std::size_t j = span.start; j <= span.end; ++j) {
      g.push_back(seq.tokens[j].label);
      p.push_back(preds[i][j]);
    }
    gold_window.push_back(std::move(g));
    pred_window.push_back(std::move(p));
  }
  return ScoreTask(task, gold_window, pred_window, options);
}

std::pair<double, double> MeanStd(const std::vector<double>& values) {
  if (values.empty()) throw InvalidArgument("mean of no values");
  const double n = static_cast<double>(values.size());
  const double mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
  if (values.size() == 1) return {mean, 0.0};
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  return {mean, std::sqrt(ss / (n - 1.0))};
}

WindowedReport AggregateSamples(int alpha, const std::vector<Scores>& samples,
                                std::vector<int> k_values) {
  if (samples.empty())
    throw InvalidArgument("no scores contribute to alpha " +
                          std::to_string(alpha));
  std::vector<double> f, p, r;
  for (const Scores& s : samples) {
    f.push_back(s.f1);
    p.push_back(s.precision);
    r.push_back(s.recall);
  }
  WindowedReport out;
  out.alpha = alpha;
  std::tie(out.mean_f1, out.std_f1) = MeanStd(f);
  std::tie(out.mean_p, out.std_p) = MeanStd(p);
  std::tie(out.mean_r, out.std_r) = MeanStd(r);
  out.k_values = std::move(k_values);
  return out;
}

WindowedReport AggregateOverK(
    const std::map<std::pair<int, int>, Scores>& results, int alpha,
    const std::set<int>& k_range) {
  std::vector<Scores> samples;
  std::vector<int> ks;
  for (int k : k_range) {
    if (k < alpha) continue;
    const auto it = results.find({k, alpha});
    if (it == results.end())
      throw InvalidArgument("missing scores for k=" + std::to_string(k) +
                            ", alpha=" + std::to_string(alpha));
    samples.push_back(it->second);
    ks.push_back(k);
  }
  return AggregateSamples(alpha, samples, std::move(ks));
}

std::vector<Prediction> ReadPredictions(std::istream& in) {
  std::vector<Prediction> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      const json r = json::parse(line);
      out.push_back({r.at("origin_id").get<std::string>(),
                     r.at("pred_labels").get<std::vector<std::string>>()});
    } catch (const json::exception& e) {
      throw ParseError(e.what(), line_no);
    }
  }
  return out;
}

void WritePredictions(const std::vector<Prediction>& preds, std::ostream& out) {
  for (const Prediction& p : preds) {
    out << json{{"origin_id", p.origin_id}, {"pred_labels", p.pred_labels}}
               .dump()
        << '\n';
  }
}

LabelLists AlignPredictions(const EvalSet& eval_set,
                            const std::vector<Prediction>& preds) {
  if (preds.size() != eval_set.sequences.size())
    throw InvalidArgument("eval set has " +
                          std::to_string(eval_set.sequences.size()) +
                          " sequences, prediction file has " +
                          std::to_string(preds.size()));
  LabelLists out;
  out.reserve(preds.size());
  for (std::size_t i = 0; i < preds.size(); ++i) {
    const DuplicatedSequence& seq = eval_set.sequences[i];
    if (preds[i].origin_id != seq.origin_id)
      throw InvalidArgument("prediction " + std::to_string(i) + " is for '" +
                            preds[i].origin_id + "', expected '" +
                            seq.origin_id + "'");
    if (preds[i].pred_labels.size() != seq.tokens.size())
      throw InvalidArgument("prediction for '" + seq.origin_id +
                            "' has the wrong length");
    out.push_back(preds[i].pred_labels);
  }
  return out;
}

void WriteReportCsvHeader(std::ostream& out) {
  out << "alpha,mean_f1,std_f1,mean_p,std_p,mean_r,std_r,n_k\n";
}

void WriteReportCsvRow(std::ostream& out, const WindowedReport& r) {
  out << r.alpha << ',' << r.mean_f1 << ',' << r.std_f1 << ',' << r.mean_p
      << ',' << r.std_p << ',' << r.mean_r << ',' << r.std_r << ','
      << r.k_values.size() << '\n';
}

}  // namespace posbias
