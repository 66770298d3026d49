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

#ifndef POSBIAS_METRICS_H_
#define POSBIAS_METRICS_H_

#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "posbias/corpus.h"

namespace posbias {

struct EvalSet;

// Inclusive entity span.
struct Chunk {
  std::string type;
  std::size_t start = 0;
  std::size_t end = 0;

  friend auto operator<=>(const Chunk&, const Chunk&) = default;
};

struct Scores {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  // Gold chunks (NER) or scored tokens (POS).
  std::size_t support = 0;
  std::size_t true_positives = 0;
  std::size_t predicted = 0;
};

struct WindowedReport {
  int alpha = 1;
  double mean_f1 = 0.0, std_f1 = 0.0;
  double mean_p = 0.0, std_p = 0.0;
  double mean_r = 0.0, std_r = 0.0;
  std::vector<int> k_values;
};

// Restricts scoring to one class: an entity type for NER, a tag for POS.
struct ScoreOptions {
  std::optional<std::string> label;
};

// conlleval chunking. "I-X" that does not continue an open X chunk starts one
// (IOB1 tolerance); "IGN", "O" and any non-BIO label close open chunks.
// Chunks are returned ordered by start.
std::vector<Chunk> ExtractChunks(const std::vector<std::string>& labels);

// Micro-averaged exact (type, start, end) matching over all sequences.
// Positions where gold is "IGN" are excluded from both sides. Precision is 0
// without predictions, recall is 0 without gold chunks. Throws
// InvalidArgument on any length mismatch.
Scores ChunkPrf(const std::vector<std::vector<std::string>>& gold,
                const std::vector<std::vector<std::string>>& pred,
                const ScoreOptions& options = {});

// Token-level micro scores over non-"IGN" gold positions. Without a label
// filter precision = recall = f1 = accuracy.
Scores TokenAccuracyScores(const std::vector<std::vector<std::string>>& gold,
                           const std::vector<std::vector<std::string>>& pred,
                           const ScoreOptions& options = {});

// ChunkPrf for kNerBio, TokenAccuracyScores for kPosFlat.
Scores ScoreTask(Task task, const std::vector<std::vector<std::string>>& gold,
                 const std::vector<std::vector<std::string>>& pred,
                 const ScoreOptions& options = {});

// Scores only copy `alpha` (1-based) of every duplicated sequence. `preds`
// must be aligned with the eval set's token layout.
Scores WindowedScores(const EvalSet& eval_set,
                      const std::vector<std::vector<std::string>>& preds,
                      int alpha, Task task, const ScoreOptions& options = {});

// Mean and sample (n - 1) standard deviation; std is 0 for one value.
std::pair<double, double> MeanStd(const std::vector<double>& values);

// Mean/std of the scores at `alpha` over every k in k_range with k >= alpha.
// Throws InvalidArgument when no k contributes or a needed cell is missing.
WindowedReport AggregateOverK(const std::map<std::pair<int, int>, Scores>& results,
                              int alpha, const std::set<int>& k_range);

// Same aggregation over an arbitrary list of samples.
WindowedReport AggregateSamples(int alpha, const std::vector<Scores>& samples,
                                std::vector<int> k_values);

struct Prediction {
  std::string origin_id;
  std::vector<std::string> pred_labels;
};

// {"origin_id","pred_labels"} per line.
std::vector<Prediction> ReadPredictions(std::istream& in);
void WritePredictions(const std::vector<Prediction>& preds, std::ostream& out);

// Checks count, order, origin ids and lengths against the eval set and
// returns the bare label lists.
std::vector<std::vector<std::string>> AlignPredictions(
    const EvalSet& eval_set, const std::vector<Prediction>& preds);

void WriteReportCsvHeader(std::ostream& out);
void WriteReportCsvRow(std::ostream& out, const WindowedReport& report);

}  // namespace posbias

#endif  // POSBIAS_METRICS_H_
