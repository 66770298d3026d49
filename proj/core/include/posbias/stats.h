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

#ifndef POSBIAS_STATS_H_
#define POSBIAS_STATS_H_

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "posbias/corpus.h"

namespace posbias {

// Bin i covers [bin_edges[i], bin_edges[i + 1]).
struct Histogram {
  std::vector<int> bin_edges;
  std::vector<std::size_t> counts;

  std::size_t Total() const;
  // Merges adjacent unit bins into bins of `width`.
  Histogram Rebin(int width) const;
};

struct LengthSummary {
  std::size_t n_sequences = 0;
  double share_le_25 = 0.0;
  double share_ge_50 = 0.0;
  std::size_t q1 = 0;
  std::size_t q3 = 0;
};

struct ClassPositionDistribution {
  std::string label;
  Histogram histogram;
};

// Nearest-rank quantile: the value at 1-based index ceil(p * N) of the sorted
// values, for p in (0, 1]. `sorted` must be non-empty and ascending.
std::size_t NearestRank(const std::vector<std::size_t>& sorted, int numerator,
                        int denominator);

std::vector<std::size_t> SentenceLengths(const Dataset& dataset);

LengthSummary ComputeLengthSummary(const Dataset& dataset);

// Unit bins over lengths 1..max length.
Histogram LengthHistogram(const Dataset& dataset);

// For NER datasets `label` is an entity type ("PER"; a full "B-PER" is also
// accepted) and each chunk is counted once at its first token. For POS
// datasets every token carrying `label` is counted. Positions are 1-based
// with unit bins over 1..max length. Standard classes missing from the data
// (CoNLL entity types, UPOS tags) give an all-zero histogram; any other label
// outside the inventory throws InvalidArgument.
ClassPositionDistribution ComputeClassPositions(const Dataset& dataset,
                                                const std::string& label);

// Labels accepted by ComputeClassPositions: entity types for NER, the raw
// inventory for POS.
std::vector<std::string> PositionLabels(const Dataset& dataset);

// Sentences with q1 <= length <= q3, q1/q3 computed on `dataset`.
Dataset QuantileSubset(const Dataset& dataset);

// Concatenates datasets of the same task (e.g. train+dev+test).
Dataset UnionOf(const std::vector<Dataset>& parts, const std::string& name);

void WriteSummaryCsvHeader(std::ostream& out);
void WriteSummaryCsvRow(std::ostream& out, const std::string& dataset,
                        const LengthSummary& summary);
void WriteHistogramCsvHeader(std::ostream& out);
void WriteHistogramCsvRows(std::ostream& out, const std::string& metric,
                           const std::string& label, const Histogram& hist);

// Minimal standalone SVG bar chart.
void WriteHistogramSvg(std::ostream& out, const std::string& title,
                       const Histogram& hist);

}  // namespace posbias

#endif  // POSBIAS_STATS_H_
