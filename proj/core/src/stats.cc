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

#include "posbias/stats.h"

#include <algorithm>
#include <array>
#include <numeric>
#include <ostream>

#include "posbias/error.h"
#include "posbias/metrics.h"

namespace posbias {
namespace {

Histogram UnitHistogram(std::size_t max_value) {
  Histogram h;
  h.bin_edges.resize(max_value + 1);
  std::iota(h.bin_edges.begin(), h.bin_edges.end(), 1);
  h.counts.assign(max_value, 0);
  return h;
}

}  // namespace

std::size_t Histogram::Total() const {
  return std::accumulate(counts.begin(), counts.end(), std::size_t{0});
}

Histogram Histogram::Rebin(int width) const {
  if (width < 1) throw InvalidArgument("bin width must be >= 1");
  Histogram out;
  if (counts.empty()) {
    out.bin_edges = bin_edges;
    return out;
  }
  for (std::size_t i = 0; i < counts.size(); i += width) {
    out.bin_edges.push_back(bin_edges[i]);
    std::size_t sum = 0;
    const std::size_t end = std::min(counts.size(), i + width);
    for (std::size_t j = i; j < end; ++j) sum += counts[j];
    out.counts.push_back(sum);
  }
  out.bin_edges.push_back(bin_edges.back());
  return out;
}

std::size_t NearestRank(const std::vector<std::size_t>& sorted, int numerator,
                        int denominator) {
  if (sorted.empty()) throw InvalidArgument("quantile of an empty sample");
  const std::size_t n = sorted.size();
  // ceil(numerator * n / denominator) in integer arithmetic.
  std::size_t rank = (numerator * n + denominator - 1) / denominator;
  rank = std::clamp<std::size_t>(rank, 1, n);
  return sorted[rank - 1];
}

std::vector<std::size_t> SentenceLengths(const Dataset& dataset) {
  std::vector<std::size_t> lengths;
  lengths.reserve(dataset.size());
  for (const Sentence& s : dataset.sentences()) lengths.push_back(s.length());
  return lengths;
}

LengthSummary ComputeLengthSummary(const Dataset& dataset) {
  if (dataset.empty()) throw InvalidArgument("length summary of empty dataset");
  auto lengths = SentenceLengths(dataset);
  std::sort(lengths.begin(), lengths.end());
  const auto n = lengths.size();
  const auto le25 = std::count_if(lengths.begin(), lengths.end(),
                                  [](std::size_t l) { return l <= 25; });
  const auto ge50 = std::count_if(lengths.begin(), lengths.end(),
                                  [](std::size_t l) { return l >= 50; });
  LengthSummary s;
  s.n_sequences = n;
  s.share_le_25 = static_cast<double>(le25) / static_cast<double>(n);
  s.share_ge_50 = static_cast<double>(ge50) / static_cast<double>(n);
  s.q1 = NearestRank(lengths, 1, 4);
  s.q3 = NearestRank(lengths, 3, 4);
  return s;
}

Histogram LengthHistogram(const Dataset& dataset) {
  Histogram h = UnitHistogram(dataset.MaxLength());
  for (const Sentence& s : dataset.sentences()) ++h.counts[s.length() - 1];
  return h;
}

// Labels that may legitimately be absent from a corpus: they yield an empty
// histogram instead of an error.
constexpr std::array<std::string_view, 4> kNerTypes = {"PER", "ORG", "LOC",
                                                       "MISC"};
constexpr std::array<std::string_view, 17> kUposTags = {
    "ADJ",  "ADP", "ADV",  "AUX",   "CCONJ", "DET",  "INTJ", "NOUN", "NUM",
    "PART", "PRON", "PROPN", "PUNCT", "SCONJ", "SYM", "VERB", "X"};

std::vector<std::string> PositionLabels(const Dataset& dataset) {
  if (dataset.task() == Task::kPosFlat)
    return {dataset.label_inventory().begin(), dataset.label_inventory().end()};
  std::vector<std::string> types;
  for (const std::string& label : dataset.label_inventory()) {
    const auto type = EntityType(label);
    if (!type.empty()) types.emplace_back(type);
  }
  std::sort(types.begin(), types.end());
  types.erase(std::unique(types.begin(), types.end()), types.end());
  return types;
}

ClassPositionDistribution ComputeClassPositions(const Dataset& dataset,
                                                const std::string& label) {
  std::string wanted = label;
  if (dataset.task() == Task::kNerBio && IsBioLabel(label) && label != "O")
    wanted = std::string(EntityType(label));

  const auto known = PositionLabels(dataset);
  const bool standard =
      dataset.task() == Task::kNerBio
          ? std::find(kNerTypes.begin(), kNerTypes.end(), wanted) !=
                kNerTypes.end()
          : std::find(kUposTags.begin(), kUposTags.end(), wanted) !=
                kUposTags.end();
  if (!standard &&
      std::find(known.begin(), known.end(), wanted) == known.end()) {
    std::string listing;
    for (const auto& k : known) listing += (listing.empty() ? "" : ", ") + k;
    throw InvalidArgument("unknown label '" + label + "'; inventory: " +
                          listing);
  }

  ClassPositionDistribution out{wanted, UnitHistogram(dataset.MaxLength())};
  for (const Sentence& s : dataset.sentences()) {
    if (dataset.task() == Task::kNerBio) {
      for (const Chunk& c : ExtractChunks(s.Labels())) {
        if (c.type == wanted) ++out.histogram.counts[c.start];
      }
    } else {
      for (std::size_t i = 0; i < s.tokens.size(); ++i) {
        if (s.tokens[i].label == wanted) ++out.histogram.counts[i];
      }
    }
  }
  return out;
}

Dataset QuantileSubset(const Dataset& dataset) {
  const LengthSummary summary = ComputeLengthSummary(dataset);
  std::vector<Sentence> kept;
  for (const Sentence& s : dataset.sentences()) {
    if (s.length() >= summary.q1 && s.length() <= summary.q3)
      kept.push_back(s);
  }
  return dataset.WithSentences(std::move(kept));
}

Dataset UnionOf(const std::vector<Dataset>& parts, const std::string& name) {
  if (parts.empty()) throw InvalidArgument("union of no datasets");
  std::vector<Sentence> all;
  for (const Dataset& d : parts) {
    if (d.task() != parts.front().task())
      throw InvalidArgument("cannot merge datasets of different tasks");
    all.insert(all.end(), d.sentences().begin(), d.sentences().end());
  }
  return Dataset(name, parts.front().split(), parts.front().task(),
                 std::move(all));
}

void WriteSummaryCsvHeader(std::ostream& out) {
  out << "dataset,n,share_le_25,share_ge_50,q1,q3\n";
}

void WriteSummaryCsvRow(std::ostream& out, const std::string& dataset,
                        const LengthSummary& s) {
  out << dataset << ',' << s.n_sequences << ',' << s.share_le_25 << ','
      << s.share_ge_50 << ',' << s.q1 << ',' << s.q3 << '\n';
}

void WriteHistogramCsvHeader(std::ostream& out) {
  out << "metric,label,bin,count\n";
}

void WriteHistogramCsvRows(std::ostream& out, const std::string& metric,
                           const std::string& label, const Histogram& hist) {
  for (std::size_t i = 0; i < hist.counts.size(); ++i)
    out << metric << ',' << label << ',' << hist.bin_edges[i] << ','
        << hist.counts[i] << '\n';
}

void WriteHistogramSvg(std::ostream& out, const std::string& title,
                       const Histogram& hist) {
  constexpr int kWidth = 640, kHeight = 320, kMargin = 30;
  const std::size_t peak =
      hist.counts.empty()
          ? 0
          : *std::max_element(hist.counts.begin(), hist.counts.end());
  const double bar_w =
      hist.counts.empty()
          ? 0.0
          : static_cast<double>(kWidth - 2 * kMargin) / hist.counts.size();
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
      << "\" height=\"" << kHeight << "\">\n";
  out << "<text x=\"" << kMargin << "\" y=\"20\" font-size=\"14\">" << title
      << "</text>\n";
  for (std::size_t i = 0; i < hist.counts.size(); ++i) {
    const double h =
        peak == 0 ? 0.0
                  : static_cast<double>(hist.counts[i]) / peak *
                        (kHeight - 2 * kMargin);
    out << "<rect x=\"" << kMargin + i * bar_w << "\" y=\""
        << kHeight - kMargin - h << "\" width=\"" << bar_w * 0.9
        << "\" height=\"" << h << "\" fill=\"steelblue\"/>\n";
  }
  out << "</svg>\n";
}

}  // namespace posbias
