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

#include <gtest/gtest.h>

#include <fstream>
#include <random>
#include <sstream>

#include "oracle/oracles.h"
#include "posbias/error.h"
#include "posbias/stats.h"

namespace posbias {
namespace {

Dataset WithLengths(const std::vector<std::size_t>& lengths,
                    Task task = Task::kPosFlat) {
  std::vector<Sentence> sentences;
  for (std::size_t i = 0; i < lengths.size(); ++i) {
    Sentence s{"s" + std::to_string(i), {}};
    for (std::size_t j = 0; j < lengths[i]; ++j)
      s.tokens.push_back(Token{"w", task == Task::kPosFlat ? "NOUN" : "O", false});
    sentences.push_back(s);
  }
  return Dataset("d", Split::kTest, task, std::move(sentences));
}

Dataset Ner(const std::vector<std::vector<std::string>>& labels) {
  std::vector<Sentence> sentences;
  for (const auto& ls : labels) {
    Sentence s{"s", {}};
    for (const auto& l : ls) s.tokens.push_back(Token{"w", l, false});
    sentences.push_back(s);
  }
  return Dataset("ner", Split::kTest, Task::kNerBio, std::move(sentences));
}

TEST(LengthSummary, Singleton) {
  const LengthSummary s = ComputeLengthSummary(WithLengths({10}));
  EXPECT_EQ(s.n_sequences, 1u);
  EXPECT_DOUBLE_EQ(s.share_le_25, 1.0);
  EXPECT_DOUBLE_EQ(s.share_ge_50, 0.0);
  EXPECT_EQ(s.q1, 10u);
  EXPECT_EQ(s.q3, 10u);
}

TEST(LengthSummary, NearestRankOnFourValues) {
  const LengthSummary s = ComputeLengthSummary(WithLengths({40, 10, 30, 20}));
  EXPECT_EQ(s.q1, 10u);
  EXPECT_EQ(s.q3, 30u);
}

TEST(LengthSummary, EmptyDatasetThrows) {
  EXPECT_THROW(ComputeLengthSummary(WithLengths({5}).WithSentences({})),
               InvalidArgument);
}

TEST(LengthSummary, FixtureShares) {
  std::ifstream in(POSBIAS_TEST_DATA "/ud_fixture.conllu");
  const Dataset ds = ParseConllu(in);
  const LengthSummary s = ComputeLengthSummary(ds);
  EXPECT_EQ(s.n_sequences, 20u);
  EXPECT_DOUBLE_EQ(s.share_le_25, 0.8);
  EXPECT_DOUBLE_EQ(s.share_ge_50, 0.05);
  EXPECT_EQ(s.q1, oracle::Quantile(SentenceLengths(ds), 0.25));
  EXPECT_EQ(s.q3, oracle::Quantile(SentenceLengths(ds), 0.75));
}

TEST(NearestRank, MatchesOracleOnRandomSamples) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<std::size_t> n(1, 60), v(1, 120);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<std::size_t> values(n(rng));
    for (auto& x : values) x = v(rng);
    const auto lengths = values;
    std::sort(values.begin(), values.end());
    EXPECT_EQ(NearestRank(values, 1, 4), oracle::Quantile(lengths, 0.25));
    EXPECT_EQ(NearestRank(values, 3, 4), oracle::Quantile(lengths, 0.75));
  }
}

TEST(LengthHistogram, CountsSumToPopulation) {
  const Histogram h = LengthHistogram(WithLengths({1, 3, 3, 7}));
  EXPECT_EQ(h.Total(), 4u);
  ASSERT_EQ(h.bin_edges.size(), h.counts.size() + 1);
  for (std::size_t i = 1; i < h.bin_edges.size(); ++i)
    EXPECT_LT(h.bin_edges[i - 1], h.bin_edges[i]);
  EXPECT_EQ(h.counts[2], 2u);  // length 3
  EXPECT_EQ(h.Rebin(5).Total(), 4u);
}

TEST(ClassPositions, ChunkCountedOnceAtItsStart) {
  const auto d = ComputeClassPositions(Ner({{"O", "B-PER", "I-PER"}}), "PER");
  EXPECT_EQ(d.histogram.Total(), 1u);
  EXPECT_EQ(d.histogram.counts[1], 1u);  // position 2
  EXPECT_EQ(d.histogram.bin_edges.front(), 1);
}

TEST(ClassPositions, FullBioLabelIsAccepted) {
  const auto d = ComputeClassPositions(Ner({{"B-PER", "O"}}), "B-PER");
  EXPECT_EQ(d.label, "PER");
  EXPECT_EQ(d.histogram.counts[0], 1u);
}

TEST(ClassPositions, AbsentStandardClassGivesEmptyHistogram) {
  const auto d = ComputeClassPositions(Ner({{"B-PER", "O"}}), "LOC");
  EXPECT_EQ(d.histogram.Total(), 0u);
  const auto p = ComputeClassPositions(WithLengths({3}), "INTJ");
  EXPECT_EQ(p.histogram.Total(), 0u);
}

TEST(ClassPositions, UnknownLabelListsInventory) {
  try {
    ComputeClassPositions(Ner({{"B-PER", "O"}}), "GADGET");
    FAIL() << "expected InvalidArgument";
  } catch (const InvalidArgument& e) {
    EXPECT_NE(std::string(e.what()).find("PER"), std::string::npos);
  }
}

TEST(ClassPositions, DegenerateDistribution) {
  const auto d = ComputeClassPositions(
      Ner({{"B-PER", "O", "O"}, {"B-PER", "I-PER"}, {"B-PER"}}), "PER");
  EXPECT_EQ(d.histogram.counts[0], 3u);
  EXPECT_EQ(d.histogram.Total(), 3u);
}

TEST(ClassPositions, PosCountsEveryToken) {
  const auto d = ComputeClassPositions(WithLengths({2, 3}), "NOUN");
  EXPECT_EQ(d.histogram.Total(), 5u);
  EXPECT_EQ(d.histogram.counts.size(), 3u);
}

TEST(QuantileSubset, KeepsTheMiddleBand) {
  const Dataset sub = QuantileSubset(WithLengths({1, 10, 10, 10, 100}));
  ASSERT_EQ(sub.size(), 3u);
  for (const Sentence& s : sub.sentences()) EXPECT_EQ(s.length(), 10u);
}

TEST(QuantileSubset, DegenerateCasesKeepEverything) {
  EXPECT_EQ(QuantileSubset(WithLengths({4, 4, 4})).size(), 3u);
  EXPECT_EQ(QuantileSubset(WithLengths({9})).size(), 1u);
}

TEST(SummaryCsv, Layout) {
  std::ostringstream out;
  WriteSummaryCsvHeader(out);
  WriteSummaryCsvRow(out, "d", ComputeLengthSummary(WithLengths({10})));
  EXPECT_EQ(out.str(), "dataset,n,share_le_25,share_ge_50,q1,q3\nd,1,1,0,10,10\n");
}

TEST(Svg, IsStandalone) {
  std::ostringstream out;
  WriteHistogramSvg(out, "t", LengthHistogram(WithLengths({2, 3})));
  EXPECT_EQ(out.str().rfind("<svg", 0), 0u);
  EXPECT_NE(out.str().find("</svg>"), std::string::npos);
}

}  // namespace
}  // namespace posbias
