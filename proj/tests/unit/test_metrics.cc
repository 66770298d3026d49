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

#include <random>
#include <sstream>

#include "oracle/oracles.h"
#include "posbias/duplication.h"
#include "posbias/error.h"
#include "posbias/metrics.h"

namespace posbias {
namespace {

using Labels = std::vector<std::string>;

TEST(ExtractChunks, Basic) {
  EXPECT_EQ(ExtractChunks({"B-PER", "I-PER", "O", "B-ORG"}),
            (std::vector<Chunk>{{"PER", 0, 1}, {"ORG", 3, 3}}));
  EXPECT_TRUE(ExtractChunks({"O", "O"}).empty());
  EXPECT_TRUE(ExtractChunks({}).empty());
}

TEST(ExtractChunks, LeadingInsideOpensAChunk) {
  EXPECT_EQ(ExtractChunks({"I-LOC"}), (std::vector<Chunk>{{"LOC", 0, 0}}));
  EXPECT_EQ(ExtractChunks({"B-LOC", "I-PER"}),
            (std::vector<Chunk>{{"LOC", 0, 0}, {"PER", 1, 1}}));
}

TEST(ExtractChunks, IgnoredTokensCloseChunks) {
  EXPECT_EQ(ExtractChunks({"B-PER", "IGN", "I-PER"}),
            (std::vector<Chunk>{{"PER", 0, 0}, {"PER", 2, 2}}));
}

TEST(ChunkPrf, HalfMatch) {
  const Scores s = ChunkPrf({{"B-PER", "I-PER", "O", "B-ORG"}},
                            {{"B-PER", "O", "O", "B-ORG"}});
  EXPECT_DOUBLE_EQ(s.precision, 0.5);
  EXPECT_DOUBLE_EQ(s.recall, 0.5);
  EXPECT_DOUBLE_EQ(s.f1, 0.5);
}

TEST(ChunkPrf, Identity) {
  const std::vector<Labels> g = {{"B-PER", "I-PER", "O", "B-ORG"}};
  const Scores s = ChunkPrf(g, g);
  EXPECT_EQ(s.f1, 1.0);
  EXPECT_EQ(s.precision, 1.0);
  EXPECT_EQ(s.recall, 1.0);
}

TEST(ChunkPrf, NoPredictionsMeansZeroPrecision) {
  const Scores s = ChunkPrf({{"B-PER", "O"}}, {{"O", "O"}});
  EXPECT_EQ(s.predicted, 0u);
  EXPECT_EQ(s.precision, 0.0);
  EXPECT_EQ(s.recall, 0.0);
  EXPECT_EQ(s.f1, 0.0);
}

TEST(ChunkPrf, LengthMismatchThrows) {
  EXPECT_THROW(ChunkPrf({{"O"}}, {{"O", "O"}}), InvalidArgument);
  EXPECT_THROW(ChunkPrf({{"O"}}, {}), InvalidArgument);
}

TEST(ChunkPrf, LabelFilter) {
  ScoreOptions only_org;
  only_org.label = "ORG";
  const Scores s = ChunkPrf({{"B-PER", "I-PER", "O", "B-ORG"}},
                            {{"B-PER", "O", "O", "B-ORG"}}, only_org);
  EXPECT_EQ(s.support, 1u);
  EXPECT_EQ(s.f1, 1.0);
}

TEST(ChunkPrf, AgreesWithBruteForceOracle) {
  std::mt19937_64 rng(20240601);
  std::uniform_int_distribution<int> types(1, 4);
  for (int trial = 0; trial < 1000; ++trial) {
    const int n_types = types(rng);
    std::vector<Labels> gold, pred;
    for (int s = 0; s < 3; ++s) {
      gold.push_back(oracle::RandomBio(rng, 30, n_types));
      Labels p = oracle::RandomBio(rng, 30, n_types);
      p.resize(gold.back().size(), "O");
      pred.push_back(p);
    }
    const Scores got = ChunkPrf(gold, pred);
    const oracle::Counts want = oracle::ChunkCounts(gold, pred);
    ASSERT_EQ(got.true_positives, want.tp) << "trial " << trial;
    ASSERT_EQ(got.predicted, want.predicted) << "trial " << trial;
    ASSERT_EQ(got.support, want.gold) << "trial " << trial;
    // Self-scoring must always be perfect or undefined.
    const oracle::Counts self = oracle::ChunkCounts(gold, gold);
    ASSERT_EQ(ChunkPrf(gold, gold).true_positives, self.tp);
  }
}

TEST(TokenAccuracy, Basic) {
  const Scores s = TokenAccuracyScores({{"NOUN", "VERB"}}, {{"NOUN", "NOUN"}});
  EXPECT_DOUBLE_EQ(s.f1, 0.5);
  EXPECT_DOUBLE_EQ(s.precision, 0.5);
  EXPECT_EQ(TokenAccuracyScores({{"NOUN"}}, {{"NOUN"}}).f1, 1.0);
  EXPECT_THROW(TokenAccuracyScores({{"NOUN"}}, {{"NOUN", "X"}}),
               InvalidArgument);
}

TEST(TokenAccuracy, AgreesWithDirectCounting) {
  std::mt19937_64 rng(99);
  const std::vector<std::string> tags = {"NOUN", "VERB", "DET", "ADJ", "IGN"};
  std::uniform_int_distribution<std::size_t> tag(0, tags.size() - 1);
  std::uniform_int_distribution<std::size_t> len(1, 30);
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<Labels> gold(1), pred(1);
    const std::size_t n = len(rng);
    for (std::size_t i = 0; i < n; ++i) {
      gold[0].push_back(tags[tag(rng)]);
      pred[0].push_back(tags[tag(rng) % 4]);
    }
    const Scores got = TokenAccuracyScores(gold, pred);
    const oracle::Counts want = oracle::TokenCounts(gold, pred);
    ASSERT_EQ(got.true_positives, want.tp);
    ASSERT_EQ(got.support, want.gold);
    const double acc =
        want.gold == 0 ? 0.0 : static_cast<double>(want.tp) / want.gold;
    ASSERT_EQ(got.precision, acc);
    ASSERT_EQ(got.recall, acc);
  }
}

EvalSet NerFixture() {
  Sentence s{"a", {}};
  for (const char* l : {"B-PER", "I-PER", "O", "B-LOC"})
    s.tokens.push_back(Token{"w", l, false});
  return BuildEvalSet(Dataset("t", Split::kTest, Task::kNerBio, {s}), 3, 512);
}

TEST(WindowedScores, GoldAsPredictionIsPerfectForEveryCopy) {
  const EvalSet es = NerFixture();
  const std::vector<Labels> preds = {es.sequences[0].Labels()};
  for (int a = 1; a <= 3; ++a)
    EXPECT_EQ(WindowedScores(es, preds, a, Task::kNerBio).f1, 1.0);
}

TEST(WindowedScores, OnlyFirstCopyCorrect) {
  const EvalSet es = NerFixture();
  Labels p = es.sequences[0].Labels();
  for (std::size_t c = 1; c < 3; ++c)
    for (std::size_t j = es.sequences[0].copy_spans[c].start;
         j <= es.sequences[0].copy_spans[c].end; ++j)
      p[j] = "O";
  EXPECT_EQ(WindowedScores(es, {p}, 1, Task::kNerBio).f1, 1.0);
  EXPECT_EQ(WindowedScores(es, {p}, 2, Task::kNerBio).f1, 0.0);
}

TEST(WindowedScores, PerCopyAccuracies) {
  Sentence s{"p", {Token{"a", "NOUN", false}, Token{"b", "VERB", false}}};
  const EvalSet es =
      BuildEvalSet(Dataset("t", Split::kTest, Task::kPosFlat, {s}), 3, 512);
  // [CLS] a b [SEP] a b [SEP] a b [SEP]
  const Labels p = {"IGN", "NOUN", "VERB", "IGN", "NOUN", "NOUN",
                    "IGN", "X",    "X",    "IGN"};
  EXPECT_EQ(WindowedScores(es, {p}, 1, Task::kPosFlat).f1, 1.0);
  EXPECT_EQ(WindowedScores(es, {p}, 2, Task::kPosFlat).f1, 0.5);
  EXPECT_EQ(WindowedScores(es, {p}, 3, Task::kPosFlat).f1, 0.0);
}

TEST(WindowedScores, AlphaBeyondKThrows) {
  const EvalSet es = NerFixture();
  EXPECT_THROW(WindowedScores(es, {es.sequences[0].Labels()}, 4, Task::kNerBio),
               InvalidArgument);
  EXPECT_THROW(WindowedScores(es, {es.sequences[0].Labels()}, 0, Task::kNerBio),
               InvalidArgument);
}

std::map<std::pair<int, int>, Scores> Series(int alpha,
                                             std::map<int, double> f1) {
  std::map<std::pair<int, int>, Scores> out;
  for (auto [k, v] : f1) {
    Scores s;
    s.f1 = s.precision = s.recall = v;
    out[{k, alpha}] = s;
  }
  return out;
}

TEST(AggregateOverK, ConstantSeries) {
  std::map<int, double> f1;
  for (int k = 5; k <= 10; ++k) f1[k] = 0.9;
  std::set<int> range;
  for (int k = 2; k <= 10; ++k) range.insert(k);
  const WindowedReport r = AggregateOverK(Series(5, f1), 5, range);
  EXPECT_DOUBLE_EQ(r.mean_f1, 0.9);
  EXPECT_NEAR(r.std_f1, 0.0, 1e-15);
  EXPECT_EQ(r.k_values, (std::vector<int>{5, 6, 7, 8, 9, 10}));
}

TEST(AggregateOverK, TwoPointSampleStd) {
  const WindowedReport r =
      AggregateOverK(Series(9, {{9, 0.8}, {10, 1.0}}), 9, {9, 10});
  EXPECT_DOUBLE_EQ(r.mean_f1, 0.9);
  EXPECT_NEAR(r.std_f1, 0.1414213562373095, 1e-12);
}

TEST(AggregateOverK, SingleContributor) {
  std::map<int, double> f1;
  for (int k = 2; k <= 10; ++k) f1[k] = 0.1 * k;
  std::set<int> range;
  for (int k = 2; k <= 10; ++k) range.insert(k);
  const WindowedReport r = AggregateOverK(Series(10, f1), 10, range);
  EXPECT_EQ(r.k_values, (std::vector<int>{10}));
  EXPECT_EQ(r.std_f1, 0.0);
}

TEST(AggregateOverK, NoContributorThrows) {
  EXPECT_THROW(AggregateOverK(Series(3, {{2, 0.5}}), 3, {2}), InvalidArgument);
}

TEST(Predictions, RoundTripAndAlign) {
  const EvalSet es = NerFixture();
  const std::vector<Prediction> preds = {{es.sequences[0].origin_id, es.sequences[0].Labels()}};
  std::ostringstream out;
  WritePredictions(preds, out);
  std::istringstream in(out.str());
  const auto back = ReadPredictions(in);
  ASSERT_EQ(back.size(), 1u);
  EXPECT_EQ(back[0].pred_labels, preds[0].pred_labels);
  EXPECT_EQ(AlignPredictions(es, back)[0], preds[0].pred_labels);
  EXPECT_THROW(AlignPredictions(es, {}), InvalidArgument);
}

TEST(ReportCsv, Header) {
  std::ostringstream out;
  WriteReportCsvHeader(out);
  EXPECT_EQ(out.str(), "alpha,mean_f1,std_f1,mean_p,std_p,mean_r,std_r,n_k\n");
}

}  // namespace
}  // namespace posbias
