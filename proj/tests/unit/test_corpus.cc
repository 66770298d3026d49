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
#include <sstream>

#include "posbias/corpus.h"
#include "posbias/error.h"

namespace posbias {
namespace {

Dataset Conll(const std::string& text) {
  std::istringstream in(text);
  return ParseConll2003(in);
}

Dataset Conllu(const std::string& text) {
  std::istringstream in(text);
  return ParseConllu(in);
}

TEST(Conll2003, LastColumnIsTheLabel) {
  const Dataset ds = Conll("EU NNP B-NP B-ORG\n. . O O\n");
  ASSERT_EQ(ds.size(), 1u);
  const Sentence& s = ds.sentences()[0];
  ASSERT_EQ(s.length(), 2u);
  EXPECT_EQ(s.Labels(), (std::vector<std::string>{"B-ORG", "O"}));
  EXPECT_EQ(s.Surfaces(), (std::vector<std::string>{"EU", "."}));
  EXPECT_FALSE(s.tokens[0].is_special);
}

TEST(Conll2003, DocstartOnlyHasNoSentences) {
  try {
    Conll("-DOCSTART- -X- -X- O\n\n\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("no sentences"), std::string::npos);
  }
}

TEST(Conll2003, BlankLineSeparatesSentences) {
  const Dataset ds = Conll("a X O\nb X B-PER\n\nc X O\n");
  EXPECT_EQ(ds.size(), 2u);
  EXPECT_EQ(ds.label_inventory(), (std::set<std::string>{"O", "B-PER"}));
}

TEST(Conll2003, ShortLineReportsLineNumber) {
  try {
    Conll("a X O\nlonely\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
}

TEST(Conll2003, RejectsNonBioLabels) {
  EXPECT_THROW(Conll("a X NOUN\n"), ParseError);
}

TEST(Conll2003, ToleratesCrlf) {
  const Dataset ds = Conll("a X O\r\nb X B-LOC\r\n\r\n");
  EXPECT_EQ(ds.sentences()[0].Labels(),
            (std::vector<std::string>{"O", "B-LOC"}));
}

TEST(Conll2003, RejectsInvalidUtf8) {
  EXPECT_THROW(Conll("a\xff X O\n"), ParseError);
}

TEST(Conll2003, FixtureFile) {
  std::ifstream in(POSBIAS_TEST_DATA "/conll2003_fixture.txt");
  const Dataset ds = ParseConll2003(in, {"fixture", Split::kTrain});
  EXPECT_EQ(ds.size(), 4u);
  EXPECT_EQ(ds.sentences()[1].Labels(),
            (std::vector<std::string>{"B-PER", "I-PER"}));
  EXPECT_EQ(ds.task(), Task::kNerBio);
  EXPECT_EQ(ds.split(), Split::kTrain);
}

const char* kTheRow = "1\tthe\tthe\tDET\tDT\t_\t2\tdet\t_\t_\n";

TEST(Conllu, UposIsTheLabel) {
  const Dataset ds = Conllu(kTheRow);
  const Token& t = ds.sentences()[0].tokens[0];
  EXPECT_EQ(t.surface, "the");
  EXPECT_EQ(t.label, "DET");
  EXPECT_EQ(ds.task(), Task::kPosFlat);
}

TEST(Conllu, RangeLinesAndEmptyNodesAreDropped) {
  const Dataset ds = Conllu(
      "# sent_id = s1\n"
      "3-4\tdon't\t_\t_\t_\t_\t_\t_\t_\t_\n"
      "3\tdo\tdo\tAUX\t_\t_\t0\troot\t_\t_\n"
      "3.1\tx\tx\tNOUN\t_\t_\t_\t_\t_\t_\n"
      "4\tn't\tnot\tPART\t_\t_\t3\tadvmod\t_\t_\n");
  const Sentence& s = ds.sentences()[0];
  EXPECT_EQ(s.id, "s1");
  EXPECT_EQ(s.Surfaces(), (std::vector<std::string>{"do", "n't"}));
}

TEST(Conllu, CommentsOnlyHasNoSentences) {
  EXPECT_THROW(Conllu("# a\n# b\n\n"), ParseError);
}

TEST(Conllu, WrongColumnCountReportsLineNumber) {
  try {
    Conllu(std::string(kTheRow) + "2\tcat\tcat\tNOUN\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
}

TEST(Jsonl, RoundTripsTheFixtureCorpus) {
  std::ifstream in(POSBIAS_TEST_DATA "/ud_fixture.conllu");
  const Dataset ds = ParseConllu(in, {"ud", Split::kTest});
  std::ostringstream out;
  SerializeDataset(ds, out);
  std::istringstream back(out.str());
  const Dataset again = DeserializeDataset(back, {"ud", Split::kTest});
  EXPECT_EQ(again, ds);
}

TEST(Jsonl, OneLinePerSentence) {
  const Dataset ds = Conll("a X O\n\nb X O\n");
  std::ostringstream out;
  SerializeDataset(ds, out);
  const std::string s = out.str();
  EXPECT_EQ(std::count(s.begin(), s.end(), '\n'), 2);
}

TEST(Dataset, RefusesInvalidContent) {
  EXPECT_THROW(Dataset("x", Split::kTest, Task::kNerBio, {Sentence{"s", {}}}),
               InvalidArgument);
  EXPECT_THROW(Dataset("x", Split::kTest, Task::kNerBio,
                       {Sentence{"s", {Token{"a b", "O", false}}}}),
               InvalidArgument);
  EXPECT_THROW(Dataset("x", Split::kTest, Task::kNerBio,
                       {Sentence{"s", {Token{"a", "NOUN", false}}}}),
               InvalidArgument);
  EXPECT_THROW(Dataset("x", Split::kTest, Task::kPosFlat,
                       {Sentence{"s", {Token{"[CLS]", "IGN", true}}}}),
               InvalidArgument);
}

TEST(Labels, BioShape) {
  EXPECT_TRUE(IsBioLabel("O"));
  EXPECT_TRUE(IsBioLabel("B-PER"));
  EXPECT_TRUE(IsBioLabel("I-MISC"));
  EXPECT_FALSE(IsBioLabel("B-"));
  EXPECT_FALSE(IsBioLabel("NOUN"));
  EXPECT_EQ(EntityType("I-LOC"), "LOC");
}

}  // namespace
}  // namespace posbias
