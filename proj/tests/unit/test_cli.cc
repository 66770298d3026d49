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

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.h"
#include "posbias/duplication.h"
#include "posbias/metrics.h"

namespace posbias::cli {
namespace {

namespace fs = std::filesystem;

struct Outcome {
  int code;
  std::string out, err;
};

Outcome Invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "posbias");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = Main(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string Slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("posbias_cli_" +
            std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string Path(const std::string& name) const { return (dir_ / name).string(); }
  fs::path dir_;
};

const std::string kUd = POSBIAS_TEST_DATA "/ud_fixture.conllu";
const std::string kConll = POSBIAS_TEST_DATA "/conll2003_fixture.txt";

TEST_F(CliTest, StatsSummaryRow) {
  const Outcome o =
      Invoke({"stats", kUd, "--format", "conllu", "--svg", "--out", Path("s")});
  ASSERT_EQ(o.code, 0) << o.err;
  EXPECT_NE(o.out.find("ud_fixture,20,0.8,0.05,9,23"), std::string::npos)
      << o.out;
  EXPECT_TRUE(fs::exists(Path("s/summary.csv")));
  EXPECT_TRUE(fs::exists(Path("s/histograms.csv")));
  EXPECT_TRUE(fs::exists(Path("s/ud_fixture_lengths.svg")));
}

TEST_F(CliTest, StatsOnADirectory) {
  fs::create_directories(Path("ud"));
  fs::copy_file(kUd, Path("ud/en-ud-test.conllu"));
  fs::copy_file(kUd, Path("ud/en-ud-train.conllu"));
  const Outcome o =
      Invoke({"stats", Path("ud"), "--format", "conllu", "--out", Path("s")});
  ASSERT_EQ(o.code, 0) << o.err;
  EXPECT_NE(o.out.find("ud,40,0.8,0.05"), std::string::npos) << o.out;
}

TEST_F(CliTest, DuplicateThenEvaluateGold) {
  Outcome o = Invoke({"duplicate", kConll, "--format", "conll2003", "--k", "1",
                      "--out", Path("e")});
  ASSERT_EQ(o.code, 0) << o.err;
  std::ifstream in(Path("e/eval_k1.jsonl"));
  const EvalSet es = ReadEvalSet(in);
  std::vector<Prediction> gold;
  for (const auto& s : es.sequences) gold.push_back({s.origin_id, s.Labels()});
  {
    std::ofstream p(Path("gold.jsonl"));
    WritePredictions(gold, p);
  }
  o = Invoke({"evaluate", Path("e/eval_k1.jsonl"), "--predictions",
              Path("gold.jsonl"), "--alpha", "1", "--out", Path("r")});
  ASSERT_EQ(o.code, 0) << o.err;
  EXPECT_NE(o.out.find("\n1,1,0,1,0,1,0,1\n"), std::string::npos) << o.out;
}

TEST_F(CliTest, DuplicateKRange) {
  const Outcome o = Invoke({"duplicate", kConll, "--format", "conll2003",
                            "--k-range", "2..4", "--out", Path("e")});
  ASSERT_EQ(o.code, 0) << o.err;
  for (int k = 2; k <= 4; ++k)
    EXPECT_TRUE(fs::exists(Path("e/eval_k" + std::to_string(k) + ".jsonl")));
  EXPECT_FALSE(fs::exists(Path("e/eval_k1.jsonl")));
}

TEST_F(CliTest, PerturbIsIdempotent) {
  for (const char* t : {"rpp", "cp"}) {
    const Outcome a = Invoke({"perturb", kConll, "--format", "conll2003",
                              "--transform", t, "--seed", "23456", "--audit",
                              Path("a1.json"), "--out", Path("p1")});
    const Outcome b = Invoke({"perturb", kConll, "--format", "conll2003",
                              "--transform", t, "--seed", "23456", "--audit",
                              Path("a2.json"), "--out", Path("p2")});
    ASSERT_EQ(a.code, 0) << a.err;
    ASSERT_EQ(b.code, 0) << b.err;
    EXPECT_EQ(Slurp(Path("p1/perturbed.jsonl")), Slurp(Path("p2/perturbed.jsonl")));
    EXPECT_EQ(Slurp(Path("a1.json")), Slurp(Path("a2.json")));
    EXPECT_FALSE(Slurp(Path("a1.json")).empty());
  }
}

TEST_F(CliTest, PerturbReadsBatchFiles) {
  ASSERT_EQ(Invoke({"perturb", kConll, "--format", "conll2003", "--out",
                    Path("plain")})
                .code,
            0);
  const Outcome o = Invoke({"perturb", Path("plain/perturbed.jsonl"),
                            "--transform", "rpp", "--out", Path("shifted")});
  ASSERT_EQ(o.code, 0) << o.err;
  const std::string before = Slurp(Path("plain/perturbed.jsonl"));
  const std::string after = Slurp(Path("shifted/perturbed.jsonl"));
  EXPECT_EQ(before.substr(0, before.find('\n')), after.substr(0, after.find('\n')));
  EXPECT_NE(before, after);
}

TEST_F(CliTest, TrainEvaluateReport) {
  ASSERT_EQ(Invoke({"synth", "--n-train", "200", "--n-test", "40", "--out",
                    Path("d")})
                .code,
            0);
  Outcome o = Invoke({"train", Path("d/train.jsonl"), "--seeds", "1,2",
                      "--d-model", "4", "--epochs", "1", "--lr", "0.5",
                      "--max-len", "128", "--audit", Path("cov.json"), "--out",
                      Path("m")});
  ASSERT_EQ(o.code, 0) << o.err;
  EXPECT_TRUE(fs::exists(Path("m/model_none_1.json")));
  EXPECT_TRUE(fs::exists(Path("m/loss_none_2.csv")));
  o = Invoke({"duplicate", Path("d/test.jsonl"), "--k-range", "1..3",
              "--max-len", "128", "--out", Path("e")});
  ASSERT_EQ(o.code, 0) << o.err;
  o = Invoke({"evaluate", Path("e/eval_k1.jsonl"), Path("e/eval_k2.jsonl"),
              Path("e/eval_k3.jsonl"), "--model", Path("m/model_none_1.json"),
              "--model", Path("m/model_none_2.json"), "--alpha", "1,3", "--out",
              Path("r")});
  ASSERT_EQ(o.code, 0) << o.err;
  o = Invoke({"report", "baseline=" + Path("r/report.csv"),
              "again=" + Path("r/report.csv"), "--alpha", "1,3", "--out",
              Path("c")});
  ASSERT_EQ(o.code, 0) << o.err;
  EXPECT_EQ(o.out.substr(0, o.out.find('\n')),
            "regime,f1_1,std_1,f1_3,std_3,gap_1_3");
  EXPECT_NE(o.out.find("\nagain,"), std::string::npos);
}

TEST_F(CliTest, FailuresAreReported) {
  Outcome o = Invoke({"stats", Path("missing.conllu"), "--format", "conllu",
                       "--out", Path("m")});
  EXPECT_EQ(o.code, 1);
  EXPECT_FALSE(fs::exists(Path("m") + "/summary.csv"));
  EXPECT_EQ(o.err.rfind("stats: ", 0), 0u) << o.err;
  o = Invoke({"duplicate", kConll, "--format", "conll2003", "--k-range", "3..1"});
  EXPECT_EQ(o.code, 2);
  o = Invoke({"duplicate", kConll, "--format", "conll2003", "--k", "50",
              "--max-len", "16", "--out", Path("e")});
  EXPECT_EQ(o.code, 1);
  EXPECT_NE(o.err.find("positions"), std::string::npos) << o.err;
  o = Invoke({"frobnicate"});
  EXPECT_EQ(o.code, 2);
}

TEST_F(CliTest, VersionFlag) {
  const Outcome o = Invoke({"--version"});
  EXPECT_EQ(o.code, 0);
  EXPECT_NE(o.out.find('.'), std::string::npos);
}

}  // namespace
}  // namespace posbias::cli
