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

#ifndef POSBIAS_TOOLS_CLI_H_
#define POSBIAS_TOOLS_CLI_H_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace posbias::cli {

enum class Command {
  kStats,
  kDuplicate,
  kPerturb,
  kTrain,
  kEvaluate,
  kReport,
  kSynth
};

enum class Format { kConll2003, kConllu, kJsonl };

// Everything a single invocation needs, already parsed and defaulted.
struct RunConfig {
  Command command = Command::kStats;
  std::vector<std::filesystem::path> inputs;
  Format format = Format::kJsonl;
  std::optional<std::string> name;

  // k values for `duplicate`; k filter for `evaluate`.
  std::vector<int> ks;
  std::vector<int> alphas = {1, 5, 10};
  std::size_t max_len = 512;
  bool quantile_subset = false;

  std::vector<std::uint64_t> seeds = {23456, 34567, 45678, 56789, 67890};
  // Single seed for `perturb` on raw corpora and for `synth`.
  std::uint64_t seed = 23456;
  std::string transform = "none";
  std::optional<int> rpp_lower_bound;
  std::size_t batch_size = 16;

  // train
  int d_model = 32;
  double learning_rate = 1e-3;
  int epochs = 5;
  bool use_attention = true;
  bool local_attention = false;

  // evaluate
  std::vector<std::filesystem::path> models;
  std::vector<std::filesystem::path> predictions;
  std::optional<std::string> label;

  // synth
  int n_train = 10000;
  int n_test = 2000;
  double position_skew = 0.3;
  double topic_share = 0.0;

  std::optional<std::filesystem::path> audit;
  bool svg = false;
  std::filesystem::path out = ".";
};

// Executes one command. Returns 0 when every requested artifact was written;
// otherwise prints "<command>: <reason>" to `err` and returns 1.
int Run(const RunConfig& config, std::ostream& out, std::ostream& err);

// Parses argv and runs. Usage errors return 2.
int Main(int argc, const char* const* argv, std::ostream& out,
         std::ostream& err);

}  // namespace posbias::cli

#endif  // POSBIAS_TOOLS_CLI_H_
