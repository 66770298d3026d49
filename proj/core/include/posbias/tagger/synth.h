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

#ifndef POSBIAS_TAGGER_SYNTH_H_
#define POSBIAS_TAGGER_SYNTH_H_

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "posbias/corpus.h"

namespace posbias::tagger {

// Skewed NER corpus: filler words labeled O with exactly one entity span per
// sentence whose start position follows a truncated geometric law.
struct SynthConfig {
  int n_train = 10000;
  int n_test = 2000;
  int filler_vocab = 200;
  std::vector<std::string> entity_types = {"PER", "ORG", "LOC", "MISC"};
  // Distinct entity words per type.
  int entity_vocab = 40;
  // P(start = j) proportional to (1 - skew)^(j - 1) * skew.
  double position_skew = 0.3;
  // Ignore position_skew and draw starts uniformly.
  bool uniform_positions = false;
  int min_length = 8;
  int max_length = 25;
  int min_entity_length = 1;
  int max_entity_length = 3;
  // Entity-initial and continuation words come from disjoint halves of each
  // class vocabulary, so B-/I- tags are decidable from the word alone.
  bool distinct_head_words = true;
  // When > 0, entity words are shared by all types and each non-entity word
  // is, with this probability, a topic word of the entity's type (labeled O)
  // drawn from `topic_vocab` words. The type is then only recoverable from
  // sentence context.
  double topic_share = 0.0;
  int topic_vocab = 50;
  std::uint64_t seed = 23456;
};

// Throws InvalidArgument for an invalid configuration.
void ValidateSynthConfig(const SynthConfig& config);

// Returns (train, test). Deterministic per seed.
std::pair<Dataset, Dataset> GenerateSyntheticCorpus(const SynthConfig& config);

}  // namespace posbias::tagger

#endif  // POSBIAS_TAGGER_SYNTH_H_
