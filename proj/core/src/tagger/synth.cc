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

#include "posbias/tagger/synth.h"

#include <algorithm>
#include <random>

#include "posbias/error.h"
#include "posbias/transforms.h"

namespace posbias::tagger {
namespace {

constexpr std::uint64_t kTrainStream = 0x7a1;
constexpr std::uint64_t kTestStream = 0x7e5;

Sentence MakeSentence(const SynthConfig& c, std::mt19937_64& rng,
                      std::size_t index) {
  std::uniform_int_distribution<int> length_law(c.min_length, c.max_length);
  std::uniform_int_distribution<int> entity_len_law(c.min_entity_length,
                                                    c.max_entity_length);
  std::uniform_int_distribution<int> filler(0, c.filler_vocab - 1);
  std::uniform_int_distribution<int> type_law(
      0, static_cast<int>(c.entity_types.size()) - 1);
  const int half = std::max(1, c.entity_vocab / 2);
  std::uniform_int_distribution<int> any_word(0, c.entity_vocab - 1);
  std::uniform_int_distribution<int> head_word(0, half - 1);
  std::uniform_int_distribution<int> tail_word(half,
                                               std::max(half, c.entity_vocab - 1));
  std::geometric_distribution<int> geometric(c.position_skew);

  const int length = length_law(rng);
  int entity_len = entity_len_law(rng);
  while (entity_len > length) entity_len = entity_len_law(rng);
  const int last_start = length - entity_len + 1;  // 1-based

  int start;
  if (c.uniform_positions) {
    start = std::uniform_int_distribution<int>(1, last_start)(rng);
  } else {
    do {
      start = 1 + geometric(rng);
    } while (start > last_start);
  }

  const std::string& type = c.entity_types[type_law(rng)];
  const bool topical = c.topic_share > 0.0;
  const std::string prefix = topical ? std::string("ent") : type;
  std::bernoulli_distribution topic_draw(c.topic_share);
  std::uniform_int_distribution<int> topic_word(0, c.topic_vocab - 1);
  Sentence s;
  s.id = "synth:" + std::to_string(index);
  for (int pos = 1; pos <= length; ++pos) {
    if (pos >= start && pos < start + entity_len) {
      const bool head = pos == start;
      const int word = !c.distinct_head_words ? any_word(rng)
                       : head                 ? head_word(rng)
                                              : tail_word(rng);
      s.tokens.push_back(Token{prefix + "_" + std::to_string(word),
                               (head ? "B-" : "I-") + type, false});
    } else if (topical && topic_draw(rng)) {
      s.tokens.push_back(Token{
          "t" + type + "_" + std::to_string(topic_word(rng)), "O", false});
    } else {
      s.tokens.push_back(
          Token{"w" + std::to_string(filler(rng)), "O", false});
    }
  }
  return s;
}

Dataset MakeSplit(const SynthConfig& c, int n, std::uint64_t stream,
                  Split split, const std::string& name) {
  auto rng = SeedStream(c.seed, stream);
  std::vector<Sentence> sentences;
  sentences.reserve(n);
  for (int i = 0; i < n; ++i) sentences.push_back(MakeSentence(c, rng, i));
  return Dataset(name, split, Task::kNerBio, std::move(sentences));
}

}  // namespace

void ValidateSynthConfig(const SynthConfig& c) {
  if (c.n_train < 1 || c.n_test < 1)
    throw InvalidArgument("sentence counts must be >= 1");
  if (c.filler_vocab < 1 || c.entity_vocab < (c.distinct_head_words ? 2 : 1) ||
      c.entity_types.empty())
    throw InvalidArgument("vocabulary sizes must be >= 1");
  if (!(c.position_skew > 0.0 && c.position_skew <= 1.0))
    throw InvalidArgument("position_skew must be in (0, 1]");
  if (c.min_length < 1 || c.max_length < c.min_length)
    throw InvalidArgument("invalid sentence length range");
  if (c.min_entity_length < 1 || c.max_entity_length < c.min_entity_length ||
      c.min_entity_length > c.max_length)
    throw InvalidArgument("invalid entity length range");
  if (!(c.topic_share >= 0.0 && c.topic_share <= 1.0))
    throw InvalidArgument("topic_share must be in [0, 1]");
  if (c.topic_share > 0.0 && c.topic_vocab < 1)
    throw InvalidArgument("topic_vocab must be >= 1");
}

std::pair<Dataset, Dataset> GenerateSyntheticCorpus(const SynthConfig& c) {
  ValidateSynthConfig(c);
  return {MakeSplit(c, c.n_train, kTrainStream, Split::kTrain, "synth_train"),
          MakeSplit(c, c.n_test, kTestStream, Split::kTest, "synth_test")};
}

}  // namespace posbias::tagger
