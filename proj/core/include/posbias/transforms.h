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

#ifndef POSBIAS_TRANSFORMS_H_
#define POSBIAS_TRANSFORMS_H_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "posbias/corpus.h"

namespace posbias {

// A model-ready sequence: [CLS] first, specials labeled "IGN".
struct EncodedSequence {
  std::vector<std::string> tokens;
  std::vector<std::string> labels;
  std::vector<int> position_ids;

  std::size_t size() const { return tokens.size(); }
  // Token count excluding [CLS].
  std::size_t length() const { return tokens.empty() ? 0 : tokens.size() - 1; }
  bool is_special(std::size_t i) const { return labels[i] == kIgnoreLabel; }
  // Number of non-special tokens.
  std::size_t ContentLength() const;

  friend bool operator==(const EncodedSequence&,
                         const EncodedSequence&) = default;
};

struct EncodedBatch {
  std::vector<EncodedSequence> sequences;
  std::size_t max_len = 512;
  std::uint64_t seed = 0;

  friend bool operator==(const EncodedBatch&, const EncodedBatch&) = default;
};

// Throws InvalidArgument when the parallel arrays disagree, [CLS] is not at
// position 0 or a sequence is longer than max_len.
void ValidateBatch(const EncodedBatch& batch);

// [CLS] x [SEP] with positions 0..len+1. Throws CapacityError when
// len + 2 > max_len.
EncodedSequence EncodeForTraining(const Sentence& sentence,
                                  std::size_t max_len);

// Deterministic generator for stream `index` of `seed`.
std::mt19937_64 SeedStream(std::uint64_t seed, std::uint64_t index);

// --- Random Position Perturbation ---------------------------------------

struct RppOptions {
  // Replaces the lower end of the sampling interval (default: the sequence
  // length l_t).
  std::optional<int> lower_bound;
};

struct RppDraw {
  int p_r = 1;
  int tau = 0;
  // Sampling interval [lo, hi] as specified; empty when lo > hi.
  int interval_lo = 1;
  int interval_hi = 1;
  // True when the interval was empty and [1, M - l_t] was used instead (or
  // tau was forced to 0 because even that was empty).
  bool fallback = false;
};

// Draws p_r uniformly from [l_t, M - l_t]; falls back to [1, M - l_t] when
// that is empty and to tau = 0 when l_t >= M.
RppDraw DrawRpp(std::size_t length, std::size_t max_len, std::mt19937_64& rng,
                const RppOptions& options = {});

// Adds draw.tau to every position except the [CLS] one at index 0.
EncodedSequence ApplyShift(const EncodedSequence& seq, int tau);

struct RppResult {
  EncodedBatch batch;
  std::vector<RppDraw> draws;
};

// One independent draw per sequence, sequence i using SeedStream(seed, i).
RppResult RppShift(const EncodedBatch& batch, std::uint64_t seed,
                   const RppOptions& options = {});

// --- Context Perturbation ------------------------------------------------

struct CpPlan {
  // Partition of batch indices, in order of first member.
  std::vector<std::vector<std::size_t>> subsets;
  // permutations[s] holds |subsets[s]| orderings of subsets[s] (as
  // positions within the subset); empty until CpPerturb samples them.
  std::vector<std::vector<std::vector<std::size_t>>> permutations;
};

// Greedy first-fit in batch order. A subset S fits when
// 1 + sum over S of (content length + 1) <= max_len. Throws CapacityError if
// a single sequence does not fit on its own.
CpPlan CpPartition(const EncodedBatch& batch);

// Number of positions a concatenation of `content_lengths` occupies.
std::size_t ConcatenatedLength(const std::vector<std::size_t>& content_lengths);

struct CpResult {
  EncodedBatch batch;
  CpPlan plan;
};

// For each subset of n members, n pairwise-distinct uniformly random
// orderings (all of them when n <= 2); one [CLS] a [SEP] b [SEP] ... sequence
// per ordering. Subset s uses SeedStream(seed, s).
CpResult CpPerturb(const EncodedBatch& batch, std::uint64_t seed);

// --- Interchange -----------------------------------------------------------

// Each batch is a header {"batch","max_len","seed","size"} followed by `size`
// {"tokens","labels","position_ids"} records.
void WriteBatches(const std::vector<EncodedBatch>& batches, std::ostream& out);
std::vector<EncodedBatch> ReadBatches(std::istream& in);

// Groups encoded sentences into batches of `batch_size` in corpus order.
std::vector<EncodedBatch> EncodeBatches(const Dataset& dataset,
                                        std::size_t batch_size,
                                        std::size_t max_len,
                                        std::uint64_t seed);

void WriteRppAudit(const std::vector<std::vector<RppDraw>>& draws,
                   std::ostream& out);
void WriteCpAudit(const std::vector<CpPlan>& plans, std::ostream& out);

}  // namespace posbias

#endif  // POSBIAS_TRANSFORMS_H_
