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

#ifndef POSBIAS_DUPLICATION_H_
#define POSBIAS_DUPLICATION_H_

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "posbias/corpus.h"
#include "posbias/transforms.h"

namespace posbias {

// Inclusive token-index range of one copy inside a duplicated sequence.
struct CopySpan {
  std::size_t start = 0;
  std::size_t end = 0;

  std::size_t size() const { return end - start + 1; }
  friend bool operator==(const CopySpan&, const CopySpan&) = default;
};

// [CLS] x [SEP] x [SEP] ... with k copies of x and positions 0..len-1.
struct DuplicatedSequence {
  std::string origin_id;
  int k = 1;
  std::vector<Token> tokens;
  std::vector<int> position_ids;
  std::vector<CopySpan> copy_spans;

  std::vector<std::string> Labels() const;
  friend bool operator==(const DuplicatedSequence&,
                         const DuplicatedSequence&) = default;
};

struct EvalSet {
  int k = 1;
  std::vector<DuplicatedSequence> sequences;
  // Source sentences left out because 1 + k * (len + 1) > max_len.
  std::size_t dropped = 0;
};

// Positions needed by k copies of a sentence of `length` tokens.
std::size_t DuplicatedLength(std::size_t length, int k);

// Throws CapacityError if DuplicatedLength(len, k) > max_len and
// InvalidArgument if k < 1.
DuplicatedSequence DuplicateSentence(const Sentence& sentence, int k,
                                     std::size_t max_len);

// Throws CapacityError when every sentence had to be dropped.
EvalSet BuildEvalSet(const Dataset& dataset, int k, std::size_t max_len);

// Drops specials and keeps the first copy.
Sentence RecoverSentence(const DuplicatedSequence& seq);

EncodedSequence ToEncoded(const DuplicatedSequence& seq);

// {"origin_id","k","tokens","labels","position_ids","copy_spans"} per line,
// copy spans as [start, end] pairs.
void WriteEvalSet(const EvalSet& eval_set, std::ostream& out);
EvalSet ReadEvalSet(std::istream& in);

}  // namespace posbias

#endif  // POSBIAS_DUPLICATION_H_
