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

#ifndef POSBIAS_CORPUS_H_
#define POSBIAS_CORPUS_H_

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace posbias {

// Label carried by [CLS]/[SEP]. Excluded from loss and from every metric.
inline constexpr std::string_view kIgnoreLabel = "IGN";
inline constexpr std::string_view kClsToken = "[CLS]";
inline constexpr std::string_view kSepToken = "[SEP]";

enum class Split { kTrain, kDev, kTest };
enum class Task { kNerBio, kPosFlat };

std::string_view SplitName(Split split);
std::string_view TaskName(Task task);
Split ParseSplit(std::string_view name);
Task ParseTask(std::string_view name);

struct Token {
  std::string surface;
  std::string label;
  bool is_special = false;

  friend bool operator==(const Token&, const Token&) = default;
};

struct Sentence {
  std::string id;
  std::vector<Token> tokens;

  std::size_t length() const { return tokens.size(); }
  std::vector<std::string> Labels() const;
  std::vector<std::string> Surfaces() const;

  friend bool operator==(const Sentence&, const Sentence&) = default;
};

// True for "O", "B-X" and "I-X" with a non-empty type X.
bool IsBioLabel(std::string_view label);

// Entity type of a BIO label ("B-PER" -> "PER"); empty for "O".
std::string_view EntityType(std::string_view label);

// An immutable, validated corpus split. The label inventory is derived from
// the sentences and is never supplied by the caller.
class Dataset {
 public:
  // Throws InvalidArgument if any sentence is empty, carries a special or
  // whitespace-bearing token, or (for kNerBio) a non-BIO label.
  Dataset(std::string name, Split split, Task task,
          std::vector<Sentence> sentences);

  const std::string& name() const { return name_; }
  Split split() const { return split_; }
  Task task() const { return task_; }
  const std::vector<Sentence>& sentences() const { return sentences_; }
  const std::set<std::string>& label_inventory() const {
    return label_inventory_;
  }
  std::size_t size() const { return sentences_.size(); }
  bool empty() const { return sentences_.empty(); }
  std::size_t TokenCount() const;
  std::size_t MaxLength() const;

  // Same name/split/task, different sentences.
  Dataset WithSentences(std::vector<Sentence> sentences) const;

  friend bool operator==(const Dataset&, const Dataset&) = default;

 private:
  std::string name_;
  Split split_;
  Task task_;
  std::vector<Sentence> sentences_;
  std::set<std::string> label_inventory_;
};

struct DatasetMeta {
  std::string name = "corpus";
  Split split = Split::kTest;
};

// Whitespace-column CoNLL-2003. The label is the last column; -DOCSTART-
// lines are dropped. Throws ParseError (with a line number) on lines with
// fewer than two columns, invalid UTF-8 or invalid BIO labels, and
// ParseError("no sentences") when nothing remains.
Dataset ParseConll2003(std::istream& in, const DatasetMeta& meta = {});

// Ten tab-separated columns, UPOS (column 4) as label. Comments, multiword
// range lines ("3-4") and empty nodes ("3.1") are skipped. A "# sent_id"
// comment becomes the sentence id.
Dataset ParseConllu(std::istream& in, const DatasetMeta& meta = {});

// One {"id","tokens","labels"} JSON object per line.
void SerializeDataset(const Dataset& dataset, std::ostream& out);

// Inverse of SerializeDataset. The task is inferred from the labels (all BIO
// means kNerBio) unless given explicitly.
Dataset DeserializeDataset(std::istream& in, const DatasetMeta& meta = {},
                           std::optional<Task> task = std::nullopt);

// Throws ParseError if `bytes` is not well-formed UTF-8.
void ValidateUtf8(std::string_view bytes, std::size_t line);

}  // namespace posbias

#endif  // POSBIAS_CORPUS_H_
