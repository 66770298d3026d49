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

#include "posbias/corpus.h"

#include <algorithm>
#include <cstdint>
#include <istream>
#include <ostream>
#include <sstream>

#include "json.hpp"
#include "posbias/error.h"

namespace posbias {
namespace {

using nlohmann::json;

bool HasWhitespace(std::string_view s) {
  return std::any_of(s.begin(), s.end(), [](unsigned char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' ||
           c == '\f';
  });
}

// Reads one line without the trailing "\r" of CRLF files.
bool ReadLine(std::istream& in, std::string& line) {
  if (!std::getline(in, line)) return false;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return true;
}

bool IsBlank(std::string_view line) {
  return std::all_of(line.begin(), line.end(), [](unsigned char c) {
    return c == ' ' || c == '\t';
  });
}

std::vector<std::string_view> SplitWhitespace(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

std::vector<std::string_view> SplitTabs(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    std::size_t tab = line.find('\t', start);
    if (tab == std::string_view::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
}

bool AllDigits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) {
    return c >= '0' && c <= '9';
  });
}

std::string DefaultId(const DatasetMeta& meta, std::size_t index) {
  return meta.name + ":" + std::to_string(index);
}

}  // namespace

std::string_view SplitName(Split split) {
  switch (split) {
    case Split::kTrain:
      return "train";
    case Split::kDev:
      return "dev";
    case Split::kTest:
      return "test";
  }
  return "test";
}

std::string_view TaskName(Task task) {
  return task == Task::kNerBio ? "ner" : "pos";
}

Split ParseSplit(std::string_view name) {
  if (name == "train") return Split::kTrain;
  if (name == "dev") return Split::kDev;
  if (name == "test") return Split::kTest;
  throw InvalidArgument("unknown split '" + std::string(name) + "'");
}

Task ParseTask(std::string_view name) {
  if (name == "ner") return Task::kNerBio;
  if (name == "pos") return Task::kPosFlat;
  throw InvalidArgument("unknown task '" + std::string(name) + "'");
}

std::vector<std::string> Sentence::Labels() const {
  std::vector<std::string> out;
  out.reserve(tokens.size());
  for (const Token& t : tokens) out.push_back(t.label);
  return out;
}

std::vector<std::string> Sentence::Surfaces() const {
  std::vector<std::string> out;
  out.reserve(tokens.size());
  for (const Token& t : tokens) out.push_back(t.surface);
  return out;
}

bool IsBioLabel(std::string_view label) {
  if (label == "O") return true;
  return label.size() > 2 && (label[0] == 'B' || label[0] == 'I') &&
         label[1] == '-';
}

std::string_view EntityType(std::string_view label) {
  if (label.size() > 2 && label[1] == '-') return label.substr(2);
  return {};
}

Dataset::Dataset(std::string name, Split split, Task task,
                 std::vector<Sentence> sentences)
    : name_(std::move(name)),
      split_(split),
      task_(task),
      sentences_(std::move(sentences)) {
  for (const Sentence& s : sentences_) {
    if (s.tokens.empty())
      throw InvalidArgument("sentence '" + s.id + "' has no tokens");
    for (const Token& t : s.tokens) {
      if (t.surface.empty() || HasWhitespace(t.surface))
        throw InvalidArgument("sentence '" + s.id +
                              "' has an empty or whitespace-bearing token");
      if (t.is_special || t.label == kIgnoreLabel)
        throw InvalidArgument("sentence '" + s.id +
                              "' contains a special token");
      if (t.label.empty())
        throw InvalidArgument("sentence '" + s.id + "' has an empty label");
      if (task_ == Task::kNerBio && !IsBioLabel(t.label))
        throw InvalidArgument("label '" + t.label + "' is not a BIO tag");
      label_inventory_.insert(t.label);
    }
  }
}

std::size_t Dataset::TokenCount() const {
  std::size_t n = 0;
  for (const Sentence& s : sentences_) n += s.length();
  return n;
}

std::size_t Dataset::MaxLength() const {
  std::size_t n = 0;
  for (const Sentence& s : sentences_) n = std::max(n, s.length());
  return n;
}

Dataset Dataset::WithSentences(std::vector<Sentence> sentences) const {
  return Dataset(name_, split_, task_, std::move(sentences));
}

void ValidateUtf8(std::string_view bytes, std::size_t line) {
  std::size_t i = 0;
  const auto fail = [line] { throw ParseError("invalid UTF-8", line); };
  while (i < bytes.size()) {
    const auto c = static_cast<unsigned char>(bytes[i]);
    std::size_t extra;
    std::uint32_t cp;
    if (c < 0x80) {
      ++i;
      continue;
    } else if ((c & 0xE0) == 0xC0) {
      extra = 1;
      cp = c & 0x1F;
    } else if ((c & 0xF0) == 0xE0) {
      extra = 2;
      cp = c & 0x0F;
    } else if ((c & 0xF8) == 0xF0) {
      extra = 3;
      cp = c & 0x07;
    } else {
      fail();
    }
    if (i + extra >= bytes.size()) fail();
    for (std::size_t k = 1; k <= extra; ++k) {
      const auto cc = static_cast<unsigned char>(bytes[i + k]);
      if ((cc & 0xC0) != 0x80) fail();
      cp = (cp << 6) | (cc & 0x3F);
    }
    // Overlong encodings, surrogates and out-of-range code points.
    static constexpr std::uint32_t kMin[] = {0, 0x80, 0x800, 0x10000};
    if (cp < kMin[extra] || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF))
      fail();
    i += extra + 1;
  }
}

Dataset ParseConll2003(std::istream& in, const DatasetMeta& meta) {
  std::vector<Sentence> sentences;
  Sentence current;
  std::string line;
  std::size_t line_no = 0;

  const auto flush = [&] {
    if (!current.tokens.empty()) {
      current.id = DefaultId(meta, sentences.size());
      sentences.push_back(std::move(current));
    }
    current = Sentence{};
  };

  while (ReadLine(in, line)) {
    ++line_no;
    ValidateUtf8(line, line_no);
    if (IsBlank(line)) {
      flush();
      continue;
    }
    const auto cols = SplitWhitespace(line);
    if (cols.front() == "-DOCSTART-") {
      flush();
      continue;
    }
    if (cols.size() < 2)
      throw ParseError("expected at least 2 columns, found " +
                           std::to_string(cols.size()),
                       line_no);
    const std::string_view label = cols.back();
    if (!IsBioLabel(label))
      throw ParseError("label '" + std::string(label) + "' is not a BIO tag",
                       line_no);
    current.tokens.push_back(
        Token{std::string(cols.front()), std::string(label), false});
  }
  flush();
  if (sentences.empty()) throw ParseError("no sentences", 0);
  return Dataset(meta.name, meta.split, Task::kNerBio, std::move(sentences));
}

Dataset ParseConllu(std::istream& in, const DatasetMeta& meta) {
  std::vector<Sentence> sentences;
  Sentence current;
  std::string sent_id;
  std::string line;
  std::size_t line_no = 0;

  const auto flush = [&] {
    if (!current.tokens.empty()) {
      current.id =
          sent_id.empty() ? DefaultId(meta, sentences.size()) : sent_id;
      sentences.push_back(std::move(current));
    }
    current = Sentence{};
    sent_id.clear();
  };

  while (ReadLine(in, line)) {
    ++line_no;
    ValidateUtf8(line, line_no);
    if (IsBlank(line)) {
      flush();
      continue;
    }
    if (line.front() == '#') {
      static constexpr std::string_view kSentId = "# sent_id = ";
      if (std::string_view(line).substr(0, kSentId.size()) == kSentId)
        sent_id = line.substr(kSentId.size());
      continue;
    }
    const auto cols = SplitTabs(line);
    if (cols.size() != 10)
      throw ParseError("expected 10 tab-separated columns, found " +
                           std::to_string(cols.size()),
                       line_no);
    const std::string_view id = cols[0];
    if (id.find('-') != std::string_view::npos ||
        id.find('.') != std::string_view::npos)
      continue;
    if (!AllDigits(id))
      throw ParseError("invalid token id '" + std::string(id) + "'", line_no);
    if (cols[1].empty() || HasWhitespace(cols[1]))
      throw ParseError("empty or whitespace-bearing FORM", line_no);
    if (cols[3].empty() || cols[3] == kIgnoreLabel)
      throw ParseError("invalid UPOS '" + std::string(cols[3]) + "'", line_no);
    current.tokens.push_back(
        Token{std::string(cols[1]), std::string(cols[3]), false});
  }
  flush();
  if (sentences.empty()) throw ParseError("no sentences", 0);
  return Dataset(meta.name, meta.split, Task::kPosFlat, std::move(sentences));
}

void SerializeDataset(const Dataset& dataset, std::ostream& out) {
  if (dataset.empty() || dataset.label_inventory().empty())
    throw InvalidArgument("refusing to serialize an empty dataset");
  for (const Sentence& s : dataset.sentences()) {
    json record = {
        {"id", s.id}, {"tokens", s.Surfaces()}, {"labels", s.Labels()}};
    out << record.dump() << '\n';
  }
}

Dataset DeserializeDataset(std::istream& in, const DatasetMeta& meta,
                           std::optional<Task> task) {
  std::vector<Sentence> sentences;
  std::string line;
  std::size_t line_no = 0;
  bool all_bio = true;
  while (ReadLine(in, line)) {
    ++line_no;
    if (IsBlank(line)) continue;
    json record;
    try {
      record = json::parse(line);
    } catch (const json::exception& e) {
      throw ParseError(e.what(), line_no);
    }
    try {
      Sentence s;
      s.id = record.at("id").get<std::string>();
      const auto tokens = record.at("tokens").get<std::vector<std::string>>();
      const auto labels = record.at("labels").get<std::vector<std::string>>();
      if (tokens.size() != labels.size())
        throw ParseError("tokens and labels differ in length", line_no);
      for (std::size_t i = 0; i < tokens.size(); ++i) {
        all_bio = all_bio && IsBioLabel(labels[i]);
        s.tokens.push_back(Token{tokens[i], labels[i], false});
      }
      sentences.push_back(std::move(s));
    } catch (const json::exception& e) {
      throw ParseError(e.what(), line_no);
    }
  }
  if (sentences.empty()) throw ParseError("no sentences", 0);
  const Task resolved = task.value_or(all_bio ? Task::kNerBio : Task::kPosFlat);
  return Dataset(meta.name, meta.split, resolved, std::move(sentences));
}

}  // namespace posbias
