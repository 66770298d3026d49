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

#include "posbias/duplication.h"

#include <istream>
#include <ostream>

#include "json.hpp"
#include "posbias/error.h"

namespace posbias {
namespace {

using nlohmann::json;

Token Special(std::string_view surface) {
  return Token{std::string(surface), std::string(kIgnoreLabel), true};
}

}  // namespace

std::vector<std::string> DuplicatedSequence::Labels() const {
  std::vector<std::string> out;
  out.reserve(tokens.size());
  for (const Token& t : tokens) out.push_back(t.label);
  return out;
}

std::size_t DuplicatedLength(std::size_t length, int k) {
  return 1 + static_cast<std::size_t>(k) * (length + 1);
}

DuplicatedSequence DuplicateSentence(const Sentence& sentence, int k,
                                     std::size_t max_len) {
  if (k < 1) throw InvalidArgument("duplication coefficient k must be >= 1");
  if (sentence.tokens.empty())
    throw InvalidArgument("cannot duplicate an empty sentence");
  const std::size_t total = DuplicatedLength(sentence.length(), k);
  if (total > max_len) throw CapacityError(total, max_len);

  DuplicatedSequence out;
  out.origin_id = sentence.id;
  out.k = k;
  out.tokens.reserve(total);
  out.tokens.push_back(Special(kClsToken));
  for (int copy = 0; copy < k; ++copy) {
    const std::size_t start = out.tokens.size();
    out.tokens.insert(out.tokens.end(), sentence.tokens.begin(),
                      sentence.tokens.end());
    out.copy_spans.push_back({start, out.tokens.size() - 1});
    out.tokens.push_back(Special(kSepToken));
  }
  out.position_ids.resize(total);
  for (std::size_t i = 0; i < total; ++i)
    out.position_ids[i] = static_cast<int>(i);
  return out;
}

EvalSet BuildEvalSet(const Dataset& dataset, int k, std::size_t max_len) {
  EvalSet es;
  es.k = k;
  for (const Sentence& s : dataset.sentences()) {
    if (DuplicatedLength(s.length(), k) > max_len) {
      ++es.dropped;
      continue;
    }
    es.sequences.push_back(DuplicateSentence(s, k, max_len));
  }
  if (es.sequences.empty()) {
    throw CapacityError(DuplicatedLength(dataset.MaxLength(), k), max_len);
  }
  return es;
}

Sentence RecoverSentence(const DuplicatedSequence& seq) {
  if (seq.copy_spans.empty())
    throw InvalidArgument("duplicated sequence has no copies");
  const CopySpan& first = seq.copy_spans.front();
  Sentence s;
  s.id = seq.origin_id;
  s.tokens.assign(seq.tokens.begin() + first.start,
                  seq.tokens.begin() + first.end + 1);
  return s;
}

EncodedSequence ToEncoded(const DuplicatedSequence& seq) {
  EncodedSequence out;
  out.tokens.reserve(seq.tokens.size());
  for (const Token& t : seq.tokens) {
    out.tokens.push_back(t.surface);
    out.labels.push_back(t.label);
  }
  out.position_ids = seq.position_ids;
  return out;
}

void WriteEvalSet(const EvalSet& eval_set, std::ostream& out) {
  for (const DuplicatedSequence& s : eval_set.sequences) {
    json tokens = json::array();
    json labels = json::array();
    for (const Token& t : s.tokens) {
      tokens.push_back(t.surface);
      labels.push_back(t.label);
    }
    json spans = json::array();
    for (const CopySpan& c : s.copy_spans) spans.push_back({c.start, c.end});
    json record = {{"origin_id", s.origin_id}, {"k", s.k},
                   {"tokens", tokens},         {"labels", labels},
                   {"position_ids", s.position_ids},
                   {"copy_spans", spans}};
    out << record.dump() << '\n';
  }
}

EvalSet ReadEvalSet(std::istream& in) {
  EvalSet es;
  std::string line;
  std::size_t line_no = 0;
  bool first = true;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      const json r = json::parse(line);
      DuplicatedSequence s;
      s.origin_id = r.at("origin_id").get<std::string>();
      s.k = r.at("k").get<int>();
      const auto tokens = r.at("tokens").get<std::vector<std::string>>();
      const auto labels = r.at("labels").get<std::vector<std::string>>();
      s.position_ids = r.at("position_ids").get<std::vector<int>>();
      if (tokens.size() != labels.size() ||
          tokens.size() != s.position_ids.size())
        throw ParseError("tokens, labels and position_ids differ", line_no);
      for (std::size_t i = 0; i < tokens.size(); ++i)
        s.tokens.push_back(
            Token{tokens[i], labels[i], labels[i] == kIgnoreLabel});
      for (const auto& span : r.at("copy_spans")) {
        const auto a = span.at(0).get<std::size_t>();
        const auto b = span.at(1).get<std::size_t>();
        if (a > b || b >= tokens.size())
          throw ParseError("copy span out of range", line_no);
        s.copy_spans.push_back({a, b});
      }
      if (static_cast<int>(s.copy_spans.size()) != s.k)
        throw ParseError("expected k copy spans", line_no);
      if (first) {
        es.k = s.k;
        first = false;
      } else if (s.k != es.k) {
        throw ParseError("mixed duplication coefficients", line_no);
      }
      es.sequences.push_back(std::move(s));
    } catch (const json::exception& e) {
      throw ParseError(e.what(), line_no);
    }
  }
  if (es.sequences.empty()) throw ParseError("no sequences", 0);
  return es;
}

}  // namespace posbias
