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

#ifndef POSBIAS_TESTS_ORACLE_ORACLES_H_
#define POSBIAS_TESTS_ORACLE_ORACLES_H_

// Reference implementations written independently of the library, used to
// cross-check it. They favour obviousness over speed.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <random>
#include <set>
#include <string>
#include <tuple>
#include <vector>

namespace posbias::oracle {

struct Tag {
  char prefix;       // 'B', 'I' or 'O'
  std::string type;  // empty for O
};

inline Tag SplitTag(const std::string& label) {
  if (label.size() > 2 && (label[0] == 'B' || label[0] == 'I') &&
      label[1] == '-')
    return {label[0], label.substr(2)};
  return {'O', ""};
}

// conlleval's endOfChunk for the IOB tag set.
inline bool EndOfChunk(const Tag& prev, const Tag& cur) {
  if (prev.prefix == 'O') return false;
  if (cur.prefix == 'B' || cur.prefix == 'O') return true;
  return prev.type != cur.type;
}

// conlleval's startOfChunk for the IOB tag set.
inline bool StartOfChunk(const Tag& prev, const Tag& cur) {
  if (cur.prefix == 'O') return false;
  if (cur.prefix == 'B') return true;
  return prev.prefix == 'O' || prev.type != cur.type;
}

using Span = std::tuple<std::size_t, std::size_t, std::string>;

// Tests every (start, end, type) triple against the chunk definition.
inline std::set<Span> EnumerateChunks(const std::vector<std::string>& labels) {
  const std::size_t n = labels.size();
  std::vector<Tag> tags;
  for (const auto& l : labels) tags.push_back(SplitTag(l));
  const Tag outside{'O', ""};
  auto at = [&](std::size_t i) { return i < n ? tags[i] : outside; };
  std::set<std::string> types;
  for (const Tag& t : tags)
    if (t.prefix != 'O') types.insert(t.type);

  std::set<Span> chunks;
  for (std::size_t s = 0; s < n; ++s) {
    for (std::size_t e = s; e < n; ++e) {
      for (const std::string& type : types) {
        bool ok = tags[s].type == type &&
                  StartOfChunk(s == 0 ? outside : tags[s - 1], tags[s]);
        for (std::size_t i = s + 1; ok && i <= e; ++i)
          ok = tags[i].type == type && !StartOfChunk(tags[i - 1], tags[i]) &&
               !EndOfChunk(tags[i - 1], tags[i]);
        ok = ok && EndOfChunk(tags[e], at(e + 1));
        if (ok) chunks.emplace(s, e, type);
      }
    }
  }
  return chunks;
}

struct Counts {
  std::size_t tp = 0, predicted = 0, gold = 0;
};

inline Counts ChunkCounts(const std::vector<std::vector<std::string>>& gold,
                          const std::vector<std::vector<std::string>>& pred) {
  Counts c;
  for (std::size_t i = 0; i < gold.size(); ++i) {
    const auto g = EnumerateChunks(gold[i]);
    const auto p = EnumerateChunks(pred[i]);
    c.gold += g.size();
    c.predicted += p.size();
    for (const Span& s : p) c.tp += g.count(s);
  }
  return c;
}

inline Counts TokenCounts(const std::vector<std::vector<std::string>>& gold,
                          const std::vector<std::vector<std::string>>& pred) {
  Counts c;
  for (std::size_t i = 0; i < gold.size(); ++i)
    for (std::size_t j = 0; j < gold[i].size(); ++j) {
      if (gold[i][j] == "IGN") continue;
      ++c.gold;
      ++c.predicted;
      if (gold[i][j] == pred[i][j]) ++c.tp;
    }
  return c;
}

// Nearest-rank quantile computed with floating point: smallest value v such
// that at least p * N values are <= v.
inline std::size_t Quantile(std::vector<std::size_t> values, double p) {
  std::sort(values.begin(), values.end());
  for (std::size_t v : values) {
    std::size_t at_most = 0;
    for (std::size_t w : values) at_most += w <= v;
    if (static_cast<double>(at_most) >= p * values.size() - 1e-9) return v;
  }
  return values.back();
}

inline std::vector<std::string> RandomBio(std::mt19937_64& rng,
                                          std::size_t max_len, int n_types) {
  std::uniform_int_distribution<std::size_t> len(0, max_len);
  std::uniform_int_distribution<int> kind(0, 2);
  std::uniform_int_distribution<int> type(0, n_types - 1);
  static const char* kTypes[] = {"PER", "ORG", "LOC", "MISC"};
  std::vector<std::string> out(len(rng));
  for (auto& l : out) {
    const int k = kind(rng);
    l = k == 0 ? "O" : std::string(k == 1 ? "B-" : "I-") + kTypes[type(rng)];
  }
  return out;
}

}  // namespace posbias::oracle

#endif  // POSBIAS_TESTS_ORACLE_ORACLES_H_
