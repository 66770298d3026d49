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

#include "posbias/transforms.h"

#include <algorithm>
#include <istream>
#include <numeric>
#include <ostream>
#include <set>

#include "json.hpp"
#include "posbias/error.h"

namespace posbias {
namespace {

using nlohmann::json;

void AppendSpecial(EncodedSequence& seq, std::string_view token) {
  seq.tokens.emplace_back(token);
  seq.labels.emplace_back(kIgnoreLabel);
  seq.position_ids.push_back(static_cast<int>(seq.position_ids.size()));
}

void AppendContent(EncodedSequence& out, const EncodedSequence& member) {
  for (std::size_t i = 0; i < member.size(); ++i) {
    if (member.is_special(i)) continue;
    out.tokens.push_back(member.tokens[i]);
    out.labels.push_back(member.labels[i]);
    out.position_ids.push_back(static_cast<int>(out.position_ids.size()));
  }
}

}  // namespace

std::size_t EncodedSequence::ContentLength() const {
  return static_cast<std::size_t>(
      std::count_if(labels.begin(), labels.end(),
                    [](const std::string& l) { return l != kIgnoreLabel; }));
}

void ValidateBatch(const EncodedBatch& batch) {
  for (std::size_t i = 0; i < batch.sequences.size(); ++i) {
    const EncodedSequence& s = batch.sequences[i];
    const std::string where = "sequence " + std::to_string(i) + ": ";
    if (s.tokens.size() != s.labels.size() ||
        s.tokens.size() != s.position_ids.size())
      throw InvalidArgument(where + "tokens, labels and position_ids differ");
    if (s.tokens.empty() || s.tokens.front() != kClsToken ||
        s.position_ids.front() != 0 || s.labels.front() != kIgnoreLabel)
      throw InvalidArgument(where + "must start with [CLS] at position 0");
    if (s.size() > batch.max_len)
      throw CapacityError(s.size(), batch.max_len);
  }
}

EncodedSequence EncodeForTraining(const Sentence& sentence,
                                  std::size_t max_len) {
  if (sentence.length() + 2 > max_len)
    throw CapacityError(sentence.length() + 2, max_len);
  EncodedSequence seq;
  seq.tokens.reserve(sentence.length() + 2);
  AppendSpecial(seq, kClsToken);
  for (const Token& t : sentence.tokens) {
    seq.tokens.push_back(t.surface);
    seq.labels.push_back(t.label);
    seq.position_ids.push_back(static_cast<int>(seq.position_ids.size()));
  }
  AppendSpecial(seq, kSepToken);
  return seq;
}

std::mt19937_64 SeedStream(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index),
                    static_cast<std::uint32_t>(index >> 32)};
  return std::mt19937_64(seq);
}

RppDraw DrawRpp(std::size_t length, std::size_t max_len, std::mt19937_64& rng,
                const RppOptions& options) {
  const int l_t = static_cast<int>(length);
  const int m = static_cast<int>(max_len);
  RppDraw draw;
  draw.interval_lo = std::max(1, options.lower_bound.value_or(l_t));
  draw.interval_hi = m - l_t;
  int lo = draw.interval_lo;
  int hi = draw.interval_hi;
  if (lo > hi) {
    draw.fallback = true;
    lo = 1;
  }
  if (lo > hi) {
    draw.p_r = 1;
    draw.tau = 0;
    return draw;
  }
  draw.p_r = std::uniform_int_distribution<int>(lo, hi)(rng);
  draw.tau = draw.p_r - 1;
  return draw;
}

EncodedSequence ApplyShift(const EncodedSequence& seq, int tau) {
  EncodedSequence out = seq;
  for (std::size_t i = 1; i < out.position_ids.size(); ++i)
    out.position_ids[i] += tau;
  return out;
}

RppResult RppShift(const EncodedBatch& batch, std::uint64_t seed,
                   const RppOptions& options) {
  ValidateBatch(batch);
  RppResult result;
  result.batch.max_len = batch.max_len;
  result.batch.seed = batch.seed;
  result.batch.sequences.reserve(batch.sequences.size());
  result.draws.reserve(batch.sequences.size());
  for (std::size_t i = 0; i < batch.sequences.size(); ++i) {
    const EncodedSequence& seq = batch.sequences[i];
    auto rng = SeedStream(seed, i);
    const RppDraw draw = DrawRpp(seq.length(), batch.max_len, rng, options);
    result.batch.sequences.push_back(ApplyShift(seq, draw.tau));
    result.draws.push_back(draw);
  }
  return result;
}

std::size_t ConcatenatedLength(
    const std::vector<std::size_t>& content_lengths) {
  std::size_t total = 1;
  for (std::size_t len : content_lengths) total += len + 1;
  return total;
}

CpPlan CpPartition(const EncodedBatch& batch) {
  ValidateBatch(batch);
  CpPlan plan;
  std::vector<std::size_t> used;  // occupied positions per subset
  for (std::size_t i = 0; i < batch.sequences.size(); ++i) {
    const std::size_t need = batch.sequences[i].ContentLength() + 1;
    if (1 + need > batch.max_len) throw CapacityError(1 + need, batch.max_len);
    bool placed = false;
    for (std::size_t s = 0; s < plan.subsets.size() && !placed; ++s) {
      if (used[s] + need <= batch.max_len) {
        plan.subsets[s].push_back(i);
        used[s] += need;
        placed = true;
      }
    }
    if (!placed) {
      plan.subsets.push_back({i});
      used.push_back(1 + need);
    }
  }
  return plan;
}

CpResult CpPerturb(const EncodedBatch& batch, std::uint64_t seed) {
  CpResult result;
  result.plan = CpPartition(batch);
  result.batch.max_len = batch.max_len;
  result.batch.seed = batch.seed;
  result.batch.sequences.reserve(batch.sequences.size());

  for (std::size_t s = 0; s < result.plan.subsets.size(); ++s) {
    const auto& members = result.plan.subsets[s];
    const std::size_t n = members.size();
    auto rng = SeedStream(seed, s);

    std::vector<std::vector<std::size_t>> orders;
    std::set<std::vector<std::size_t>> seen;
    std::vector<std::size_t> order(n);
    while (orders.size() < n) {
      std::iota(order.begin(), order.end(), std::size_t{0});
      std::shuffle(order.begin(), order.end(), rng);
      if (seen.insert(order).second) orders.push_back(order);
    }

    for (const auto& ord : orders) {
      EncodedSequence concat;
      AppendSpecial(concat, kClsToken);
      for (std::size_t pos : ord) {
        AppendContent(concat, batch.sequences[members[pos]]);
        AppendSpecial(concat, kSepToken);
      }
      result.batch.sequences.push_back(std::move(concat));
    }
    result.plan.permutations.push_back(std::move(orders));
  }
  return result;
}

void WriteBatches(const std::vector<EncodedBatch>& batches, std::ostream& out) {
  for (std::size_t b = 0; b < batches.size(); ++b) {
    const EncodedBatch& batch = batches[b];
    json header = {{"batch", b},
                   {"max_len", batch.max_len},
                   {"seed", batch.seed},
                   {"size", batch.sequences.size()}};
    out << header.dump() << '\n';
    for (const EncodedSequence& s : batch.sequences) {
      json record = {{"tokens", s.tokens},
                     {"labels", s.labels},
                     {"position_ids", s.position_ids}};
      out << record.dump() << '\n';
    }
  }
}

std::vector<EncodedBatch> ReadBatches(std::istream& in) {
  std::vector<EncodedBatch> batches;
  std::string line;
  std::size_t line_no = 0;
  std::size_t remaining = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      const json record = json::parse(line);
      if (remaining == 0) {
        if (!record.contains("batch"))
          throw ParseError("expected a batch header record", line_no);
        EncodedBatch batch;
        batch.max_len = record.at("max_len").get<std::size_t>();
        batch.seed = record.value("seed", std::uint64_t{0});
        remaining = record.at("size").get<std::size_t>();
        batches.push_back(std::move(batch));
        continue;
      }
      EncodedSequence s;
      s.tokens = record.at("tokens").get<std::vector<std::string>>();
      s.labels = record.at("labels").get<std::vector<std::string>>();
      s.position_ids = record.at("position_ids").get<std::vector<int>>();
      batches.back().sequences.push_back(std::move(s));
      --remaining;
    } catch (const json::exception& e) {
      throw ParseError(e.what(), line_no);
    }
  }
  if (remaining != 0)
    throw ParseError("truncated batch: " + std::to_string(remaining) +
                         " sequence records missing",
                     line_no);
  for (const EncodedBatch& b : batches) ValidateBatch(b);
  return batches;
}

std::vector<EncodedBatch> EncodeBatches(const Dataset& dataset,
                                        std::size_t batch_size,
                                        std::size_t max_len,
                                        std::uint64_t seed) {
  if (batch_size == 0) throw InvalidArgument("batch size must be >= 1");
  std::vector<EncodedBatch> batches;
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    if (i % batch_size == 0) {
      EncodedBatch batch;
      batch.max_len = max_len;
      batch.seed = seed + batches.size();
      batches.push_back(std::move(batch));
    }
    batches.back().sequences.push_back(
        EncodeForTraining(dataset.sentences()[i], max_len));
  }
  return batches;
}

void WriteRppAudit(const std::vector<std::vector<RppDraw>>& draws,
                   std::ostream& out) {
  json batches = json::array();
  for (const auto& batch : draws) {
    json items = json::array();
    for (const RppDraw& d : batch) {
      items.push_back({{"p_r", d.p_r},
                       {"tau", d.tau},
                       {"interval", {d.interval_lo, d.interval_hi}},
                       {"fallback", d.fallback}});
    }
    batches.push_back(std::move(items));
  }
  out << json{{"transform", "rpp"}, {"batches", batches}}.dump(2) << '\n';
}

void WriteCpAudit(const std::vector<CpPlan>& plans, std::ostream& out) {
  json batches = json::array();
  for (const CpPlan& plan : plans) {
    batches.push_back(
        {{"subsets", plan.subsets}, {"permutations", plan.permutations}});
  }
  out << json{{"transform", "cp"}, {"batches", batches}}.dump(2) << '\n';
}

}  // namespace posbias
