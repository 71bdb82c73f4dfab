// Copyright 2026 The semiforge Authors.
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

#include "semiforge/curriculum.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <unordered_map>

#include "semiforge/error.hpp"

namespace semiforge::curriculum {
namespace {

using dataset::DatasetRecord;
using dataset::RecordSource;

void require(bool present, const char* field, std::size_t index) {
  if (!present) {
    throw Error(ErrorKind::kMissingProvenance,
                std::string("record ") + std::to_string(index) + " lacks " + field);
  }
}

std::vector<DatasetRecord> generated_order(std::vector<DatasetRecord> records) {
  for (std::size_t i = 0; i < records.size(); ++i) {
    require(records[i].seq.has_value(), "seq", i);
  }
  std::stable_sort(records.begin(), records.end(),
                   [](const DatasetRecord& a, const DatasetRecord& b) {
                     return *a.seq < *b.seq;
                   });
  return records;
}

std::vector<DatasetRecord> ni_shuffled(std::vector<DatasetRecord> records,
                                       std::uint64_t seed) {
  std::vector<std::string> problems;
  std::unordered_map<std::string, std::vector<std::size_t>> members;
  for (std::size_t i = 0; i < records.size(); ++i) {
    require(records[i].problem_id.has_value(), "problem_id", i);
    auto [it, inserted] = members.try_emplace(*records[i].problem_id);
    if (inserted) problems.push_back(*records[i].problem_id);
    it->second.push_back(i);
  }
  Shuffler rng(seed);
  rng.shuffle(problems);

  std::vector<DatasetRecord> out;
  out.reserve(records.size());
  for (const auto& id : problems) {
    auto& idx = members[id];
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
      return records[a].solution_index.value_or(a) < records[b].solution_index.value_or(b);
    });
    for (std::size_t i : idx) out.push_back(std::move(records[i]));
  }
  rng.shuffle(out);
  return out;
}

std::pair<std::vector<DatasetRecord>, std::vector<DatasetRecord>> split_si_semi(
    std::vector<DatasetRecord> records) {
  std::vector<DatasetRecord> si;
  std::vector<DatasetRecord> semi;
  for (std::size_t i = 0; i < records.size(); ++i) {
    switch (records[i].source) {
      case RecordSource::kSi: si.push_back(std::move(records[i])); break;
      case RecordSource::kSemi: semi.push_back(std::move(records[i])); break;
      case RecordSource::kNi: require(false, "source si|semi", i);
    }
  }
  return {std::move(si), std::move(semi)};
}

}  // namespace

std::uint64_t Shuffler::below(std::uint64_t bound) {
  // Reject the low (2^64 mod bound) values so the modulo is unbiased.
  const std::uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    const std::uint64_t x = engine_();
    if (x >= threshold) return x % bound;
  }
}

std::string to_string(OrderingKind kind) {
  switch (kind) {
    case OrderingKind::kSemiRanked: return "semi-ranked";
    case OrderingKind::kSemiUnranked: return "semi-unranked";
    case OrderingKind::kNiShuffled: return "ni-shuffled";
    case OrderingKind::kSiGeneratedOrder: return "si-generated";
    case OrderingKind::kCombinedSiThenSemi: return "si-then-semi";
    case OrderingKind::kAllShuffled: return "all-shuffled";
  }
  return "semi-ranked";
}

OrderingKind ordering_kind_from_string(const std::string& text) {
  static const std::map<std::string, OrderingKind> kNames = {
      {"semi-ranked", OrderingKind::kSemiRanked},
      {"semi-unranked", OrderingKind::kSemiUnranked},
      {"ni-shuffled", OrderingKind::kNiShuffled},
      {"si-generated", OrderingKind::kSiGeneratedOrder},
      {"si-then-semi", OrderingKind::kCombinedSiThenSemi},
      {"all-shuffled", OrderingKind::kAllShuffled}};
  auto it = kNames.find(text);
  if (it == kNames.end()) throw Error(ErrorKind::kInvalidConfig, "unknown order " + text);
  return it->second;
}

bool is_randomized(OrderingKind kind) {
  return kind == OrderingKind::kSemiUnranked || kind == OrderingKind::kNiShuffled ||
         kind == OrderingKind::kAllShuffled;
}

std::vector<DatasetRecord> rank_by_difficulty(std::vector<DatasetRecord> records) {
  for (std::size_t i = 0; i < records.size(); ++i) {
    require(records[i].difficulty.has_value(), "difficulty", i);
  }
  std::stable_sort(records.begin(), records.end(),
                   [](const DatasetRecord& a, const DatasetRecord& b) {
                     return *a.difficulty > *b.difficulty;
                   });
  return records;
}

std::vector<DatasetRecord> order_records(std::vector<DatasetRecord> records,
                                         const OrderingStrategy& strategy) {
  switch (strategy.kind) {
    case OrderingKind::kSemiRanked:
      return rank_by_difficulty(std::move(records));
    case OrderingKind::kSemiUnranked:
    case OrderingKind::kAllShuffled: {
      if (strategy.kind == OrderingKind::kAllShuffled) {
        for (std::size_t i = 0; i < records.size(); ++i) {
          require(records[i].source != RecordSource::kNi, "source si|semi", i);
        }
      }
      Shuffler rng(strategy.seed);
      rng.shuffle(records);
      return records;
    }
    case OrderingKind::kNiShuffled:
      return ni_shuffled(std::move(records), strategy.seed);
    case OrderingKind::kSiGeneratedOrder:
      return generated_order(std::move(records));
    case OrderingKind::kCombinedSiThenSemi: {
      auto [si, semi] = split_si_semi(std::move(records));
      auto out = generated_order(std::move(si));
      auto ranked = rank_by_difficulty(std::move(semi));
      std::move(ranked.begin(), ranked.end(), std::back_inserter(out));
      return out;
    }
  }
  return records;
}

std::vector<DatasetRecord> select_scale(std::vector<DatasetRecord> records, std::size_t n,
                                        const OrderingStrategy& strategy) {
  auto ordered = order_records(std::move(records), strategy);
  if (ordered.size() > n) ordered.resize(n);
  return ordered;
}

}  // namespace semiforge::curriculum
