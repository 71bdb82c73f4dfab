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

#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "semiforge/dataset.hpp"

namespace semiforge::curriculum {

// Seeded permutations use std::mt19937_64 (its output sequence is fixed by
// the C++ standard), unbiased rejection sampling for bounded draws, and a
// descending Fisher-Yates pass. Same seed, same permutation, on any platform.
class Shuffler {
 public:
  explicit Shuffler(std::uint64_t seed) : engine_(seed) {}

  // Uniform in [0, bound); bound > 0.
  std::uint64_t below(std::uint64_t bound);

  template <typename T>
  void shuffle(std::vector<T>& items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      const auto j = static_cast<std::size_t>(below(i));
      std::swap(items[i - 1], items[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

enum class OrderingKind {
  kSemiRanked,
  kSemiUnranked,
  kNiShuffled,
  kSiGeneratedOrder,
  kCombinedSiThenSemi,
  kAllShuffled,
};

std::string to_string(OrderingKind kind);
OrderingKind ordering_kind_from_string(const std::string& text);
bool is_randomized(OrderingKind kind);

struct OrderingStrategy {
  OrderingKind kind = OrderingKind::kSemiRanked;
  std::uint64_t seed = 0;
};

// Stable sort by non-increasing difficulty. Records lacking a difficulty
// raise Error(kMissingProvenance).
std::vector<dataset::DatasetRecord> rank_by_difficulty(
    std::vector<dataset::DatasetRecord> records);

std::vector<dataset::DatasetRecord> order_records(
    std::vector<dataset::DatasetRecord> records, const OrderingStrategy& strategy);

// Prefix of length min(n, |records|) of the strategy order; selections for
// smaller n are prefixes of selections for larger n.
std::vector<dataset::DatasetRecord> select_scale(
    std::vector<dataset::DatasetRecord> records, std::size_t n,
    const OrderingStrategy& strategy);

}  // namespace semiforge::curriculum
