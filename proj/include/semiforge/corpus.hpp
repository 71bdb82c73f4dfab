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
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "semiforge/util.hpp"

namespace semiforge::corpus {

enum class Source { kApps, kCodeContest, kOther };
enum class Format { kApps, kCodeContest, kGeneric };
enum class TokenMode { kWhitespace, kBytes };
enum class MergeKey { kNormalizedDescription, kExplicitIdMap };

struct Solution {
  std::string code;
  std::size_t token_count = 0;  // whitespace-delimited tokens in `code`
  std::string origin;

  static Solution from_code(std::string code, std::string origin = {});
  friend bool operator==(const Solution&, const Solution&) = default;
};

struct Problem {
  std::string problem_id;
  std::string description;
  Source source = Source::kOther;
  // Free-form tag kept for Source::kOther records.
  std::string source_tag;
  std::vector<Solution> solutions;
  bool special_judge = false;

  friend bool operator==(const Problem&, const Problem&) = default;
};

std::string to_string(Source source);
Source source_from_string(const std::string& text);
Format format_from_string(const std::string& text);
TokenMode token_mode_from_string(const std::string& text);

Json to_json(const Problem& problem);
Problem problem_from_json(const Json& json);

struct LoadOptions {
  // Solutions whose language tag does not start with this (case-insensitive)
  // are dropped. Formats without language tags keep every solution.
  std::string language = "python";
};

// APPS: directory of problem folders. CodeContest / generic: JSONL file.
// Malformed records are skipped with a warning.
std::vector<Problem> load_corpus(const std::filesystem::path& path,
                                 Format format, const LoadOptions& options = {});

std::size_t effective_tokens(const Solution& solution, TokenMode mode);

std::vector<Problem> filter_problems(std::vector<Problem> problems,
                                     std::size_t max_tokens = 1000,
                                     TokenMode mode = TokenMode::kWhitespace);

// Maps problem_id -> group key; ids absent from the map form their own group.
using IdMap = std::map<std::string, std::string>;
IdMap load_id_map(const std::filesystem::path& path);

std::vector<Problem> merge_duplicate_problems(
    std::vector<Problem> problems,
    MergeKey key = MergeKey::kNormalizedDescription, const IdMap& id_map = {});

std::vector<Problem> cap_solutions(std::vector<Problem> problems,
                                   int cap = 25);

std::size_t total_solutions(const std::vector<Problem>& problems);

void write_corpus(const std::filesystem::path& path,
                  const std::vector<Problem>& problems);

}  // namespace semiforge::corpus
