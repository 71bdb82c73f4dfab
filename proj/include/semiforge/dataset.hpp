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
#include <optional>
#include <string>
#include <vector>

#include "semiforge/corpus.hpp"
#include "semiforge/validation.hpp"

namespace semiforge::dataset {

enum class RecordSource { kSemi, kNi, kSi };
std::string to_string(RecordSource source);
RecordSource record_source_from_string(const std::string& text);

struct DatasetRecord {
  std::string instruction;
  std::string code;
  RecordSource source = RecordSource::kSemi;
  std::optional<std::size_t> difficulty;
  std::optional<std::size_t> n_test_cases;
  std::optional<std::string> problem_id;
  std::optional<std::size_t> solution_index;
  std::optional<std::size_t> seq;
  // Stored for SemI records so emitted data can be re-validated.
  std::optional<generation::AnswerType> answer_type;
  std::vector<validation::TestCase> test_cases;

  friend bool operator==(const DatasetRecord&, const DatasetRecord&) = default;
};

Json to_json(const DatasetRecord& record);
DatasetRecord record_from_json(const Json& json);

DatasetRecord from_sample(const validation::ValidatedSample& sample);

// One record per solution; the problem description is the instruction and
// `seq` numbers solutions in corpus order.
std::vector<DatasetRecord> from_corpus(const std::vector<corpus::Problem>& problems);

// Self-instruct file: JSONL {"instruction", "code", "seq"?}. Missing `seq`
// defaults to the line position, which is the generated order.
std::vector<DatasetRecord> load_self_instruct(const std::filesystem::path& path);

std::vector<DatasetRecord> read_records(const std::filesystem::path& path);

// Writes one JSON object per line in stream order; returns the line count.
std::size_t emit_jsonl(const std::vector<DatasetRecord>& records,
                       const std::filesystem::path& path);

struct FunnelStats {
  std::size_t loaded_codes = 0;
  std::size_t generated_ok = 0;
  std::size_t with_test_cases = 0;
  std::size_t refined_passed = 0;
  std::size_t after_dedup = 0;
  // stage -> reason -> count
  std::map<std::string, std::map<std::string, std::size_t>> drop_reasons;

  void add_drop(const std::string& stage, const std::string& reason,
                std::size_t count = 1) {
    drop_reasons[stage][reason] += count;
  }
  friend bool operator==(const FunnelStats&, const FunnelStats&) = default;
};

Json to_json(const FunnelStats& stats);
FunnelStats stats_from_json(const Json& json);

bool is_monotone(const FunnelStats& stats);

// Stage-over-stage retention in percent (unrounded); nullopt when the
// previous stage is zero.
std::vector<std::optional<double>> retention_percentages(const FunnelStats& stats);

enum class ReportFormat { kText, kJson };

// Throws Error(kInvalidStats) if the stage counts are not non-increasing.
std::string funnel_report(const FunnelStats& stats, ReportFormat format);

}  // namespace semiforge::dataset
