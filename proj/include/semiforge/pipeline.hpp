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
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "semiforge/corpus.hpp"
#include "semiforge/curriculum.hpp"
#include "semiforge/dataset.hpp"
#include "semiforge/executor.hpp"
#include "semiforge/llm_client.hpp"
#include "semiforge/validation.hpp"

namespace semiforge::pipeline {

enum class Stage { kIngest, kGenerate, kConstruct, kValidate, kDedup, kOrder, kEmit };
inline constexpr Stage kFirstStage = Stage::kIngest;
inline constexpr Stage kLastStage = Stage::kEmit;

std::string to_string(Stage stage);
Stage stage_from_string(const std::string& text);
// Stage file written by `stage`, relative to the work dir.
std::string stage_file(Stage stage);

struct CorpusInput {
  std::filesystem::path path;
  corpus::Format format = corpus::Format::kApps;
};

enum class ClientMode { kReplay, kLive };

struct PipelineConfig {
  std::vector<CorpusInput> corpora;
  std::string language = "python";
  std::size_t max_tokens = 1000;
  corpus::TokenMode token_mode = corpus::TokenMode::kWhitespace;
  corpus::MergeKey merge_key = corpus::MergeKey::kNormalizedDescription;
  std::filesystem::path id_map;
  int solution_cap = 25;

  std::filesystem::path template_path;  // empty: bundled template
  int input_count = 8;
  ClientMode client_mode = ClientMode::kReplay;
  std::filesystem::path replay_store = "fixtures/completions";
  std::string endpoint;
  std::string model_id = "gpt-3.5-turbo";
  double temperature = 0.7;
  double top_p = 0.95;
  int completion_max_tokens = 2048;
  int retry_attempts = 5;
  int max_in_flight = 4;

  std::string interpreter = "python3";
  std::filesystem::path scratch_root;
  exec::ResourceLimits limits;
  std::size_t workers = 4;

  validation::DedupOptions dedup;

  curriculum::OrderingStrategy order;
  std::optional<std::size_t> scale;
  std::filesystem::path self_instruct;

  std::filesystem::path work_dir = "semiforge-work";
  std::filesystem::path output;       // empty: <work_dir>/dataset.jsonl
  std::filesystem::path report_text;  // empty: <work_dir>/report.txt
  std::filesystem::path report_json;  // empty: <work_dir>/report.json
};

Json to_json(const PipelineConfig& config);

// Output paths with defaults resolved against the work dir.
std::filesystem::path output_path(const PipelineConfig& config);
std::filesystem::path report_text_path(const PipelineConfig& config);
std::filesystem::path report_json_path(const PipelineConfig& config);

std::string template_version(const PipelineConfig& config);

// Runs stages [first, last] in order, reading the previous stage's file from
// the work dir when `first` is not the ingest stage. A per-record failure is
// a funnel drop; a fatal error is rethrown with the stage name (and record,
// when there is one) in its message. `client` overrides the configured one.
dataset::FunnelStats run_stages(const PipelineConfig& config, Stage first, Stage last,
                                generation::CompletionClient* client = nullptr);

inline dataset::FunnelStats run_pipeline(const PipelineConfig& config,
                                         Stage resume_from = kFirstStage) {
  return run_stages(config, resume_from, kLastStage);
}

// Cumulative stats snapshot written after `stage`.
dataset::FunnelStats load_stats(const std::filesystem::path& work_dir, Stage stage);

std::unique_ptr<generation::CompletionClient> make_client(const PipelineConfig& config);

}  // namespace semiforge::pipeline
