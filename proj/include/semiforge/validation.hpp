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
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "semiforge/executor.hpp"
#include "semiforge/generation.hpp"

namespace semiforge::validation {

struct TestCase {
  exec::Invocation invocation;
  std::string expected_output;  // normalized output of the original code

  friend bool operator==(const TestCase&, const TestCase&) = default;
};

Json to_json(const TestCase& test_case);
TestCase test_case_from_json(const Json& json);

struct ValidatedSample {
  std::string instruction;
  std::string refined_code;
  generation::AnswerType answer_type;
  std::vector<TestCase> test_cases;
  std::size_t difficulty = 0;  // == test_cases.size()
  std::string problem_id;
  std::size_t solution_index = 0;
  std::size_t seq = 0;  // generation sequence number

  friend bool operator==(const ValidatedSample&, const ValidatedSample&) = default;
};

Json to_json(const ValidatedSample& sample);
ValidatedSample sample_from_json(const Json& json);

struct DroppedInput {
  std::size_t input_index;
  exec::Status status;
};

struct CaseConstruction {
  std::vector<TestCase> cases;  // input order
  std::vector<DroppedInput> dropped;
};

// Runs the original code on every generated input; inputs whose execution is
// not Ok are dropped. Never throws on an empty result.
CaseConstruction build_test_cases(const exec::Executor& executor,
                                  std::string_view original_code,
                                  const generation::GenerationBundle& bundle,
                                  const exec::ResourceLimits& limits);

// As build_test_cases, but throws Error(kEmptyTestCases) if every input fails.
std::vector<TestCase> construct_test_cases(
    const exec::Executor& executor, std::string_view original_code,
    const generation::GenerationBundle& bundle,
    const exec::ResourceLimits& limits);

enum class FailReason { kWrongOutput, kRuntimeError, kTimeout };
std::string_view to_string(FailReason reason);

struct Verdict {
  bool pass = true;
  std::size_t case_index = 0;  // meaningful when !pass
  FailReason reason = FailReason::kWrongOutput;

  static Verdict Pass() { return {}; }
  static Verdict Fail(std::size_t index, FailReason reason) {
    return {false, index, reason};
  }
  friend bool operator==(const Verdict&, const Verdict&) = default;
};

// Stops at the first failing case. Requires at least one test case.
Verdict validate_refined_code(const exec::Executor& executor,
                              std::string_view refined_code,
                              std::span<const TestCase> test_cases,
                              const exec::ResourceLimits& limits);

// Lowercased whitespace tokens.
std::vector<std::string> rouge_tokens(std::string_view text);

// LCS-based F1 in [0, 1]; 0 when either side is empty.
double rouge_l(std::span<const std::string> candidate,
               std::span<const std::string> reference);

enum class DedupScope { kRetained, kAll };

struct DedupOptions {
  double threshold = 0.7;
  DedupScope scope = DedupScope::kRetained;
};

// Streaming greedy filter: keeps item i iff its max ROUGE-L against the
// comparison set (earlier retained items, or all earlier items) is
// <= threshold. Returns the retained indices in order.
std::vector<std::size_t> dedup_indices(std::span<const std::string> instructions,
                                       const DedupOptions& options = {});

std::vector<ValidatedSample> dedup_instructions(std::vector<ValidatedSample> samples,
                                                const DedupOptions& options = {});

}  // namespace semiforge::validation
