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

#include "semiforge/validation.hpp"

#include <algorithm>

#include "semiforge/error.hpp"

namespace semiforge::validation {

Json to_json(const TestCase& test_case) {
  return {{"invocation", exec::to_json(test_case.invocation)},
          {"expected_output", test_case.expected_output}};
}

TestCase test_case_from_json(const Json& json) {
  return {exec::invocation_from_json(json.at("invocation")),
          json.at("expected_output").get<std::string>()};
}

Json to_json(const ValidatedSample& sample) {
  Json cases = Json::array();
  for (const auto& c : sample.test_cases) cases.push_back(to_json(c));
  return {{"instruction", sample.instruction},
          {"refined_code", sample.refined_code},
          {"answer_type", generation::to_json(sample.answer_type)},
          {"test_cases", std::move(cases)},
          {"difficulty", sample.difficulty},
          {"problem_id", sample.problem_id},
          {"solution_index", sample.solution_index},
          {"seq", sample.seq}};
}

ValidatedSample sample_from_json(const Json& json) {
  ValidatedSample s;
  s.instruction = json.at("instruction").get<std::string>();
  s.refined_code = json.at("refined_code").get<std::string>();
  s.answer_type = generation::answer_type_from_json(json.at("answer_type"));
  for (const auto& c : json.at("test_cases")) s.test_cases.push_back(test_case_from_json(c));
  s.difficulty = json.at("difficulty").get<std::size_t>();
  s.problem_id = json.at("problem_id").get<std::string>();
  s.solution_index = json.at("solution_index").get<std::size_t>();
  s.seq = json.at("seq").get<std::size_t>();
  return s;
}

CaseConstruction build_test_cases(const exec::Executor& executor,
                                  std::string_view original_code,
                                  const generation::GenerationBundle& bundle,
                                  const exec::ResourceLimits& limits) {
  CaseConstruction out;
  for (std::size_t i = 0; i < bundle.raw_inputs.size(); ++i) {
    auto invocation = generation::make_invocation(bundle.answer_type,
                                                  bundle.raw_inputs[i]);
    const auto result = executor.execute(original_code, invocation, limits);
    if (result.status != exec::Status::kOk) {
      out.dropped.push_back({i, result.status});
      continue;
    }
    out.cases.push_back(
        {std::move(invocation), exec::normalize_output(result.stdout_text)});
  }
  return out;
}

std::vector<TestCase> construct_test_cases(const exec::Executor& executor,
                                           std::string_view original_code,
                                           const generation::GenerationBundle& bundle,
                                           const exec::ResourceLimits& limits) {
  auto built = build_test_cases(executor, original_code, bundle, limits);
  if (built.cases.empty()) {
    throw Error(ErrorKind::kEmptyTestCases,
                "all " + std::to_string(bundle.raw_inputs.size()) +
                    " inputs failed on the original code");
  }
  return std::move(built.cases);
}

std::string_view to_string(FailReason reason) {
  switch (reason) {
    case FailReason::kWrongOutput: return "WrongOutput";
    case FailReason::kRuntimeError: return "RuntimeError";
    case FailReason::kTimeout: return "Timeout";
  }
  return "Unknown";
}

Verdict validate_refined_code(const exec::Executor& executor,
                              std::string_view refined_code,
                              std::span<const TestCase> test_cases,
                              const exec::ResourceLimits& limits) {
  if (test_cases.empty()) {
    throw Error(ErrorKind::kInvalidArgs, "validation needs at least one test case");
  }
  for (std::size_t i = 0; i < test_cases.size(); ++i) {
    const auto result = executor.execute(refined_code, test_cases[i].invocation, limits);
    switch (result.status) {
      case exec::Status::kOk:
        if (!exec::outputs_match(result.stdout_text, test_cases[i].expected_output)) {
          return Verdict::Fail(i, FailReason::kWrongOutput);
        }
        break;
      case exec::Status::kRuntimeError:
        return Verdict::Fail(i, FailReason::kRuntimeError);
      case exec::Status::kTimeout:
        return Verdict::Fail(i, FailReason::kTimeout);
      case exec::Status::kOutputOverflow:
        // Expected outputs are bounded by the same cap, so this cannot match.
        return Verdict::Fail(i, FailReason::kWrongOutput);
    }
  }
  return Verdict::Pass();
}

std::vector<std::string> rouge_tokens(std::string_view text) {
  return split_whitespace(to_lower(text));
}

double rouge_l(std::span<const std::string> candidate,
               std::span<const std::string> reference) {
  if (candidate.empty() || reference.empty()) return 0.0;
  std::vector<std::size_t> prev(reference.size() + 1, 0);
  std::vector<std::size_t> row(reference.size() + 1, 0);
  for (const auto& c : candidate) {
    for (std::size_t j = 1; j <= reference.size(); ++j) {
      row[j] = c == reference[j - 1] ? prev[j - 1] + 1 : std::max(prev[j], row[j - 1]);
    }
    std::swap(prev, row);
  }
  const auto lcs = static_cast<double>(prev[reference.size()]);
  if (lcs == 0) return 0.0;
  const double precision = lcs / static_cast<double>(candidate.size());
  const double recall = lcs / static_cast<double>(reference.size());
  return 2 * precision * recall / (precision + recall);
}

std::vector<std::size_t> dedup_indices(std::span<const std::string> instructions,
                                       const DedupOptions& options) {
  std::vector<std::vector<std::string>> seen;
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < instructions.size(); ++i) {
    auto tokens = rouge_tokens(instructions[i]);
    const bool duplicate = std::any_of(seen.begin(), seen.end(), [&](const auto& other) {
      return rouge_l(tokens, other) > options.threshold;
    });
    if (!duplicate) kept.push_back(i);
    if (!duplicate || options.scope == DedupScope::kAll) seen.push_back(std::move(tokens));
  }
  return kept;
}

std::vector<ValidatedSample> dedup_instructions(std::vector<ValidatedSample> samples,
                                                const DedupOptions& options) {
  std::vector<std::string> instructions;
  instructions.reserve(samples.size());
  for (const auto& s : samples) instructions.push_back(s.instruction);
  std::vector<ValidatedSample> out;
  for (std::size_t i : dedup_indices(instructions, options)) {
    out.push_back(std::move(samples[i]));
  }
  return out;
}

}  // namespace semiforge::validation
