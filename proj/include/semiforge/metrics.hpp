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
#include <map>
#include <string>
#include <vector>

#include "semiforge/executor.hpp"
#include "semiforge/validation.hpp"

namespace semiforge::metrics {

// Unbiased pass@k estimator 1 - C(n-c, k) / C(n, k), evaluated as a running
// product so n = 200 does not overflow. Exactly 1 when n - c < k, exactly
// c / n when k == 1. Throws Error(kInvalidArgs) unless 1 <= k <= n and
// 0 <= c <= n.
double pass_at_k(std::int64_t n, std::int64_t c, std::int64_t k);

struct ProblemEval {
  std::string problem_id;
  std::int64_t n = 0;
  std::int64_t c = 0;
};

struct PassAtKReport {
  std::map<int, double> mean;  // k -> average estimate over problems
  std::vector<ProblemEval> problems;
};

Json to_json(const PassAtKReport& report);

struct EvalProblem {
  std::string problem_id;
  std::vector<validation::TestCase> test_cases;
  std::vector<std::string> candidates;
};

// Each candidate counts as correct iff validate_refined_code passes it.
// Throws Error(kInsufficientSamples) if some problem has fewer than max(ks)
// candidates.
PassAtKReport evaluate_candidates(const exec::Executor& executor,
                                  const std::vector<EvalProblem>& problems,
                                  const exec::ResourceLimits& limits,
                                  const std::vector<int>& ks, std::size_t workers = 1);

// Problems file: JSONL {"problem_id", "answer_type", "test_cases"} where each
// case is {"input", "output"} (or a stored {"invocation", "expected_output"}).
// Candidates file: JSONL {"problem_id", "candidate_code"}.
std::vector<EvalProblem> load_eval_problems(const std::filesystem::path& problems,
                                            const std::filesystem::path& candidates);

}  // namespace semiforge::metrics
