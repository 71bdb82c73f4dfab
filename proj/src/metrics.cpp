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

#include "semiforge/metrics.hpp"

#include <algorithm>
#include <unordered_map>

#include "semiforge/error.hpp"
#include "semiforge/worker_pool.hpp"

namespace semiforge::metrics {

double pass_at_k(std::int64_t n, std::int64_t c, std::int64_t k) {
  if (n < 1 || k < 1 || k > n || c < 0 || c > n) {
    throw Error(ErrorKind::kInvalidArgs, "pass@k needs 1 <= k <= n, 0 <= c <= n; got n=" +
                                             std::to_string(n) + " c=" + std::to_string(c) +
                                             " k=" + std::to_string(k));
  }
  if (n - c < k) return 1.0;
  if (k == 1) return static_cast<double>(c) / static_cast<double>(n);
  // C(n-c, k) / C(n, k) = prod_{i=n-c+1}^{n} (1 - k / i)
  double miss = 1.0;
  for (std::int64_t i = n - c + 1; i <= n; ++i) {
    miss *= 1.0 - static_cast<double>(k) / static_cast<double>(i);
  }
  return 1.0 - miss;
}

Json to_json(const PassAtKReport& report) {
  Json mean = Json::object();
  for (const auto& [k, v] : report.mean) mean["pass@" + std::to_string(k)] = v;
  Json rows = Json::array();
  for (const auto& p : report.problems) {
    rows.push_back({{"problem_id", p.problem_id}, {"n", p.n}, {"c", p.c}});
  }
  return {{"mean", std::move(mean)}, {"problems", std::move(rows)}};
}

PassAtKReport evaluate_candidates(const exec::Executor& executor,
                                  const std::vector<EvalProblem>& problems,
                                  const exec::ResourceLimits& limits,
                                  const std::vector<int>& ks, std::size_t workers) {
  if (ks.empty()) throw Error(ErrorKind::kInvalidArgs, "no k values");
  const int max_k = *std::max_element(ks.begin(), ks.end());
  for (const auto& p : problems) {
    if (p.candidates.size() < static_cast<std::size_t>(max_k)) {
      throw Error(ErrorKind::kInsufficientSamples,
                  p.problem_id + " has " + std::to_string(p.candidates.size()) +
                      " candidates, need " + std::to_string(max_k));
    }
    if (p.test_cases.empty()) {
      throw Error(ErrorKind::kInvalidArgs, p.problem_id + " has no test cases");
    }
  }

  struct Job {
    std::size_t problem;
    std::size_t candidate;
  };
  std::vector<Job> jobs;
  for (std::size_t i = 0; i < problems.size(); ++i) {
    for (std::size_t j = 0; j < problems[i].candidates.size(); ++j) jobs.push_back({i, j});
  }
  const auto passed = parallel_map(jobs.size(), workers, [&](std::size_t idx) {
    const auto& p = problems[jobs[idx].problem];
    return validation::validate_refined_code(executor, p.candidates[jobs[idx].candidate],
                                             p.test_cases, limits)
        .pass;
  });

  PassAtKReport report;
  for (const auto& p : problems) {
    report.problems.push_back({p.problem_id, static_cast<std::int64_t>(p.candidates.size()), 0});
  }
  for (std::size_t idx = 0; idx < jobs.size(); ++idx) {
    if (passed[idx]) ++report.problems[jobs[idx].problem].c;
  }
  for (int k : ks) {
    double sum = 0;
    for (const auto& e : report.problems) sum += pass_at_k(e.n, e.c, k);
    report.mean[k] = problems.empty() ? 0.0 : sum / static_cast<double>(problems.size());
  }
  return report;
}

std::vector<EvalProblem> load_eval_problems(const std::filesystem::path& problems_path,
                                            const std::filesystem::path& candidates_path) {
  std::vector<EvalProblem> out;
  std::unordered_map<std::string, std::size_t> index;
  for (const auto& row : read_jsonl(problems_path)) {
    EvalProblem p;
    p.problem_id = row.at("problem_id").get<std::string>();
    const auto answer_type = generation::answer_type_from_json(row.at("answer_type"));
    for (const auto& tc : row.at("test_cases")) {
      if (tc.contains("invocation")) {
        p.test_cases.push_back(validation::test_case_from_json(tc));
      } else {
        p.test_cases.push_back(
            {generation::make_invocation(answer_type, tc.at("input").get<std::string>()),
             exec::normalize_output(tc.at("output").get<std::string>())});
      }
    }
    if (!index.try_emplace(p.problem_id, out.size()).second) {
      throw Error(ErrorKind::kInvalidArgs, "duplicate problem " + p.problem_id);
    }
    out.push_back(std::move(p));
  }
  for (const auto& row : read_jsonl(candidates_path)) {
    const auto id = row.at("problem_id").get<std::string>();
    auto it = index.find(id);
    if (it == index.end()) {
      throw Error(ErrorKind::kInvalidArgs, "candidate for unknown problem " + id);
    }
    out[it->second].candidates.push_back(row.at("candidate_code").get<std::string>());
  }
  return out;
}

}  // namespace semiforge::metrics
