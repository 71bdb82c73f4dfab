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

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "semiforge/error.hpp"
#include "test_support.hpp"

namespace semiforge::metrics {
namespace {

using semiforge::testing::data_dir;
using semiforge::testing::pass_at_k_bruteforce;

exec::ResourceLimits limits() {
  exec::ResourceLimits l;
  l.wall_timeout = std::chrono::seconds(5);
  return l;
}

TEST(PassAtK, Examples) {
  EXPECT_EQ(pass_at_k(200, 200, 1), 1.0);
  EXPECT_EQ(pass_at_k(200, 0, 10), 0.0);
  EXPECT_NEAR(pass_at_k(5, 2, 3), 0.9, 1e-15);
}

TEST(PassAtK, MatchesSubsetEnumeration) {
  for (int n = 1; n <= 8; ++n) {
    for (int c = 0; c <= n; ++c) {
      for (int k = 1; k <= n; ++k) {
        EXPECT_NEAR(pass_at_k(n, c, k), pass_at_k_bruteforce(n, c, k), 1e-12)
            << n << " " << c << " " << k;
      }
    }
  }
}

TEST(PassAtK, KOneIsExactFraction) {
  for (int c = 0; c <= 200; ++c) EXPECT_EQ(pass_at_k(200, c, 1), c / 200.0);
}

TEST(PassAtK, MonotoneInKAndC) {
  for (int n : {10, 50, 200}) {
    for (int c = 0; c <= n; c += 3) {
      for (int k = 2; k <= n; k += 7) {
        EXPECT_GE(pass_at_k(n, c, k), pass_at_k(n, c, k - 1));
        if (c > 0) EXPECT_GE(pass_at_k(n, c, k), pass_at_k(n, c - 1, k));
        EXPECT_GE(pass_at_k(n, c, k), 0.0);
        EXPECT_LE(pass_at_k(n, c, k), 1.0);
      }
    }
  }
}

TEST(PassAtK, RejectsBadArguments) {
  for (auto [n, c, k] : {std::array<int, 3>{5, 2, 6}, {5, 6, 1}, {5, 2, 0}, {5, -1, 1}, {0, 0, 1}}) {
    try {
      pass_at_k(n, c, k);
      FAIL() << n << " " << c << " " << k;
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::kInvalidArgs);
    }
  }
}

EvalProblem doubling(std::vector<std::string> candidates) {
  EvalProblem p;
  p.problem_id = "double";
  p.test_cases = {{exec::StdinInput{"3\n"}, "6"}, {exec::StdinInput{"5\n"}, "10"}};
  p.candidates = std::move(candidates);
  return p;
}

TEST(Evaluate, Examples) {
  exec::Executor ex;
  auto report = evaluate_candidates(
      ex, {doubling({"print(int(input())*2)", "print(6)", "print(2*int(input()))", "x"})}, limits(),
      {1});
  EXPECT_EQ(report.mean.at(1), 0.5);
  EXPECT_EQ(report.problems.at(0).c, 2);

  const std::string good = "print(int(input())*2)";
  report = evaluate_candidates(ex, {doubling({good, good, good}), doubling({"x", "y", "z"})},
                               limits(), {1}, 3);
  EXPECT_EQ(report.mean.at(1), 0.5);
}

TEST(Evaluate, InsufficientSamples) {
  exec::Executor ex;
  try {
    evaluate_candidates(ex, {doubling({"print(1)"})}, limits(), {1, 2});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kInsufficientSamples);
  }
}

TEST(Evaluate, ToyProblemGolden) {
  exec::Executor ex;
  const auto problems = load_eval_problems(data_dir() / "eval" / "problems.jsonl",
                                           data_dir() / "eval" / "candidates.jsonl");
  ASSERT_EQ(problems.size(), 3u);
  const auto report = evaluate_candidates(ex, problems, limits(), {1, 2, 5}, 4);
  // Hand count: double 3/5 (int+2 and abs fail), add 1/5, reverse 4/5.
  const std::vector<std::pair<std::string, int>> counted = {{"double", 3}, {"add", 1}, {"reverse", 4}};
  for (std::size_t i = 0; i < counted.size(); ++i) {
    EXPECT_EQ(report.problems[i].problem_id, counted[i].first);
    EXPECT_EQ(report.problems[i].n, 5);
    EXPECT_EQ(report.problems[i].c, counted[i].second);
  }
  for (int k : {1, 2, 5}) {
    double mean = 0;
    for (const auto& [id, c] : counted) mean += pass_at_k_bruteforce(5, c, k);
    EXPECT_NEAR(report.mean.at(k), mean / 3, 1e-12) << k;
  }
  const auto json = to_json(report);
  EXPECT_DOUBLE_EQ(json.at("mean").at("pass@1").get<double>(), report.mean.at(1));
}

}  // namespace
}  // namespace semiforge::metrics
