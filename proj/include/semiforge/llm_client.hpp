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

#include <chrono>
#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <semaphore>
#include <string>
#include <string_view>

namespace semiforge::generation {

struct CompletionRequest {
  std::string prompt;
  double temperature = 0.7;
  double top_p = 0.95;
  int max_tokens = 2048;
  std::string model_id;
};

struct Completion {
  std::string text;
  std::string finish_reason;
  int prompt_tokens = 0;
  int completion_tokens = 0;
};

// Throws Error(kInvalidArgs) when temperature < 0 or top_p is outside (0, 1].
void check_request(const CompletionRequest& request);

// Implementations must be safe to call from multiple threads.
class CompletionClient {
 public:
  virtual ~CompletionClient() = default;
  virtual Completion complete(const CompletionRequest& request) = 0;
};

// Content-addressed fixtures: <store>/<sha256(prompt)>.txt.
class ReplayClient : public CompletionClient {
 public:
  explicit ReplayClient(std::filesystem::path store);
  Completion complete(const CompletionRequest& request) override;

  std::filesystem::path fixture_path(std::string_view prompt) const;

 private:
  std::filesystem::path store_;
};

void write_replay_fixture(const std::filesystem::path& store,
                          std::string_view prompt, std::string_view completion);

struct RetryPolicy {
  int max_attempts = 5;
  std::chrono::milliseconds initial_backoff{1000};
  double multiplier = 2.0;
  std::chrono::milliseconds max_backoff{30000};

  // Delay before attempt `attempt + 1`, given `attempt` failures so far.
  std::chrono::milliseconds backoff(int attempt) const;
};

struct LiveClientOptions {
  // e.g. "https://api.openai.com"; a path suffix is kept as a prefix.
  std::string base_url;
  std::string endpoint_path = "/v1/chat/completions";
  std::string api_key_env = "SEMIFORGE_API_KEY";
  RetryPolicy retry;
  int max_in_flight = 4;
  std::chrono::seconds request_timeout{120};
  // Injectable for tests; defaults to std::this_thread::sleep_for.
  std::function<void(std::chrono::milliseconds)> sleep;
};

// OpenAI-style chat-completion client. Retries transport failures, 429 and
// 5xx responses with exponential backoff, honoring Retry-After when present.
class LiveClient : public CompletionClient {
 public:
  // Throws Error(kAuthMissing) if the credential variable is unset or empty.
  explicit LiveClient(LiveClientOptions options);
  ~LiveClient() override;

  Completion complete(const CompletionRequest& request) override;

 private:
  LiveClientOptions options_;
  std::string api_key_;
  std::string host_;
  std::string path_prefix_;
  std::unique_ptr<std::counting_semaphore<>> in_flight_;
};

}  // namespace semiforge::generation
