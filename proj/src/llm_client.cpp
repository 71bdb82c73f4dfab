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

#include "semiforge/llm_client.hpp"

#include <spdlog/spdlog.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <thread>

#include "httplib.h"
#include "semiforge/error.hpp"
#include "semiforge/util.hpp"

namespace semiforge::generation {
namespace fs = std::filesystem;

void check_request(const CompletionRequest& request) {
  if (!(request.temperature >= 0)) {
    throw Error(ErrorKind::kInvalidArgs, "temperature must be >= 0");
  }
  if (!(request.top_p > 0 && request.top_p <= 1)) {
    throw Error(ErrorKind::kInvalidArgs, "top_p must be in (0, 1]");
  }
}

ReplayClient::ReplayClient(fs::path store) : store_(std::move(store)) {}

fs::path ReplayClient::fixture_path(std::string_view prompt) const {
  return store_ / (sha256_hex(prompt) + ".txt");
}

Completion ReplayClient::complete(const CompletionRequest& request) {
  check_request(request);
  const fs::path path = fixture_path(request.prompt);
  std::error_code ec;
  if (!fs::exists(path, ec)) {
    throw Error(ErrorKind::kReplayMiss, "no fixture " + path.filename().string());
  }
  Completion c;
  c.text = read_file(path);
  c.finish_reason = "replay";
  return c;
}

void write_replay_fixture(const fs::path& store, std::string_view prompt,
                          std::string_view completion) {
  write_file(store / (sha256_hex(prompt) + ".txt"), completion);
}

std::chrono::milliseconds RetryPolicy::backoff(int attempt) const {
  const double scaled = static_cast<double>(initial_backoff.count()) *
                        std::pow(multiplier, std::max(0, attempt - 1));
  const double capped = std::min(scaled, static_cast<double>(max_backoff.count()));
  return std::chrono::milliseconds(static_cast<long long>(capped));
}

LiveClient::LiveClient(LiveClientOptions options) : options_(std::move(options)) {
  const char* key = std::getenv(options_.api_key_env.c_str());
  if (key == nullptr || *key == '\0') {
    throw Error(ErrorKind::kAuthMissing, options_.api_key_env + " is not set");
  }
  api_key_ = key;
  if (options_.base_url.empty()) {
    throw Error(ErrorKind::kInvalidConfig, "live client needs a base URL");
  }
  const auto scheme = options_.base_url.find("://");
  const auto path_pos = options_.base_url.find(
      '/', scheme == std::string::npos ? 0 : scheme + 3);
  host_ = options_.base_url.substr(0, path_pos);
  if (path_pos != std::string::npos) {
    path_prefix_ = options_.base_url.substr(path_pos);
    while (!path_prefix_.empty() && path_prefix_.back() == '/') path_prefix_.pop_back();
  }
  if (!options_.sleep) {
    options_.sleep = [](std::chrono::milliseconds d) { std::this_thread::sleep_for(d); };
  }
  in_flight_ = std::make_unique<std::counting_semaphore<>>(
      std::max(1, options_.max_in_flight));
}

LiveClient::~LiveClient() = default;

Completion LiveClient::complete(const CompletionRequest& request) {
  check_request(request);
  const Json body = {
      {"model", request.model_id},
      {"messages", Json::array({{{"role", "user"}, {"content", request.prompt}}})},
      {"temperature", request.temperature},
      {"top_p", request.top_p},
      {"max_tokens", request.max_tokens}};
  const std::string payload = body.dump();
  const std::string path = path_prefix_ + options_.endpoint_path;

  std::string last_error = "no attempts made";
  const int attempts = std::max(1, options_.retry.max_attempts);
  for (int attempt = 1; attempt <= attempts; ++attempt) {
    std::optional<std::chrono::milliseconds> retry_after;
    {
      in_flight_->acquire();
      struct Release {
        std::counting_semaphore<>* s;
        ~Release() { s->release(); }
      } release{in_flight_.get()};

      httplib::Client client(host_);
      client.set_connection_timeout(options_.request_timeout);
      client.set_read_timeout(options_.request_timeout);
      client.set_bearer_token_auth(api_key_);
      auto response = client.Post(path, payload, "application/json");
      if (!response) {
        last_error = "transport: " + httplib::to_string(response.error());
      } else if (response->status == 200) {
        const Json j = Json::parse(response->body);
        const Json& choice = j.at("choices").at(0);
        Completion c;
        c.text = choice.at("message").at("content").get<std::string>();
        c.finish_reason = choice.value("finish_reason", std::string());
        if (j.contains("usage")) {
          c.prompt_tokens = j["usage"].value("prompt_tokens", 0);
          c.completion_tokens = j["usage"].value("completion_tokens", 0);
        }
        return c;
      } else if (response->status == 429 || response->status >= 500) {
        last_error = "HTTP " + std::to_string(response->status);
        if (response->has_header("Retry-After")) {
          try {
            retry_after = std::chrono::milliseconds(static_cast<long long>(
                std::stod(response->get_header_value("Retry-After")) * 1000));
          } catch (const std::exception&) {
            // HTTP-date form; fall back to computed backoff.
          }
        }
      } else {
        throw Error(ErrorKind::kEndpointRejected,
                    "HTTP " + std::to_string(response->status) + ": " +
                        response->body.substr(0, 200));
      }
    }
    if (attempt == attempts) break;
    auto delay = options_.retry.backoff(attempt);
    if (retry_after) delay = std::max(delay, *retry_after);
    spdlog::warn("completion attempt {}/{} failed ({}); retrying in {} ms", attempt,
                 attempts, last_error, delay.count());
    options_.sleep(delay);
  }
  throw Error(ErrorKind::kEndpointUnreachable,
              last_error + " after " + std::to_string(attempts) + " attempts");
}

}  // namespace semiforge::generation
