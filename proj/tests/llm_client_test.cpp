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

#include <gtest/gtest.h>
#include <httplib.h>

#include <atomic>
#include <cstdlib>
#include <mutex>
#include <thread>

#include "semiforge/error.hpp"
#include "semiforge/util.hpp"
#include "test_support.hpp"

namespace semiforge::generation {
namespace {

using semiforge::testing::ScratchDir;

ErrorKind kind_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no Error thrown";
  return ErrorKind::kStageFailure;
}

TEST(Request, ParameterChecks) {
  CompletionRequest ok{.prompt = "p"};
  EXPECT_NO_THROW(check_request(ok));
  CompletionRequest bad = ok;
  bad.temperature = -0.1;
  EXPECT_EQ(kind_of([&] { check_request(bad); }), ErrorKind::kInvalidArgs);
  bad = ok;
  bad.top_p = 0;
  EXPECT_EQ(kind_of([&] { check_request(bad); }), ErrorKind::kInvalidArgs);
  bad.top_p = 1.5;
  EXPECT_EQ(kind_of([&] { check_request(bad); }), ErrorKind::kInvalidArgs);
}

TEST(Replay, HitAndMiss) {
  ScratchDir store("replay");
  write_replay_fixture(store.path(), "hello prompt", "### Instruction\nx\n");
  ReplayClient client(store.path());
  EXPECT_EQ(client.fixture_path("hello prompt").filename().string(),
            sha256_hex("hello prompt") + ".txt");
  EXPECT_EQ(client.complete({.prompt = "hello prompt"}).text, "### Instruction\nx\n");
  EXPECT_EQ(kind_of([&] { client.complete({.prompt = "other prompt"}); }),
            ErrorKind::kReplayMiss);
}

TEST(Retry, BackoffSchedule) {
  RetryPolicy p;
  EXPECT_EQ(p.backoff(1).count(), 1000);
  EXPECT_EQ(p.backoff(2).count(), 2000);
  EXPECT_EQ(p.backoff(4).count(), 8000);
  EXPECT_EQ(p.backoff(10).count(), 30000);
}

// Local chat-completion stub whose status sequence is scripted per test.
class StubServer {
 public:
  explicit StubServer(std::vector<int> statuses) : statuses_(std::move(statuses)) {
    server_.Post("/v1/chat/completions", [this](const httplib::Request& req, httplib::Response& res) {
      std::lock_guard lock(mu_);
      auth_ = req.get_header_value("Authorization");
      body_ = req.body;
      const int status = calls_ < static_cast<int>(statuses_.size()) ? statuses_[calls_] : 200;
      ++calls_;
      res.status = status;
      if (status == 429) res.set_header("Retry-After", "3");
      if (status == 200) {
        res.set_content(R"({"choices":[{"message":{"role":"assistant","content":"done"},)"
                        R"("finish_reason":"stop"}],"usage":{"prompt_tokens":5,"completion_tokens":1}})",
                        "application/json");
      } else {
        res.set_content("{\"error\":\"nope\"}", "application/json");
      }
    });
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  ~StubServer() {
    server_.stop();
    thread_.join();
  }
  std::string url() const { return "http://127.0.0.1:" + std::to_string(port_); }
  int calls() {
    std::lock_guard lock(mu_);
    return calls_;
  }
  std::string auth() {
    std::lock_guard lock(mu_);
    return auth_;
  }
  std::string body() {
    std::lock_guard lock(mu_);
    return body_;
  }

 private:
  httplib::Server server_;
  std::thread thread_;
  int port_ = 0;
  std::mutex mu_;
  std::vector<int> statuses_;
  int calls_ = 0;
  std::string auth_;
  std::string body_;
};

class LiveClientTest : public ::testing::Test {
 protected:
  void SetUp() override { ::setenv("SEMIFORGE_TEST_KEY", "sk-test", 1); }
  void TearDown() override { ::unsetenv("SEMIFORGE_TEST_KEY"); }

  LiveClientOptions options(const StubServer& server) {
    LiveClientOptions o;
    o.base_url = server.url();
    o.api_key_env = "SEMIFORGE_TEST_KEY";
    o.request_timeout = std::chrono::seconds(5);
    o.sleep = [this](std::chrono::milliseconds d) { sleeps.push_back(d.count()); };
    return o;
  }
  std::vector<long long> sleeps;
};

TEST_F(LiveClientTest, SuccessSendsCredentialAndParameters) {
  StubServer server({});
  LiveClient client(options(server));
  const auto c = client.complete({.prompt = "hi", .temperature = 0.2, .model_id = "m1"});
  EXPECT_EQ(c.text, "done");
  EXPECT_EQ(c.finish_reason, "stop");
  EXPECT_EQ(c.completion_tokens, 1);
  EXPECT_EQ(server.auth(), "Bearer sk-test");
  const auto body = Json::parse(server.body());
  EXPECT_EQ(body["model"], "m1");
  EXPECT_DOUBLE_EQ(body["temperature"].get<double>(), 0.2);
  EXPECT_EQ(body["messages"][0]["content"], "hi");
}

TEST_F(LiveClientTest, RetriesRateLimitHonoringRetryAfter) {
  StubServer server({429, 503});
  LiveClient client(options(server));
  EXPECT_EQ(client.complete({.prompt = "hi"}).text, "done");
  EXPECT_EQ(server.calls(), 3);
  EXPECT_EQ(sleeps, (std::vector<long long>{3000, 2000}));
}

TEST_F(LiveClientTest, ExhaustedRetriesAreUnreachable) {
  StubServer server({500, 500, 500, 500, 500, 500});
  auto o = options(server);
  o.retry.max_attempts = 3;
  LiveClient client(o);
  EXPECT_EQ(kind_of([&] { client.complete({.prompt = "hi"}); }), ErrorKind::kEndpointUnreachable);
  EXPECT_EQ(server.calls(), 3);
  EXPECT_EQ(sleeps.size(), 2u);
}

TEST_F(LiveClientTest, ClientErrorIsRejectedWithoutRetry) {
  StubServer server({400});
  LiveClient client(options(server));
  EXPECT_EQ(kind_of([&] { client.complete({.prompt = "hi"}); }), ErrorKind::kEndpointRejected);
  EXPECT_EQ(server.calls(), 1);
}

TEST_F(LiveClientTest, NothingListeningIsUnreachable) {
  LiveClientOptions o;
  {
    StubServer server({});
    o = options(server);
  }
  o.retry.max_attempts = 2;
  LiveClient client(o);
  EXPECT_EQ(kind_of([&] { client.complete({.prompt = "hi"}); }), ErrorKind::kEndpointUnreachable);
}

TEST_F(LiveClientTest, MissingCredential) {
  StubServer server({});
  auto o = options(server);
  ::unsetenv("SEMIFORGE_TEST_KEY");
  EXPECT_EQ(kind_of([&] { LiveClient client(o); }), ErrorKind::kAuthMissing);
  ::setenv("SEMIFORGE_TEST_KEY", "", 1);
  EXPECT_EQ(kind_of([&] { LiveClient client(o); }), ErrorKind::kAuthMissing);
}

}  // namespace
}  // namespace semiforge::generation
