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
#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <variant>

#include "semiforge/util.hpp"

namespace semiforge::exec {

struct StdinInput {
  std::string text;
  friend bool operator==(const StdinInput&, const StdinInput&) = default;
};

struct CallInput {
  std::string function_name;
  std::string args_literal;  // Python literal; a tuple is splatted
  friend bool operator==(const CallInput&, const CallInput&) = default;
};

using Invocation = std::variant<StdinInput, CallInput>;

Json to_json(const Invocation& invocation);
Invocation invocation_from_json(const Json& json);

struct ResourceLimits {
  std::chrono::milliseconds wall_timeout{5000};
  std::size_t memory_cap = 256u << 20;
  std::size_t output_cap = 1u << 20;
};

enum class Status { kOk, kRuntimeError, kTimeout, kOutputOverflow };
std::string_view to_string(Status status);

struct ExecutionResult {
  Status status = Status::kOk;
  std::string stdout_text;  // truncated at output_cap
  std::string stderr_text;
  double duration_seconds = 0;
};

struct ExecutorOptions {
  // Absolute path or a name resolved through PATH.
  std::string interpreter = "python3";
  // Parent directory for per-run temp dirs; empty means the system temp dir.
  std::filesystem::path scratch_root;
};

// Runs untrusted programs in a child process: own process group, fresh temp
// working directory, address-space cap, no network where unshare() is
// permitted. Safe for concurrent use; each call owns its process and dir.
class Executor {
 public:
  explicit Executor(ExecutorOptions options = {});

  ExecutionResult execute(std::string_view code, const Invocation& invocation,
                          const ResourceLimits& limits) const;

  const std::string& interpreter_path() const { return interpreter_path_; }
  const std::filesystem::path& scratch_root() const { return scratch_root_; }

 private:
  std::string interpreter_path_;
  std::filesystem::path scratch_root_;
};

// Python string literal that evaluates to `text`.
std::string python_string_literal(std::string_view text);

// The embedded Call-mode wrapper, with {{user_code}}, {{function_name}} and
// {{args_literal}} placeholders.
std::string_view call_shim_template();
std::string render_call_shim(std::string_view user_code,
                             std::string_view function_name,
                             std::string_view args_literal);

std::string normalize_output(std::string_view text);
bool outputs_match(std::string_view actual, std::string_view expected);

bool is_identifier(std::string_view text);

}  // namespace semiforge::exec
