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

#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace semiforge {

enum class ErrorKind {
  kUnreadablePath,
  kUnknownFormat,
  kEmptyCorpus,
  kInvalidCap,
  kEmptyCode,
  kInvalidTemplate,
  kEndpointUnreachable,
  kEndpointRejected,
  kReplayMiss,
  kAuthMissing,
  kInterpreterMissing,
  kSandboxSetupFailure,
  kEmptyTestCases,
  kMissingProvenance,
  kIoFailure,
  kInvalidStats,
  kInvalidArgs,
  kInsufficientSamples,
  kInvalidConfig,
  kStageFailure,
};

std::string_view to_string(ErrorKind kind);

// All fatal failures surface as this type; per-record failures are values.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message),
        kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

// A fatal error raised while running a pipeline stage. Keeps the original
// kind; the message names the stage and, when known, the record.
class StageError : public Error {
 public:
  StageError(ErrorKind kind, std::string stage, const std::string& message)
      : Error(kind, message), stage_(std::move(stage)) {}

  const std::string& stage() const noexcept { return stage_; }

 private:
  std::string stage_;
};

}  // namespace semiforge
