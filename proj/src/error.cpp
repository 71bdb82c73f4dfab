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

#include "semiforge/error.hpp"

namespace semiforge {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kUnreadablePath: return "UnreadablePath";
    case ErrorKind::kUnknownFormat: return "UnknownFormat";
    case ErrorKind::kEmptyCorpus: return "EmptyCorpus";
    case ErrorKind::kInvalidCap: return "InvalidCap";
    case ErrorKind::kEmptyCode: return "EmptyCode";
    case ErrorKind::kInvalidTemplate: return "InvalidTemplate";
    case ErrorKind::kEndpointUnreachable: return "EndpointUnreachable";
    case ErrorKind::kEndpointRejected: return "EndpointRejected";
    case ErrorKind::kReplayMiss: return "ReplayMiss";
    case ErrorKind::kAuthMissing: return "AuthMissing";
    case ErrorKind::kInterpreterMissing: return "InterpreterMissing";
    case ErrorKind::kSandboxSetupFailure: return "SandboxSetupFailure";
    case ErrorKind::kEmptyTestCases: return "EmptyTestCases";
    case ErrorKind::kMissingProvenance: return "MissingProvenance";
    case ErrorKind::kIoFailure: return "IoFailure";
    case ErrorKind::kInvalidStats: return "InvalidStats";
    case ErrorKind::kInvalidArgs: return "InvalidArgs";
    case ErrorKind::kInsufficientSamples: return "InsufficientSamples";
    case ErrorKind::kInvalidConfig: return "InvalidConfig";
    case ErrorKind::kStageFailure: return "StageFailure";
  }
  return "Unknown";
}

}  // namespace semiforge
