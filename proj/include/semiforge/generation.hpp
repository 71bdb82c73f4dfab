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

#include <filesystem>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "semiforge/executor.hpp"
#include "semiforge/util.hpp"

namespace semiforge::generation {

// A generation prompt: component definitions, few-shot exemplars, and a task
// block that carries the single {{original_code}} slot. {{input_count}} may
// appear anywhere.
struct PromptTemplate {
  std::string version;
  std::string preamble;
  std::vector<std::string> exemplars;
  std::string task;
  int input_count = 8;
};

// The bundled template (assets/generation_prompt.txt).
PromptTemplate default_template();

// Template file layout: an optional `@@version <tag>` first line, preamble
// text, zero or more `@@exemplar` blocks, then one `@@task` block.
PromptTemplate parse_template(std::string_view text, int input_count = 8);
PromptTemplate load_template(const std::filesystem::path& path,
                             int input_count = 8);

std::string build_generation_prompt(std::string_view original_code,
                                    const PromptTemplate& prompt_template);

struct AnswerType {
  enum class Kind { kCallBased, kStandardInput };
  Kind kind = Kind::kStandardInput;
  std::string function_name;  // set iff kind == kCallBased

  friend bool operator==(const AnswerType&, const AnswerType&) = default;
};

Json to_json(const AnswerType& answer_type);
AnswerType answer_type_from_json(const Json& json);

// Stdin inputs get a trailing newline if they lack one.
exec::Invocation make_invocation(const AnswerType& answer_type,
                                 std::string_view raw_input);

struct GenerationBundle {
  std::string instruction;
  std::string refined_code;
  AnswerType answer_type;
  std::vector<std::string> raw_inputs;
  std::string raw_completion;

  friend bool operator==(const GenerationBundle&,
                         const GenerationBundle&) = default;
};

Json to_json(const GenerationBundle& bundle);
GenerationBundle bundle_from_json(const Json& json);

struct ParseError {
  enum class Kind {
    kMissingSection,
    kUnknownAnswerType,
    kNoInputs,
    kMissingFunctionName,
  };
  Kind kind;
  std::string detail;  // section name or offending text

  std::string message() const;
  friend bool operator==(const ParseError&, const ParseError&) = default;
};

using ParseResult = std::variant<GenerationBundle, ParseError>;

// Total: every input yields either a complete bundle or a ParseError.
ParseResult parse_components(std::string_view raw);

inline constexpr std::string_view kInstructionHeader = "### Instruction";
inline constexpr std::string_view kRefinedCodeHeader = "### Refined Code";
inline constexpr std::string_view kAnswerTypeHeader = "### Answer Type";
inline constexpr std::string_view kInputsHeader = "### Test Case Inputs";
inline constexpr std::string_view kInputHeader = "#### Input";
inline constexpr std::string_view kFunctionNameLabel = "Function Name:";

}  // namespace semiforge::generation
