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

#include "semiforge/generation.hpp"

#include <algorithm>
#include <cctype>
#include <optional>

#include "semiforge/error.hpp"

namespace semiforge::generation {
namespace {

constexpr std::string_view kDefaultTemplate =
#include "semiforge/assets/generation_prompt.inc"
    ;

constexpr std::string_view kCodeSlot = "{{original_code}}";
constexpr std::string_view kCountSlot = "{{input_count}}";

std::size_t count_occurrences(std::string_view text, std::string_view needle) {
  std::size_t n = 0;
  for (auto pos = text.find(needle); pos != std::string_view::npos;
       pos = text.find(needle, pos + needle.size())) {
    ++n;
  }
  return n;
}

std::string replace_all(std::string text, std::string_view from,
                        std::string_view to) {
  std::size_t pos = 0;
  while ((pos = text.find(from, pos)) != std::string::npos) {
    text.replace(pos, from.size(), to);
    pos += to.size();
  }
  return text;
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    auto line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    if (end == text.size()) break;
    start = end + 1;
  }
  return lines;
}

std::string join_lines(const std::vector<std::string_view>& lines,
                       std::size_t begin, std::size_t end) {
  std::string out;
  for (std::size_t i = begin; i < end; ++i) {
    out.append(lines[i]);
    out.push_back('\n');
  }
  return out;
}

// Drops leading/trailing blank lines and, when the remainder is wrapped in a
// ``` fence, the fence lines themselves.
std::string strip_block(std::string_view block) {
  auto lines = split_lines(block);
  auto blank = [](std::string_view l) { return trim(l).empty(); };
  std::size_t begin = 0;
  std::size_t end = lines.size();
  while (begin < end && blank(lines[begin])) ++begin;
  while (end > begin && blank(lines[end - 1])) --end;
  if (end - begin >= 2 && trim(lines[begin]).starts_with("```") &&
      trim(lines[end - 1]) == "```") {
    ++begin;
    --end;
  }
  std::string out = join_lines(lines, begin, end);
  if (!out.empty()) out.pop_back();
  return out;
}

std::string canonical_header(std::string_view line) {
  std::string out;
  for (char c : trim(line)) {
    if (c == ':') continue;
    out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  return collapse_whitespace(out);
}

enum class Section { kInstruction, kRefinedCode, kAnswerType, kInputs };

std::optional<Section> match_section(std::string_view line) {
  if (line.empty() || line.front() != '#') return std::nullopt;
  const std::string h = canonical_header(line);
  if (h == canonical_header(kInstructionHeader)) return Section::kInstruction;
  if (h == canonical_header(kRefinedCodeHeader)) return Section::kRefinedCode;
  if (h == canonical_header(kAnswerTypeHeader)) return Section::kAnswerType;
  if (h == canonical_header(kInputsHeader)) return Section::kInputs;
  return std::nullopt;
}

bool is_input_header(std::string_view line) {
  if (line.empty() || line.front() != '#') return false;
  const std::string h = canonical_header(line);
  const std::string base = canonical_header(kInputHeader);
  if (!h.starts_with(base)) return false;
  std::string_view rest = std::string_view(h).substr(base.size());
  rest = trim(rest);
  return std::all_of(rest.begin(), rest.end(),
                     [](unsigned char c) { return std::isdigit(c); });
}

bool is_fence(std::string_view line) { return trim(line).starts_with("```"); }

std::optional<std::string> function_name_in(std::string_view line) {
  const std::string_view t = trim(line);
  if (!starts_with_icase(t, kFunctionNameLabel)) return std::nullopt;
  std::string name(trim(t.substr(kFunctionNameLabel.size())));
  std::erase(name, '`');
  if (name.ends_with("()")) name.resize(name.size() - 2);
  return name;
}

std::optional<AnswerType::Kind> answer_kind(std::string_view text) {
  std::string key;
  for (char c : text) {
    if (std::isalnum(static_cast<unsigned char>(c))) {
      key.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    }
  }
  if (key == "callbased") return AnswerType::Kind::kCallBased;
  if (key == "standardinput") return AnswerType::Kind::kStandardInput;
  return std::nullopt;
}

}  // namespace

PromptTemplate parse_template(std::string_view text, int input_count) {
  PromptTemplate t;
  t.input_count = input_count;
  enum class Part { kPreamble, kExemplar, kTask } part = Part::kPreamble;
  std::string current;
  bool seen_task = false;
  auto flush = [&] {
    std::string block = current;
    while (!block.empty() && block.back() == '\n') block.pop_back();
    switch (part) {
      case Part::kPreamble: t.preamble = block; break;
      case Part::kExemplar: t.exemplars.push_back(block); break;
      case Part::kTask: t.task = block; break;
    }
    current.clear();
  };
  const auto lines = split_lines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto line = lines[i];
    if (i == 0 && line.starts_with("@@version")) {
      t.version = std::string(trim(line.substr(9)));
      continue;
    }
    if (trim(line) == "@@exemplar" || trim(line) == "@@task") {
      if (part == Part::kTask) {
        throw Error(ErrorKind::kInvalidTemplate, "content after @@task block");
      }
      flush();
      part = trim(line) == "@@task" ? Part::kTask : Part::kExemplar;
      seen_task = seen_task || part == Part::kTask;
      continue;
    }
    current.append(line);
    current.push_back('\n');
  }
  flush();
  if (!seen_task) throw Error(ErrorKind::kInvalidTemplate, "missing @@task block");
  if (input_count < 1) {
    throw Error(ErrorKind::kInvalidTemplate, "input_count must be >= 1");
  }
  std::size_t slots = count_occurrences(t.task, kCodeSlot) +
                      count_occurrences(t.preamble, kCodeSlot);
  for (const auto& e : t.exemplars) slots += count_occurrences(e, kCodeSlot);
  if (slots != 1 || count_occurrences(t.task, kCodeSlot) != 1) {
    throw Error(ErrorKind::kInvalidTemplate,
                "template needs exactly one {{original_code}} slot, in the task");
  }
  return t;
}

PromptTemplate default_template() { return parse_template(kDefaultTemplate); }

PromptTemplate load_template(const std::filesystem::path& path, int input_count) {
  return parse_template(read_file(path), input_count);
}

std::string build_generation_prompt(std::string_view original_code,
                                    const PromptTemplate& prompt_template) {
  if (trim(original_code).empty()) {
    throw Error(ErrorKind::kEmptyCode, "original code is empty");
  }
  if (prompt_template.input_count < 1) {
    throw Error(ErrorKind::kInvalidTemplate, "input_count must be >= 1");
  }
  std::string head = prompt_template.preamble;
  for (const auto& exemplar : prompt_template.exemplars) {
    head += "\n\n";
    head += exemplar;
  }
  head += "\n\n";
  const std::string count = std::to_string(prompt_template.input_count);
  head = replace_all(std::move(head), kCountSlot, count);
  std::string task = replace_all(prompt_template.task, kCountSlot, count);

  std::string code(original_code);
  while (!code.empty() && (code.back() == '\n' || code.back() == '\r')) {
    code.pop_back();
  }
  // The code is spliced last so placeholder-like text inside it survives.
  const auto slot = task.find(kCodeSlot);
  task.replace(slot, kCodeSlot.size(), code);
  return head + task + "\n";
}

Json to_json(const AnswerType& answer_type) {
  if (answer_type.kind == AnswerType::Kind::kCallBased) {
    return {{"type", "Call-Based"}, {"function_name", answer_type.function_name}};
  }
  return {{"type", "Standard Input"}};
}

AnswerType answer_type_from_json(const Json& json) {
  const auto kind = answer_kind(json.at("type").get<std::string>());
  if (!kind) throw Error(ErrorKind::kInvalidArgs, "unknown answer type " + json.dump());
  AnswerType out{*kind, {}};
  if (*kind == AnswerType::Kind::kCallBased) {
    out.function_name = json.at("function_name").get<std::string>();
  }
  return out;
}

exec::Invocation make_invocation(const AnswerType& answer_type,
                                 std::string_view raw_input) {
  if (answer_type.kind == AnswerType::Kind::kCallBased) {
    return exec::CallInput{answer_type.function_name, std::string(raw_input)};
  }
  std::string text(raw_input);
  if (!text.empty() && text.back() != '\n') text.push_back('\n');
  return exec::StdinInput{std::move(text)};
}

Json to_json(const GenerationBundle& bundle) {
  return {{"instruction", bundle.instruction},
          {"refined_code", bundle.refined_code},
          {"answer_type", to_json(bundle.answer_type)},
          {"raw_inputs", bundle.raw_inputs},
          {"raw_completion", bundle.raw_completion}};
}

GenerationBundle bundle_from_json(const Json& json) {
  GenerationBundle b;
  b.instruction = json.at("instruction").get<std::string>();
  b.refined_code = json.at("refined_code").get<std::string>();
  b.answer_type = answer_type_from_json(json.at("answer_type"));
  b.raw_inputs = json.at("raw_inputs").get<std::vector<std::string>>();
  b.raw_completion = json.value("raw_completion", std::string());
  return b;
}

std::string ParseError::message() const {
  switch (kind) {
    case Kind::kMissingSection: return "MissingSection(" + detail + ")";
    case Kind::kUnknownAnswerType: return "UnknownAnswerType(" + detail + ")";
    case Kind::kNoInputs: return "NoInputs";
    case Kind::kMissingFunctionName: return "MissingFunctionName";
  }
  return "ParseError";
}

ParseResult parse_components(std::string_view raw) {
  const auto lines = split_lines(raw);
  // Section -> [begin, end) line range of its body; first occurrence wins.
  struct Range {
    std::size_t begin = 0, end = 0;
    bool present = false;
  };
  Range ranges[4];
  int open = -1;
  bool in_fence = false;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (is_fence(lines[i])) {
      in_fence = !in_fence;
      continue;
    }
    if (in_fence) continue;
    if (auto s = match_section(lines[i])) {
      if (open >= 0) ranges[open].end = i;
      open = -1;
      Range& r = ranges[static_cast<int>(*s)];
      if (!r.present) {
        r = {i + 1, lines.size(), true};
        open = static_cast<int>(*s);
      }
    }
  }
  if (open >= 0) ranges[open].end = lines.size();

  auto body = [&](Section s) {
    const Range& r = ranges[static_cast<int>(s)];
    return join_lines(lines, r.begin, r.end);
  };
  auto missing = [](std::string_view name) {
    return ParseError{ParseError::Kind::kMissingSection, std::string(name.substr(4))};
  };

  const std::pair<Section, std::string_view> required[] = {
      {Section::kInstruction, kInstructionHeader},
      {Section::kRefinedCode, kRefinedCodeHeader},
      {Section::kAnswerType, kAnswerTypeHeader},
      {Section::kInputs, kInputsHeader}};
  for (const auto& [section, header] : required) {
    if (!ranges[static_cast<int>(section)].present) return missing(header);
  }

  GenerationBundle bundle;
  bundle.raw_completion = std::string(raw);
  bundle.instruction = std::string(trim(body(Section::kInstruction)));
  if (bundle.instruction.empty()) return missing(kInstructionHeader);
  bundle.refined_code = strip_block(body(Section::kRefinedCode));
  if (trim(bundle.refined_code).empty()) return missing(kRefinedCodeHeader);
  bundle.refined_code.push_back('\n');

  // Answer type: first non-blank, non-label line; the function name may sit
  // in this section or ahead of the first input block.
  std::optional<std::string> function_name;
  std::string type_text;
  const Range at = ranges[static_cast<int>(Section::kAnswerType)];
  for (std::size_t i = at.begin; i < at.end; ++i) {
    if (auto name = function_name_in(lines[i])) {
      if (!function_name) function_name = *name;
    } else if (type_text.empty() && !trim(lines[i]).empty()) {
      type_text = std::string(trim(lines[i]));
    }
  }
  if (type_text.empty()) return missing(kAnswerTypeHeader);
  const auto kind = answer_kind(type_text);
  if (!kind) return ParseError{ParseError::Kind::kUnknownAnswerType, type_text};

  const Range in = ranges[static_cast<int>(Section::kInputs)];
  std::optional<std::size_t> block_start;
  in_fence = false;
  auto close_block = [&](std::size_t end) {
    if (!block_start) return;
    std::string text = strip_block(join_lines(lines, *block_start, end));
    if (!trim(text).empty()) bundle.raw_inputs.push_back(std::move(text));
  };
  for (std::size_t i = in.begin; i < in.end; ++i) {
    if (is_fence(lines[i])) in_fence = !in_fence;
    if (!in_fence && is_input_header(lines[i])) {
      close_block(i);
      block_start = i + 1;
      continue;
    }
    if (!block_start && !function_name) {
      if (auto name = function_name_in(lines[i])) function_name = *name;
    }
  }
  close_block(in.end);

  bundle.answer_type.kind = *kind;
  if (*kind == AnswerType::Kind::kCallBased) {
    if (!function_name || !exec::is_identifier(*function_name)) {
      return ParseError{ParseError::Kind::kMissingFunctionName, {}};
    }
    bundle.answer_type.function_name = *function_name;
  }
  if (bundle.raw_inputs.empty()) return ParseError{ParseError::Kind::kNoInputs, {}};
  return bundle;
}

}  // namespace semiforge::generation
