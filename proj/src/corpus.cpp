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

#include "semiforge/corpus.hpp"

#include <spdlog/spdlog.h>

#include <algorithm>
#include <unordered_map>

#include "semiforge/error.hpp"

namespace semiforge::corpus {
namespace fs = std::filesystem;

Solution Solution::from_code(std::string code, std::string origin) {
  Solution s;
  s.token_count = split_whitespace(code).size();
  s.code = std::move(code);
  s.origin = std::move(origin);
  return s;
}

std::string to_string(Source source) {
  switch (source) {
    case Source::kApps: return "apps";
    case Source::kCodeContest: return "codecontest";
    case Source::kOther: return "other";
  }
  return "other";
}

Source source_from_string(const std::string& text) {
  if (text == "apps") return Source::kApps;
  if (text == "codecontest") return Source::kCodeContest;
  return Source::kOther;
}

Format format_from_string(const std::string& text) {
  if (text == "apps") return Format::kApps;
  if (text == "codecontest") return Format::kCodeContest;
  if (text == "generic") return Format::kGeneric;
  throw Error(ErrorKind::kUnknownFormat, text);
}

TokenMode token_mode_from_string(const std::string& text) {
  if (text == "whitespace") return TokenMode::kWhitespace;
  if (text == "bytes") return TokenMode::kBytes;
  throw Error(ErrorKind::kInvalidConfig, "token mode " + text);
}

Json to_json(const Problem& problem) {
  Json solutions = Json::array();
  for (const auto& s : problem.solutions) {
    solutions.push_back(
        {{"code", s.code}, {"token_count", s.token_count}, {"origin", s.origin}});
  }
  return {{"problem_id", problem.problem_id},
          {"description", problem.description},
          {"source", problem.source == Source::kOther && !problem.source_tag.empty()
                         ? problem.source_tag
                         : to_string(problem.source)},
          {"special_judge", problem.special_judge},
          {"solutions", std::move(solutions)}};
}

namespace {

// Shared by the generic loader and the stage-file reader.
Problem parse_generic(const Json& j) {
  Problem p;
  p.problem_id = j.at("problem_id").get<std::string>();
  p.description = j.at("description").get<std::string>();
  if (p.problem_id.empty()) throw std::invalid_argument("empty problem_id");
  const std::string tag = j.value("source", std::string("other"));
  p.source = source_from_string(tag);
  if (p.source == Source::kOther && tag != "other") p.source_tag = tag;
  p.special_judge = j.value("special_judge", false);
  for (const auto& s : j.at("solutions")) {
    if (s.is_string()) {
      p.solutions.push_back(Solution::from_code(s.get<std::string>()));
    } else {
      p.solutions.push_back(Solution::from_code(
          s.at("code").get<std::string>(), s.value("origin", std::string())));
    }
  }
  return p;
}

std::vector<Problem> load_apps(const fs::path& root) {
  if (!fs::is_directory(root)) {
    throw Error(ErrorKind::kUnknownFormat,
                "APPS corpus must be a directory: " + root.string());
  }
  std::vector<fs::path> dirs;
  for (const auto& entry : fs::directory_iterator(root)) {
    if (entry.is_directory()) dirs.push_back(entry.path());
  }
  std::sort(dirs.begin(), dirs.end());

  std::vector<Problem> out;
  for (const auto& dir : dirs) {
    const std::string id = dir.filename().string();
    try {
      Problem p;
      p.problem_id = id;
      p.source = Source::kApps;
      p.description = read_file(dir / "question.txt");
      const Json codes = Json::parse(read_file(dir / "solutions.json"));
      std::size_t index = 0;
      for (const auto& code : codes) {
        p.solutions.push_back(Solution::from_code(
            code.get<std::string>(), id + "#" + std::to_string(index++)));
      }
      if (fs::exists(dir / "metadata.json")) {
        const Json meta = Json::parse(read_file(dir / "metadata.json"));
        p.special_judge = meta.value("special_judge", false);
      }
      out.push_back(std::move(p));
    } catch (const std::exception& e) {
      spdlog::warn("skipping malformed APPS problem {}: {}", id, e.what());
    }
  }
  return out;
}

std::vector<Problem> load_codecontest(const fs::path& path,
                                      const LoadOptions& options) {
  std::vector<Problem> out;
  const auto rows = read_jsonl(path, [&](std::size_t line, const std::string& msg) {
    spdlog::warn("{}:{}: skipping malformed record: {}", path.string(), line, msg);
  });
  for (std::size_t i = 0; i < rows.size(); ++i) {
    try {
      const Json& j = rows[i];
      Problem p;
      p.problem_id = j.at("name").get<std::string>();
      p.description = j.at("description").get<std::string>();
      p.source = Source::kCodeContest;
      p.special_judge = j.value("special_judge", false);
      std::size_t index = 0;
      for (const auto& s : j.at("solutions")) {
        const std::size_t this_index = index++;
        if (!s.at("correct").get<bool>()) continue;
        if (!starts_with_icase(s.at("language").get<std::string>(),
                               options.language)) {
          continue;
        }
        p.solutions.push_back(Solution::from_code(
            s.at("code").get<std::string>(),
            s.value("origin", p.problem_id + "#" + std::to_string(this_index))));
      }
      out.push_back(std::move(p));
    } catch (const std::exception& e) {
      spdlog::warn("{}: skipping malformed record {}: {}", path.string(), i,
                   e.what());
    }
  }
  return out;
}

std::vector<Problem> load_generic(const fs::path& path) {
  std::vector<Problem> out;
  const auto rows = read_jsonl(path, [&](std::size_t line, const std::string& msg) {
    spdlog::warn("{}:{}: skipping malformed record: {}", path.string(), line, msg);
  });
  for (std::size_t i = 0; i < rows.size(); ++i) {
    try {
      out.push_back(parse_generic(rows[i]));
    } catch (const std::exception& e) {
      spdlog::warn("{}: skipping malformed record {}: {}", path.string(), i,
                   e.what());
    }
  }
  return out;
}

}  // namespace

Problem problem_from_json(const Json& json) { return parse_generic(json); }

std::vector<Problem> load_corpus(const fs::path& path, Format format,
                                 const LoadOptions& options) {
  std::error_code ec;
  if (!fs::exists(path, ec)) {
    throw Error(ErrorKind::kUnreadablePath, path.string());
  }
  std::vector<Problem> problems;
  switch (format) {
    case Format::kApps:
      problems = load_apps(path);
      break;
    case Format::kCodeContest:
    case Format::kGeneric:
      if (fs::is_directory(path)) {
        throw Error(ErrorKind::kUnknownFormat,
                    "expected a JSONL file: " + path.string());
      }
      problems = format == Format::kCodeContest ? load_codecontest(path, options)
                                                : load_generic(path);
      break;
  }
  if (problems.empty()) {
    throw Error(ErrorKind::kEmptyCorpus, "no problems parsed from " + path.string());
  }
  return problems;
}

std::size_t effective_tokens(const Solution& solution, TokenMode mode) {
  if (mode == TokenMode::kBytes) return (solution.code.size() + 3) / 4;
  return solution.token_count;
}

std::vector<Problem> filter_problems(std::vector<Problem> problems,
                                     std::size_t max_tokens, TokenMode mode) {
  std::vector<Problem> out;
  out.reserve(problems.size());
  for (auto& p : problems) {
    if (p.special_judge) continue;
    std::erase_if(p.solutions, [&](const Solution& s) {
      return effective_tokens(s, mode) > max_tokens;
    });
    if (p.solutions.empty()) continue;
    out.push_back(std::move(p));
  }
  return out;
}

IdMap load_id_map(const fs::path& path) {
  const Json j = Json::parse(read_file(path));
  IdMap map;
  for (const auto& [id, key] : j.items()) map[id] = key.get<std::string>();
  return map;
}

std::vector<Problem> merge_duplicate_problems(std::vector<Problem> problems,
                                              MergeKey key,
                                              const IdMap& id_map) {
  std::vector<Problem> out;
  std::unordered_map<std::string, std::size_t> slot;
  for (auto& p : problems) {
    std::string k;
    if (key == MergeKey::kNormalizedDescription) {
      k = collapse_whitespace(p.description);
    } else {
      auto it = id_map.find(p.problem_id);
      k = it != id_map.end() ? it->second : p.problem_id;
    }
    auto [it, inserted] = slot.try_emplace(std::move(k), out.size());
    if (inserted) {
      out.push_back(std::move(p));
      continue;
    }
    Problem& first = out[it->second];
    first.special_judge = first.special_judge || p.special_judge;
    std::move(p.solutions.begin(), p.solutions.end(),
              std::back_inserter(first.solutions));
  }
  return out;
}

std::vector<Problem> cap_solutions(std::vector<Problem> problems, int cap) {
  if (cap < 1) {
    throw Error(ErrorKind::kInvalidCap, "cap must be >= 1, got " + std::to_string(cap));
  }
  for (auto& p : problems) {
    if (p.solutions.size() > static_cast<std::size_t>(cap)) {
      p.solutions.resize(static_cast<std::size_t>(cap));
    }
  }
  return problems;
}

std::size_t total_solutions(const std::vector<Problem>& problems) {
  std::size_t n = 0;
  for (const auto& p : problems) n += p.solutions.size();
  return n;
}

void write_corpus(const fs::path& path, const std::vector<Problem>& problems) {
  std::vector<Json> rows;
  rows.reserve(problems.size());
  for (const auto& p : problems) rows.push_back(to_json(p));
  write_jsonl(path, rows);
}

}  // namespace semiforge::corpus
