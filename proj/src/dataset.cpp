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

#include "semiforge/dataset.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <utility>

#include "semiforge/error.hpp"

namespace semiforge::dataset {

std::string to_string(RecordSource source) {
  switch (source) {
    case RecordSource::kSemi: return "semi";
    case RecordSource::kNi: return "ni";
    case RecordSource::kSi: return "si";
  }
  return "semi";
}

RecordSource record_source_from_string(const std::string& text) {
  if (text == "semi") return RecordSource::kSemi;
  if (text == "ni") return RecordSource::kNi;
  if (text == "si") return RecordSource::kSi;
  throw Error(ErrorKind::kInvalidArgs, "unknown record source " + text);
}

Json to_json(const DatasetRecord& r) {
  Json j = {{"instruction", r.instruction},
            {"code", r.code},
            {"source", to_string(r.source)}};
  if (r.difficulty) j["difficulty"] = *r.difficulty;
  if (r.n_test_cases) j["n_test_cases"] = *r.n_test_cases;
  if (r.problem_id) j["problem_id"] = *r.problem_id;
  if (r.solution_index) j["solution_index"] = *r.solution_index;
  if (r.seq) j["seq"] = *r.seq;
  if (r.answer_type) j["answer_type"] = generation::to_json(*r.answer_type);
  if (!r.test_cases.empty()) {
    Json cases = Json::array();
    for (const auto& c : r.test_cases) cases.push_back(validation::to_json(c));
    j["test_cases"] = std::move(cases);
  }
  return j;
}

DatasetRecord record_from_json(const Json& j) {
  DatasetRecord r;
  r.instruction = j.at("instruction").get<std::string>();
  r.code = j.at("code").get<std::string>();
  r.source = record_source_from_string(j.value("source", std::string("semi")));
  auto opt_size = [&](const char* key) -> std::optional<std::size_t> {
    if (!j.contains(key)) return std::nullopt;
    return j[key].get<std::size_t>();
  };
  r.difficulty = opt_size("difficulty");
  r.n_test_cases = opt_size("n_test_cases");
  r.solution_index = opt_size("solution_index");
  r.seq = opt_size("seq");
  if (j.contains("problem_id")) r.problem_id = j["problem_id"].get<std::string>();
  if (j.contains("answer_type")) {
    r.answer_type = generation::answer_type_from_json(j["answer_type"]);
  }
  if (j.contains("test_cases")) {
    for (const auto& c : j["test_cases"]) {
      r.test_cases.push_back(validation::test_case_from_json(c));
    }
  }
  return r;
}

DatasetRecord from_sample(const validation::ValidatedSample& s) {
  DatasetRecord r;
  r.instruction = s.instruction;
  r.code = s.refined_code;
  r.source = RecordSource::kSemi;
  r.difficulty = s.difficulty;
  r.n_test_cases = s.test_cases.size();
  r.problem_id = s.problem_id;
  r.solution_index = s.solution_index;
  r.seq = s.seq;
  r.answer_type = s.answer_type;
  r.test_cases = s.test_cases;
  return r;
}

std::vector<DatasetRecord> from_corpus(const std::vector<corpus::Problem>& problems) {
  std::vector<DatasetRecord> out;
  std::size_t seq = 0;
  for (const auto& p : problems) {
    for (std::size_t i = 0; i < p.solutions.size(); ++i) {
      DatasetRecord r;
      r.instruction = p.description;
      r.code = p.solutions[i].code;
      r.source = RecordSource::kNi;
      r.problem_id = p.problem_id;
      r.solution_index = i;
      r.seq = seq++;
      out.push_back(std::move(r));
    }
  }
  return out;
}

std::vector<DatasetRecord> load_self_instruct(const std::filesystem::path& path) {
  const auto rows = read_jsonl(path);
  std::vector<DatasetRecord> out;
  out.reserve(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    DatasetRecord r;
    r.instruction = rows[i].at("instruction").get<std::string>();
    r.code = rows[i].at("code").get<std::string>();
    r.source = RecordSource::kSi;
    r.seq = rows[i].contains("seq") ? rows[i]["seq"].get<std::size_t>() : i;
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<DatasetRecord> read_records(const std::filesystem::path& path) {
  std::vector<DatasetRecord> out;
  for (const auto& row : read_jsonl(path)) out.push_back(record_from_json(row));
  return out;
}

std::size_t emit_jsonl(const std::vector<DatasetRecord>& records,
                       const std::filesystem::path& path) {
  std::vector<Json> rows;
  rows.reserve(records.size());
  for (const auto& r : records) rows.push_back(to_json(r));
  write_jsonl(path, rows);
  return rows.size();
}

namespace {

std::array<std::pair<const char*, std::size_t>, 5> stages(const FunnelStats& s) {
  return {{{"loaded_codes", s.loaded_codes},
           {"generated_ok", s.generated_ok},
           {"with_test_cases", s.with_test_cases},
           {"refined_passed", s.refined_passed},
           {"after_dedup", s.after_dedup}}};
}

double round1(double value) { return std::round(value * 10.0) / 10.0; }

}  // namespace

Json to_json(const FunnelStats& stats) {
  Json j;
  for (const auto& [name, count] : stages(stats)) j[name] = count;
  j["drop_reasons"] = stats.drop_reasons;
  return j;
}

FunnelStats stats_from_json(const Json& j) {
  FunnelStats s;
  s.loaded_codes = j.at("loaded_codes").get<std::size_t>();
  s.generated_ok = j.at("generated_ok").get<std::size_t>();
  s.with_test_cases = j.at("with_test_cases").get<std::size_t>();
  s.refined_passed = j.at("refined_passed").get<std::size_t>();
  s.after_dedup = j.at("after_dedup").get<std::size_t>();
  if (j.contains("drop_reasons")) {
    s.drop_reasons =
        j["drop_reasons"].get<std::map<std::string, std::map<std::string, std::size_t>>>();
  }
  return s;
}

bool is_monotone(const FunnelStats& stats) {
  const auto st = stages(stats);
  for (std::size_t i = 1; i < st.size(); ++i) {
    if (st[i].second > st[i - 1].second) return false;
  }
  return true;
}

std::vector<std::optional<double>> retention_percentages(const FunnelStats& stats) {
  const auto st = stages(stats);
  std::vector<std::optional<double>> out;
  for (std::size_t i = 1; i < st.size(); ++i) {
    if (st[i - 1].second == 0) {
      out.push_back(std::nullopt);
    } else {
      out.push_back(100.0 * static_cast<double>(st[i].second) /
                    static_cast<double>(st[i - 1].second));
    }
  }
  return out;
}

std::string funnel_report(const FunnelStats& stats, ReportFormat format) {
  if (!is_monotone(stats)) {
    throw Error(ErrorKind::kInvalidStats, "stage counts increase: " + to_json(stats).dump());
  }
  const auto st = stages(stats);
  const auto ratios = retention_percentages(stats);

  if (format == ReportFormat::kJson) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < st.size(); ++i) {
      Json row = {{"stage", st[i].first}, {"count", st[i].second}};
      if (i > 0 && ratios[i - 1]) {
        row["retention_pct"] = round1(*ratios[i - 1]);
      } else {
        row["retention_pct"] = nullptr;
      }
      rows.push_back(std::move(row));
    }
    Json j = {{"stages", std::move(rows)}, {"drop_reasons", stats.drop_reasons}};
    return j.dump(2) + "\n";
  }

  std::string out = "stage              count  retention\n";
  char line[128];
  for (std::size_t i = 0; i < st.size(); ++i) {
    std::string ratio = "-";
    if (i > 0) {
      if (ratios[i - 1]) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.1f%%", *ratios[i - 1]);
        ratio = buf;
      } else {
        ratio = "n/a";
      }
    }
    std::snprintf(line, sizeof(line), "%-16s %7zu  %9s\n", st[i].first, st[i].second,
                  ratio.c_str());
    out += line;
  }
  if (!stats.drop_reasons.empty()) {
    out += "\ndrop reasons\n";
    for (const auto& [stage, reasons] : stats.drop_reasons) {
      for (const auto& [reason, count] : reasons) {
        out += "  " + stage + ": " + reason + " = " + std::to_string(count) + "\n";
      }
    }
  }
  return out;
}

}  // namespace semiforge::dataset
