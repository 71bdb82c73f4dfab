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

#include "semiforge/pipeline.hpp"

#include <spdlog/spdlog.h>

#include <chrono>
#include <map>

#include "semiforge/error.hpp"
#include "semiforge/generation.hpp"
#include "semiforge/worker_pool.hpp"

namespace semiforge::pipeline {
namespace fs = std::filesystem;
using dataset::FunnelStats;

namespace {

constexpr Stage kStages[] = {Stage::kIngest,   Stage::kGenerate, Stage::kConstruct,
                             Stage::kValidate, Stage::kDedup,    Stage::kOrder,
                             Stage::kEmit};

Stage previous(Stage stage) { return static_cast<Stage>(static_cast<int>(stage) - 1); }

std::string stats_file(Stage stage) { return "stats." + to_string(stage) + ".json"; }

void write_stats(const fs::path& work_dir, Stage stage, const FunnelStats& stats) {
  write_file(work_dir / stats_file(stage), dataset::to_json(stats).dump(2) + "\n");
}

// Structured per-record events; funnel counts can be rebuilt from these.
class EventLog {
 public:
  EventLog(fs::path path, Stage stage) : path_(std::move(path)), stage_(to_string(stage)) {}
  void add(std::size_t seq, const std::string& problem_id, std::size_t solution_index,
           const std::string& outcome, const std::string& reason = {}) {
    Json e = {{"stage", stage_},
              {"seq", seq},
              {"problem_id", problem_id},
              {"solution_index", solution_index},
              {"outcome", outcome}};
    if (!reason.empty()) e["reason"] = reason;
    rows_.push_back(std::move(e));
  }
  ~EventLog() {
    try {
      write_jsonl(path_, rows_);
    } catch (const std::exception& e) {
      spdlog::error("cannot write event log {}: {}", path_.string(), e.what());
    }
  }

 private:
  fs::path path_;
  std::string stage_;
  std::vector<Json> rows_;
};

[[noreturn]] void rethrow_in_stage(Stage stage, const std::string& where,
                                   const Error& error) {
  throw StageError(error.kind(), to_string(stage),
                   "stage " + to_string(stage) + (where.empty() ? "" : ", " + where) +
                       ": " + error.what());
}

std::string record_label(const Json& row) {
  return "problem " + row.at("problem_id").get<std::string>() + " solution " +
         std::to_string(row.at("solution_index").get<std::size_t>());
}

exec::Executor make_executor(const PipelineConfig& config) {
  return exec::Executor({config.interpreter, config.scratch_root});
}

generation::PromptTemplate load_prompt(const PipelineConfig& config) {
  if (config.template_path.empty()) {
    auto t = generation::default_template();
    t.input_count = config.input_count;
    return t;
  }
  return generation::load_template(config.template_path, config.input_count);
}

void ingest(const PipelineConfig& config, FunnelStats& stats) {
  if (config.corpora.empty()) throw Error(ErrorKind::kInvalidConfig, "no corpus inputs");
  corpus::LoadOptions options{config.language};
  std::vector<corpus::Problem> problems;
  for (const auto& input : config.corpora) {
    auto loaded = corpus::load_corpus(input.path, input.format, options);
    std::move(loaded.begin(), loaded.end(), std::back_inserter(problems));
  }
  const std::size_t raw_codes = corpus::total_solutions(problems);
  std::size_t special = 0;
  for (const auto& p : problems) special += p.special_judge ? p.solutions.size() : 0;

  auto filtered = corpus::filter_problems(std::move(problems), config.max_tokens,
                                          config.token_mode);
  const std::size_t after_filter = corpus::total_solutions(filtered);
  corpus::IdMap id_map;
  if (config.merge_key == corpus::MergeKey::kExplicitIdMap) {
    id_map = corpus::load_id_map(config.id_map);
  }
  auto merged = corpus::merge_duplicate_problems(std::move(filtered), config.merge_key, id_map);
  auto capped = corpus::cap_solutions(std::move(merged), config.solution_cap);
  stats.loaded_codes = corpus::total_solutions(capped);

  if (special) stats.add_drop("ingest", "special_judge", special);
  if (raw_codes - special > after_filter) {
    stats.add_drop("ingest", "too_many_tokens", raw_codes - special - after_filter);
  }
  if (after_filter > stats.loaded_codes) {
    stats.add_drop("ingest", "solution_cap", after_filter - stats.loaded_codes);
  }
  if (capped.empty()) throw Error(ErrorKind::kEmptyCorpus, "nothing survived preprocessing");
  corpus::write_corpus(config.work_dir / stage_file(Stage::kIngest), capped);
}

void generate(const PipelineConfig& config, generation::CompletionClient& client,
              FunnelStats& stats) {
  const auto problems = corpus::load_corpus(config.work_dir / stage_file(Stage::kIngest),
                                            corpus::Format::kGeneric);
  const auto prompt_template = load_prompt(config);
  struct Item {
    const corpus::Problem* problem;
    std::size_t solution;
  };
  std::vector<Item> items;
  for (const auto& p : problems) {
    for (std::size_t i = 0; i < p.solutions.size(); ++i) items.push_back({&p, i});
  }

  const auto rows = parallel_map(items.size(), config.workers, [&](std::size_t seq) {
    const auto& [problem, index] = items[seq];
    const std::string& code = problem->solutions[index].code;
    Json row = {{"seq", seq},
                {"problem_id", problem->problem_id},
                {"solution_index", index},
                {"original_code", code}};
    try {
      generation::CompletionRequest request;
      request.prompt = generation::build_generation_prompt(code, prompt_template);
      request.temperature = config.temperature;
      request.top_p = config.top_p;
      request.max_tokens = config.completion_max_tokens;
      request.model_id = config.model_id;
      const auto completion = client.complete(request);
      auto parsed = generation::parse_components(completion.text);
      if (auto* bundle = std::get_if<generation::GenerationBundle>(&parsed)) {
        row["status"] = "ok";
        row["bundle"] = generation::to_json(*bundle);
      } else {
        row["status"] = "parse_error";
        row["reason"] = std::get<generation::ParseError>(parsed).message();
        row["raw_completion"] = completion.text;
      }
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::kEmptyCode) rethrow_in_stage(Stage::kGenerate, record_label(row), e);
      row["status"] = "skipped";
      row["reason"] = "EmptyCode";
    }
    return row;
  });

  EventLog log(config.work_dir / ("events." + to_string(Stage::kGenerate) + ".jsonl"),
               Stage::kGenerate);
  stats.generated_ok = 0;
  for (const auto& row : rows) {
    const bool ok = row["status"] == "ok";
    if (ok) {
      ++stats.generated_ok;
    } else {
      stats.add_drop("generate", row["reason"].get<std::string>());
    }
    log.add(row["seq"], row["problem_id"], row["solution_index"], ok ? "ok" : "drop",
            ok ? "" : row["reason"].get<std::string>());
  }
  write_jsonl(config.work_dir / stage_file(Stage::kGenerate), rows);
}

void construct(const PipelineConfig& config, FunnelStats& stats) {
  const auto generated = read_jsonl(config.work_dir / stage_file(Stage::kGenerate));
  std::vector<const Json*> ok;
  for (const auto& row : generated) {
    if (row.at("status") == "ok") ok.push_back(&row);
  }
  const auto executor = make_executor(config);

  struct Outcome {
    Json row;
    std::string drop;  // empty when the record survives
    std::vector<validation::DroppedInput> dropped_inputs;
  };
  auto outcomes = parallel_map(ok.size(), config.workers, [&](std::size_t i) {
    const Json& g = *ok[i];
    const auto bundle = generation::bundle_from_json(g.at("bundle"));
    Outcome out;
    try {
      auto built = validation::build_test_cases(
          executor, g.at("original_code").get<std::string>(), bundle, config.limits);
      out.dropped_inputs = built.dropped;
      if (built.cases.empty()) {
        out.drop = "EmptyTestCases";
      } else {
        Json cases = Json::array();
        for (const auto& c : built.cases) cases.push_back(validation::to_json(c));
        Json dropped = Json::array();
        for (const auto& d : built.dropped) {
          dropped.push_back({{"input_index", d.input_index},
                             {"status", exec::to_string(d.status)}});
        }
        out.row = {{"seq", g.at("seq")},
                   {"problem_id", g.at("problem_id")},
                   {"solution_index", g.at("solution_index")},
                   {"instruction", bundle.instruction},
                   {"refined_code", bundle.refined_code},
                   {"answer_type", generation::to_json(bundle.answer_type)},
                   {"test_cases", std::move(cases)},
                   {"dropped_inputs", std::move(dropped)}};
      }
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::kSandboxSetupFailure) {
        rethrow_in_stage(Stage::kConstruct, record_label(g), e);
      }
      out.drop = "SandboxSetupFailure";
    }
    return out;
  });

  EventLog log(config.work_dir / ("events." + to_string(Stage::kConstruct) + ".jsonl"),
               Stage::kConstruct);
  std::vector<Json> rows;
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    const Json& g = *ok[i];
    for (const auto& d : outcomes[i].dropped_inputs) {
      stats.add_drop("construct_inputs", std::string(exec::to_string(d.status)));
    }
    if (!outcomes[i].drop.empty()) {
      stats.add_drop("construct", outcomes[i].drop);
      log.add(g["seq"], g["problem_id"], g["solution_index"], "drop", outcomes[i].drop);
      continue;
    }
    log.add(g["seq"], g["problem_id"], g["solution_index"], "ok");
    rows.push_back(std::move(outcomes[i].row));
  }
  stats.with_test_cases = rows.size();
  write_jsonl(config.work_dir / stage_file(Stage::kConstruct), rows);
}

void validate(const PipelineConfig& config, FunnelStats& stats) {
  const auto rows = read_jsonl(config.work_dir / stage_file(Stage::kConstruct));
  const auto executor = make_executor(config);
  struct Outcome {
    validation::ValidatedSample sample;
    std::string drop;
  };
  auto outcomes = parallel_map(rows.size(), config.workers, [&](std::size_t i) {
    const Json& r = rows[i];
    Outcome out;
    auto& s = out.sample;
    s.instruction = r.at("instruction").get<std::string>();
    s.refined_code = r.at("refined_code").get<std::string>();
    s.answer_type = generation::answer_type_from_json(r.at("answer_type"));
    for (const auto& c : r.at("test_cases")) {
      s.test_cases.push_back(validation::test_case_from_json(c));
    }
    s.difficulty = s.test_cases.size();
    s.problem_id = r.at("problem_id").get<std::string>();
    s.solution_index = r.at("solution_index").get<std::size_t>();
    s.seq = r.at("seq").get<std::size_t>();
    try {
      const auto verdict = validation::validate_refined_code(executor, s.refined_code,
                                                             s.test_cases, config.limits);
      if (!verdict.pass) out.drop = std::string(validation::to_string(verdict.reason));
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::kSandboxSetupFailure) {
        rethrow_in_stage(Stage::kValidate, record_label(r), e);
      }
      out.drop = "SandboxSetupFailure";
    }
    return out;
  });

  EventLog log(config.work_dir / ("events." + to_string(Stage::kValidate) + ".jsonl"),
               Stage::kValidate);
  std::vector<Json> out;
  for (auto& o : outcomes) {
    const auto& s = o.sample;
    if (!o.drop.empty()) {
      stats.add_drop("validate", o.drop);
      log.add(s.seq, s.problem_id, s.solution_index, "drop", o.drop);
      continue;
    }
    log.add(s.seq, s.problem_id, s.solution_index, "ok");
    out.push_back(validation::to_json(s));
  }
  stats.refined_passed = out.size();
  write_jsonl(config.work_dir / stage_file(Stage::kValidate), out);
}

std::vector<validation::ValidatedSample> read_samples(const fs::path& path) {
  std::vector<validation::ValidatedSample> out;
  for (const auto& row : read_jsonl(path)) out.push_back(validation::sample_from_json(row));
  return out;
}

void dedup(const PipelineConfig& config, FunnelStats& stats) {
  const auto samples = read_samples(config.work_dir / stage_file(Stage::kValidate));
  std::vector<std::string> instructions;
  for (const auto& s : samples) instructions.push_back(s.instruction);
  const auto kept = validation::dedup_indices(instructions, config.dedup);

  EventLog log(config.work_dir / ("events." + to_string(Stage::kDedup) + ".jsonl"),
               Stage::kDedup);
  std::vector<Json> rows;
  std::size_t k = 0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto& s = samples[i];
    if (k < kept.size() && kept[k] == i) {
      ++k;
      log.add(s.seq, s.problem_id, s.solution_index, "ok");
      rows.push_back(validation::to_json(s));
    } else {
      stats.add_drop("dedup", "similar_instruction");
      log.add(s.seq, s.problem_id, s.solution_index, "drop", "similar_instruction");
    }
  }
  stats.after_dedup = rows.size();
  write_jsonl(config.work_dir / stage_file(Stage::kDedup), rows);
}

void order(const PipelineConfig& config) {
  using curriculum::OrderingKind;
  std::vector<dataset::DatasetRecord> records;
  const auto kind = config.order.kind;
  if (kind == OrderingKind::kSiGeneratedOrder || kind == OrderingKind::kCombinedSiThenSemi ||
      kind == OrderingKind::kAllShuffled) {
    if (config.self_instruct.empty()) {
      if (kind == OrderingKind::kSiGeneratedOrder) {
        throw Error(ErrorKind::kInvalidConfig, "order si-generated needs --self-instruct");
      }
    } else {
      records = dataset::load_self_instruct(config.self_instruct);
    }
  }
  if (kind == OrderingKind::kNiShuffled) {
    records = dataset::from_corpus(corpus::load_corpus(
        config.work_dir / stage_file(Stage::kIngest), corpus::Format::kGeneric));
  } else if (kind != OrderingKind::kSiGeneratedOrder) {
    for (const auto& s : read_samples(config.work_dir / stage_file(Stage::kDedup))) {
      records.push_back(dataset::from_sample(s));
    }
  }
  auto ordered = config.scale ? curriculum::select_scale(std::move(records), *config.scale,
                                                         config.order)
                              : curriculum::order_records(std::move(records), config.order);
  dataset::emit_jsonl(ordered, config.work_dir / stage_file(Stage::kOrder));
}

void emit(const PipelineConfig& config, const FunnelStats& stats) {
  const auto records = dataset::read_records(config.work_dir / stage_file(Stage::kOrder));
  const auto count = dataset::emit_jsonl(records, output_path(config));
  write_file(report_text_path(config),
             dataset::funnel_report(stats, dataset::ReportFormat::kText));
  write_file(report_json_path(config),
             dataset::funnel_report(stats, dataset::ReportFormat::kJson));
  spdlog::info("emitted {} records to {}", count, output_path(config).string());
}

}  // namespace

std::string to_string(Stage stage) {
  switch (stage) {
    case Stage::kIngest: return "ingest";
    case Stage::kGenerate: return "generate";
    case Stage::kConstruct: return "construct";
    case Stage::kValidate: return "validate";
    case Stage::kDedup: return "dedup";
    case Stage::kOrder: return "order";
    case Stage::kEmit: return "emit";
  }
  return "ingest";
}

Stage stage_from_string(const std::string& text) {
  for (Stage s : kStages) {
    if (to_string(s) == text) return s;
  }
  throw Error(ErrorKind::kInvalidConfig, "unknown stage " + text);
}

std::string stage_file(Stage stage) {
  switch (stage) {
    case Stage::kIngest: return "corpus.jsonl";
    case Stage::kGenerate: return "generated.jsonl";
    case Stage::kConstruct: return "cases.jsonl";
    case Stage::kValidate: return "validated.jsonl";
    case Stage::kDedup: return "deduped.jsonl";
    case Stage::kOrder: return "ordered.jsonl";
    case Stage::kEmit: return "dataset.jsonl";
  }
  return {};
}

fs::path output_path(const PipelineConfig& c) {
  return c.output.empty() ? c.work_dir / "dataset.jsonl" : c.output;
}
fs::path report_text_path(const PipelineConfig& c) {
  return c.report_text.empty() ? c.work_dir / "report.txt" : c.report_text;
}
fs::path report_json_path(const PipelineConfig& c) {
  return c.report_json.empty() ? c.work_dir / "report.json" : c.report_json;
}

std::string template_version(const PipelineConfig& config) {
  return load_prompt(config).version;
}

Json to_json(const PipelineConfig& c) {
  Json corpora = Json::array();
  for (const auto& in : c.corpora) {
    const char* format = in.format == corpus::Format::kApps          ? "apps"
                         : in.format == corpus::Format::kCodeContest ? "codecontest"
                                                                     : "generic";
    corpora.push_back({{"path", in.path.string()}, {"format", format}});
  }
  return {
      {"corpora", std::move(corpora)},
      {"language", c.language},
      {"max_tokens", c.max_tokens},
      {"token_mode", c.token_mode == corpus::TokenMode::kWhitespace ? "whitespace" : "bytes"},
      {"merge_key",
       c.merge_key == corpus::MergeKey::kNormalizedDescription ? "description" : "id-map"},
      {"id_map", c.id_map.string()},
      {"solution_cap", c.solution_cap},
      {"template", c.template_path.string()},
      {"input_count", c.input_count},
      {"client", c.client_mode == ClientMode::kReplay ? "replay" : "live"},
      {"replay_store", c.replay_store.string()},
      {"endpoint", c.endpoint},
      {"model", c.model_id},
      {"temperature", c.temperature},
      {"top_p", c.top_p},
      {"completion_max_tokens", c.completion_max_tokens},
      {"retry_attempts", c.retry_attempts},
      {"max_in_flight", c.max_in_flight},
      {"interpreter", c.interpreter},
      {"timeout_ms", c.limits.wall_timeout.count()},
      {"memory_cap", c.limits.memory_cap},
      {"output_cap", c.limits.output_cap},
      {"workers", c.workers},
      {"dedup_threshold", c.dedup.threshold},
      {"dedup_against",
       c.dedup.scope == validation::DedupScope::kRetained ? "retained" : "all"},
      {"order", curriculum::to_string(c.order.kind)},
      {"seed", c.order.seed},
      {"scale", c.scale ? Json(*c.scale) : Json(nullptr)},
      {"self_instruct", c.self_instruct.string()},
      {"work_dir", c.work_dir.string()},
      {"output", output_path(c).string()},
  };
}

std::unique_ptr<generation::CompletionClient> make_client(const PipelineConfig& config) {
  if (config.client_mode == ClientMode::kReplay) {
    return std::make_unique<generation::ReplayClient>(config.replay_store);
  }
  generation::LiveClientOptions options;
  options.base_url = config.endpoint;
  options.retry.max_attempts = config.retry_attempts;
  options.max_in_flight = config.max_in_flight;
  return std::make_unique<generation::LiveClient>(std::move(options));
}

FunnelStats load_stats(const fs::path& work_dir, Stage stage) {
  return dataset::stats_from_json(Json::parse(read_file(work_dir / stats_file(stage))));
}

FunnelStats run_stages(const PipelineConfig& config, Stage first, Stage last,
                       generation::CompletionClient* client) {
  fs::create_directories(config.work_dir);
  FunnelStats stats;
  if (first != kFirstStage) {
    try {
      stats = load_stats(config.work_dir, previous(first));
    } catch (const Error& e) {
      throw Error(ErrorKind::kStageFailure, "cannot resume from " + to_string(first) +
                                                ": missing output of stage " +
                                                to_string(previous(first)) + " (" +
                                                e.what() + ")");
    }
  }

  std::unique_ptr<generation::CompletionClient> owned;
  Json timings = Json::object();
  for (Stage stage : kStages) {
    if (stage < first || stage > last) continue;
    const auto start = std::chrono::steady_clock::now();
    try {
      switch (stage) {
        case Stage::kIngest: ingest(config, stats); break;
        case Stage::kGenerate:
          if (!client) {
            owned = make_client(config);
            client = owned.get();
          }
          generate(config, *client, stats);
          break;
        case Stage::kConstruct: construct(config, stats); break;
        case Stage::kValidate: validate(config, stats); break;
        case Stage::kDedup: dedup(config, stats); break;
        case Stage::kOrder: order(config); break;
        case Stage::kEmit: emit(config, stats); break;
      }
    } catch (const StageError&) {
      throw;
    } catch (const Error& e) {
      rethrow_in_stage(stage, {}, e);
    } catch (const std::exception& e) {
      throw StageError(ErrorKind::kStageFailure, to_string(stage),
                       "stage " + to_string(stage) + ": " + e.what());
    }
    write_stats(config.work_dir, stage, stats);
    timings[to_string(stage)] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    spdlog::info("stage {} done", to_string(stage));
  }

  Json manifest = {{"config", to_json(config)},
                   {"seed", config.order.seed},
                   {"template_version", template_version(config)},
                   {"stages_run", {to_string(first), to_string(last)}},
                   {"timings_seconds", std::move(timings)},
                   {"funnel", dataset::to_json(stats)}};
  write_file(config.work_dir / "manifest.json", manifest.dump(2) + "\n");
  return stats;
}

}  // namespace semiforge::pipeline
