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

// semiforge command-line driver.
#include <spdlog/spdlog.h>

#include <cmath>
#include <iostream>
#include <map>

#include "CLI11.hpp"
#include "semiforge/error.hpp"
#include "semiforge/generation.hpp"
#include "semiforge/llm_client.hpp"
#include "semiforge/metrics.hpp"
#include "semiforge/pipeline.hpp"

namespace {

using namespace semiforge;
namespace fs = std::filesystem;

struct CliState {
  pipeline::PipelineConfig config;
  std::vector<std::string> corpora;
  std::string token_mode = "whitespace";
  std::string merge_key = "description";
  std::string client = "replay";
  double timeout_seconds = 5.0;
  std::size_t memory_mb = 256;
  std::size_t output_cap_kb = 1024;
  std::string dedup_against = "retained";
  std::string order = "semi-ranked";
  long long scale = -1;
  std::string log_level = "info";
};

pipeline::PipelineConfig finalize(CliState& s) {
  auto& c = s.config;
  c.corpora.clear();
  for (const auto& spec : s.corpora) {
    const auto colon = spec.find(':');
    if (colon == std::string::npos) {
      c.corpora.push_back({spec, corpus::Format::kApps});
    } else {
      c.corpora.push_back(
          {spec.substr(colon + 1), corpus::format_from_string(spec.substr(0, colon))});
    }
  }
  c.token_mode = corpus::token_mode_from_string(s.token_mode);
  c.merge_key = s.merge_key == "id-map" ? corpus::MergeKey::kExplicitIdMap
                                        : corpus::MergeKey::kNormalizedDescription;
  c.client_mode = s.client == "live" ? pipeline::ClientMode::kLive : pipeline::ClientMode::kReplay;
  c.limits.wall_timeout =
      std::chrono::milliseconds(static_cast<long long>(std::llround(s.timeout_seconds * 1000)));
  c.limits.memory_cap = s.memory_mb << 20;
  c.limits.output_cap = s.output_cap_kb << 10;
  c.dedup.scope = s.dedup_against == "all" ? validation::DedupScope::kAll
                                           : validation::DedupScope::kRetained;
  c.order.kind = curriculum::ordering_kind_from_string(s.order);
  c.scale = s.scale >= 0 ? std::optional<std::size_t>(static_cast<std::size_t>(s.scale))
                         : std::nullopt;
  spdlog::set_level(spdlog::level::from_str(s.log_level));
  return c;
}

void add_pipeline_options(CLI::App& app, CliState& s) {
  auto& c = s.config;
  app.add_option("--corpus", s.corpora,
                 "Corpus input as FORMAT:PATH (apps|codecontest|generic); repeatable");
  app.add_option("--language", c.language, "Corpus language tag")->capture_default_str();
  app.add_option("--max-tokens", c.max_tokens, "Drop solutions longer than this")
      ->capture_default_str();
  app.add_option("--token-mode", s.token_mode, "whitespace|bytes")
      ->check(CLI::IsMember({"whitespace", "bytes"}))
      ->capture_default_str();
  app.add_option("--merge-key", s.merge_key, "description|id-map")
      ->check(CLI::IsMember({"description", "id-map"}))
      ->capture_default_str();
  app.add_option("--id-map", c.id_map, "JSON object problem_id -> group key");
  app.add_option("--cap", c.solution_cap, "Max solutions per problem")->capture_default_str();

  app.add_option("--template", c.template_path, "Prompt template file (default: bundled)");
  app.add_option("--input-count", c.input_count, "Test inputs requested per code")
      ->capture_default_str();
  app.add_option("--client", s.client, "replay|live")
      ->check(CLI::IsMember({"replay", "live"}))
      ->capture_default_str();
  app.add_option("--replay-store", c.replay_store, "Replay fixture directory")
      ->capture_default_str();
  app.add_option("--endpoint", c.endpoint, "Chat-completion base URL (live client)");
  app.add_option("--model", c.model_id, "Model id (live client)")->capture_default_str();
  app.add_option("--temperature", c.temperature)->capture_default_str();
  app.add_option("--top-p", c.top_p)->capture_default_str();
  app.add_option("--completion-max-tokens", c.completion_max_tokens)->capture_default_str();
  app.add_option("--retries", c.retry_attempts, "Attempts per completion request")
      ->capture_default_str();
  app.add_option("--max-in-flight", c.max_in_flight, "Concurrent completion requests")
      ->capture_default_str();

  app.add_option("--interpreter", c.interpreter, "Python interpreter")->capture_default_str();
  app.add_option("--scratch-dir", c.scratch_root, "Parent dir for sandbox temp dirs");
  app.add_option("--timeout", s.timeout_seconds, "Wall timeout per execution, seconds")
      ->capture_default_str();
  app.add_option("--memory-mb", s.memory_mb, "Address-space cap per execution")
      ->capture_default_str();
  app.add_option("--output-cap-kb", s.output_cap_kb, "Stdout cap per execution")
      ->capture_default_str();
  app.add_option("--workers", c.workers, "Worker pool width")->capture_default_str();

  app.add_option("--dedup-threshold", c.dedup.threshold, "ROUGE-L drop threshold")
      ->capture_default_str();
  app.add_option("--dedup-against", s.dedup_against, "retained|all")
      ->check(CLI::IsMember({"retained", "all"}))
      ->capture_default_str();

  app.add_option("--order", s.order,
                 "semi-ranked|semi-unranked|ni-shuffled|si-generated|si-then-semi|all-shuffled")
      ->capture_default_str();
  app.add_option("--seed", c.order.seed, "Seed for randomized orders")->capture_default_str();
  app.add_option("--scale", s.scale, "Keep the first N ordered records");
  app.add_option("--self-instruct", c.self_instruct, "Self-instruct JSONL for SI orders");

  app.add_option("--work-dir", c.work_dir, "Stage files directory")->capture_default_str();
  app.add_option("--output", c.output, "Dataset path (default <work-dir>/dataset.jsonl)");
  app.add_option("--report-text", c.report_text);
  app.add_option("--report-json", c.report_json);
  app.add_option("--log-level", s.log_level, "trace|debug|info|warn|error")
      ->capture_default_str();
}

void print_stats(const dataset::FunnelStats& stats) {
  std::cout << dataset::funnel_report(stats, dataset::ReportFormat::kText);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"semiforge: instruction-code dataset curation from solved problems"};
  app.set_config("--config", "", "TOML/INI config file; flags override it");
  app.require_subcommand(1);
  CliState state;
  add_pipeline_options(app, state);

  using pipeline::Stage;
  struct StageRange {
    Stage first, last;
  };
  const std::map<std::string, StageRange> stage_commands = {
      {"ingest", {Stage::kIngest, Stage::kIngest}},
      {"generate", {Stage::kGenerate, Stage::kGenerate}},
      {"validate", {Stage::kConstruct, Stage::kDedup}},
      {"rank", {Stage::kOrder, Stage::kOrder}},
      {"emit", {Stage::kEmit, Stage::kEmit}},
  };
  const std::map<std::string, std::string> descriptions = {
      {"ingest", "Load and preprocess corpora into corpus.jsonl"},
      {"generate", "Generate instruction/refined code/inputs per original code"},
      {"validate", "Construct test cases, validate refined code, dedup instructions"},
      {"rank", "Order records by the chosen strategy"},
      {"emit", "Write the dataset and funnel reports"},
  };
  std::map<std::string, CLI::App*> stage_apps;
  for (const auto& [name, range] : stage_commands) {
    stage_apps[name] = app.add_subcommand(name, descriptions.at(name))->fallthrough();
  }

  std::string resume_from = "ingest";
  auto* run = app.add_subcommand("run", "Run the full pipeline")->fallthrough();
  run->add_option("--resume-from", resume_from,
                  "ingest|generate|construct|validate|dedup|order|emit")
      ->capture_default_str();

  std::string report_format = "text";
  fs::path stats_path;
  auto* report = app.add_subcommand("report", "Render the funnel report")->fallthrough();
  report->add_option("--format", report_format)
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
  report->add_option("--stats", stats_path, "Stats JSON (default: last emit stats)");

  fs::path problems_path;
  fs::path candidates_path;
  fs::path eval_out;
  std::vector<int> ks = {1};
  auto* eval = app.add_subcommand("eval", "Score candidate programs with pass@k")->fallthrough();
  eval->add_option("--problems", problems_path, "Problems JSONL")->required();
  eval->add_option("--candidates", candidates_path, "Candidates JSONL")->required();
  eval->add_option("--k", ks, "k values")->capture_default_str();
  eval->add_option("--eval-output", eval_out, "Write the report JSON here");

  fs::path pairs_path;
  auto* fixtures = app.add_subcommand(
      "fixtures", "Record replay fixtures from JSONL {original_code, completion} pairs");
  fixtures->fallthrough();
  fixtures->add_option("--pairs", pairs_path)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    const auto config = finalize(state);
    for (const auto& [name, range] : stage_commands) {
      if (stage_apps[name]->parsed()) {
        print_stats(pipeline::run_stages(config, range.first, range.last));
        return 0;
      }
    }
    if (run->parsed()) {
      print_stats(pipeline::run_pipeline(config, pipeline::stage_from_string(resume_from)));
      return 0;
    }
    if (report->parsed()) {
      const auto stats =
          stats_path.empty()
              ? pipeline::load_stats(config.work_dir, Stage::kEmit)
              : dataset::stats_from_json(Json::parse(read_file(stats_path)));
      std::cout << dataset::funnel_report(stats, report_format == "json"
                                                     ? dataset::ReportFormat::kJson
                                                     : dataset::ReportFormat::kText);
      return 0;
    }
    if (eval->parsed()) {
      const exec::Executor executor({config.interpreter, config.scratch_root});
      const auto problems = metrics::load_eval_problems(problems_path, candidates_path);
      const auto result =
          metrics::evaluate_candidates(executor, problems, config.limits, ks, config.workers);
      const std::string text = metrics::to_json(result).dump(2) + "\n";
      if (!eval_out.empty()) write_file(eval_out, text);
      std::cout << text;
      return 0;
    }
    if (fixtures->parsed()) {
      auto prompt_template = config.template_path.empty()
                                 ? generation::default_template()
                                 : generation::load_template(config.template_path);
      prompt_template.input_count = config.input_count;
      std::size_t n = 0;
      for (const auto& row : read_jsonl(pairs_path)) {
        const auto prompt = generation::build_generation_prompt(
            row.at("original_code").get<std::string>(), prompt_template);
        generation::write_replay_fixture(config.replay_store, prompt,
                                         row.at("completion").get<std::string>());
        ++n;
      }
      std::cout << "wrote " << n << " fixtures to " << config.replay_store.string() << "\n";
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "semiforge: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
