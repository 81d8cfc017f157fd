// Copyright 2026 The InfoSync Authors.
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

#include "cli.h"

#include <CLI11.hpp>
#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <memory>
#include <mutex>
#include <nlohmann/json.hpp>
#include <set>
#include <sstream>
#include <thread>

#include "infosync/alignment.h"
#include "infosync/dataset.h"
#include "infosync/error_analysis.h"
#include "infosync/errors.h"
#include "infosync/http_backend.h"
#include "infosync/llm_gateway.h"
#include "infosync/mediawiki.h"
#include "infosync/metrics.h"
#include "infosync/pipeline.h"
#include "infosync/stub_backend.h"
#include "infosync/text.h"

namespace infosync::cli {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

std::string RunConfig::pipeline_model() const { return models.empty() ? "" : models.front(); }

namespace {

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> out;
  for (auto& part : text::split(value, ",")) {
    std::string t = text::trim(part);
    if (!t.empty()) out.push_back(t);
  }
  return out;
}

int parse_int(const std::string& key, const std::string& value) {
  try {
    size_t used = 0;
    int v = std::stoi(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ConfigError(key + " must be an integer, got '" + value + "'");
  }
}

void set_key(RunConfig& c, std::string key, const std::string& value) {
  std::replace(key.begin(), key.end(), '-', '_');
  if (key == "strategy") c.strategy = value;
  else if (key == "pivot") c.pivot = value;
  else if (key == "backend") c.backend = value;
  else if (key == "models") c.models = split_list(value);
  else if (key == "align_models") c.align_models = split_list(value);
  else if (key == "evaluators") c.evaluators = split_list(value);
  else if (key == "rounds") c.rounds = parse_int(key, value);
  else if (key == "jobs") c.jobs = parse_int(key, value);
  else if (key == "max_in_flight") c.max_in_flight = parse_int(key, value);
  else if (key == "corpus") c.corpus = value;
  else if (key == "transcripts") c.transcripts = value;
  else if (key == "record") c.record = value;
  else if (key == "stub_rules") c.stub_rules = value;
  else if (key == "out") c.out = value;
  else if (key == "endpoint") c.endpoint = value;
  else if (key == "api_key") c.api_key = value;
  else throw ConfigError("unknown configuration key '" + key + "'");
}

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw MissingFile("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const fs::path& path, const std::string& content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path.string());
  out << content;
}

std::shared_ptr<CompletionBackend> make_backend(const RunConfig& c) {
  if (c.backend == "stub") {
    return std::make_shared<StubBackend>(c.stub_rules.empty() ? StubRuleSet{}
                                                              : StubRuleSet::load(c.stub_rules));
  }
  if (c.backend == "replay") return std::make_shared<ReplayBackend>(fs::path(c.transcripts));
  HttpBackendOptions options;
  options.endpoint = c.endpoint;
  options.api_key = c.api_key;
  options.default_model = c.pipeline_model();
  return std::make_shared<HttpBackend>(options);
}

std::unique_ptr<Gateway> make_gateway(const RunConfig& c) {
  GatewayOptions options;
  options.max_in_flight = c.max_in_flight;
  if (!c.record.empty()) options.record_to = fs::path(c.record);
  return std::make_unique<Gateway>(make_backend(c), options);
}

// Runs fn(i) for i in [0, n) on up to `jobs` threads.
void parallel_for(size_t n, int jobs, const std::function<void(size_t)>& fn) {
  size_t workers = std::min<size_t>(n, static_cast<size_t>(std::max(jobs, 1)));
  if (workers <= 1) {
    for (size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<size_t> next{0};
  std::vector<std::thread> threads;
  for (size_t w = 0; w < workers; ++w) {
    threads.emplace_back([&] {
      for (size_t i = next++; i < n; i = next++) fn(i);
    });
  }
  for (auto& t : threads) t.join();
}

struct InstanceRef {
  fs::path dir;
  std::string id;  // path relative to the corpus root, '/'-separated
};

std::vector<InstanceRef> corpus_instances(const RunConfig& c,
                                           const std::vector<std::string>& selected) {
  if (c.corpus.empty()) throw ConfigError("no corpus directory given (--corpus)");
  fs::path root(c.corpus);
  std::vector<InstanceRef> out;
  for (const auto& dir : find_instances(root)) {
    std::string id = fs::relative(dir, root).generic_string();
    if (!selected.empty() && std::find(selected.begin(), selected.end(), id) == selected.end()) {
      continue;
    }
    out.push_back({dir, id});
  }
  if (out.empty()) throw ConfigError("no instances selected under " + root.string());
  return out;
}

EvalOptions eval_options(const RunConfig& c) {
  EvalOptions options;
  options.evaluator_models = c.evaluators;
  options.alignment_models = c.align_models;
  options.rounds = c.rounds;
  return options;
}

ordered_json as_json(const std::string& text) { return ordered_json::parse(text); }

std::string output_table_name(const InfoTable& table) {
  return "output." + table.language.code() + ".table";
}

struct Outcome {
  bool ok = false;
  std::string error;
  std::optional<UpdateReport> report;
};

// Writes report.txt and report.json for a list of per-instance outcomes.
void write_reports(const fs::path& out, const std::string& command, const std::string& strategy,
                   const std::vector<InstanceRef>& instances, const std::vector<Outcome>& outcomes,
                   std::ostream& stdout_stream) {
  std::vector<UpdateReport> reports;
  ordered_json j;
  j["command"] = command;
  if (!strategy.empty()) j["strategy"] = strategy;
  ordered_json per = ordered_json::array();
  ordered_json failures = ordered_json::array();
  for (size_t i = 0; i < instances.size(); ++i) {
    if (outcomes[i].report) {
      reports.push_back(*outcomes[i].report);
      per.push_back({{"id", instances[i].id}, {"report", as_json(report_to_json(*outcomes[i].report))}});
    }
    if (!outcomes[i].ok) failures.push_back({{"id", instances[i].id}, {"error", outcomes[i].error}});
  }
  AggregateReport agg = aggregate_reports(reports);
  j["aggregate"] = as_json(aggregate_to_json(agg));
  j["instances"] = per;
  j["failures"] = failures;
  write_text(out / "report.json", j.dump(2) + "\n");
  std::string table = aggregate_to_text(agg);
  write_text(out / "report.txt", table);
  stdout_stream << table;
}

int finish(const std::vector<Outcome>& outcomes, std::ostream& err) {
  int failed = 0;
  for (const auto& o : outcomes) failed += o.ok ? 0 : 1;
  if (failed) {
    err << failed << " of " << outcomes.size() << " instance(s) failed\n";
    return kExitPartial;
  }
  return kExitOk;
}

int cmd_sync(const RunConfig& c, const std::vector<std::string>& selected, std::ostream& out,
             std::ostream& err) {
  auto instances = corpus_instances(c, selected);
  auto gateway = make_gateway(c);
  Strategy strategy = *parse_strategy(c.strategy);
  PipelineOptions popts{LangCode(c.pivot), c.pipeline_model(), kPipelineTemperature};
  fs::path root(c.out);
  write_text(root / "config.snapshot", config_snapshot(c, "sync"));

  std::vector<Outcome> outcomes(instances.size());
  std::mutex err_mu;
  parallel_for(instances.size(), c.jobs, [&](size_t i) {
    const auto& ref = instances[i];
    fs::path dir = root / "instances" / ref.id;
    Outcome& o = outcomes[i];
    try {
      SyncInstance inst = load_instance(ref.dir);
      Pipeline pipeline(*gateway, popts);
      RunResult result{inst.source(), {}};
      try {
        result = pipeline.run(redact_gold(inst), strategy);
      } catch (const StageFailed& e) {
        write_text(dir / "traces.json", traces_to_json(e.partial_traces()));
        throw;
      }
      write_text(dir / "traces.json", traces_to_json(result.traces));
      write_text(dir / output_table_name(result.output), serialize_table(result.output.rows) + "\n");
      InstanceEvaluation ev =
          evaluate_instance(inst.source(), result.output, inst.gold(), *gateway, eval_options(c));
      write_text(dir / "report.json", report_to_json(ev.report) + "\n");
      o.report = ev.report;
      o.ok = ev.report.failed_rows == 0;
      if (!o.ok) o.error = std::to_string(ev.report.failed_rows) + " row comparison(s) failed";
    } catch (const Error& e) {
      o.error = e.what();
      std::lock_guard lock(err_mu);
      err << ref.id << ": " << e.what() << "\n";
    }
  });
  write_reports(root, "sync", c.strategy, instances, outcomes, out);
  return finish(outcomes, err);
}

int cmd_eval(const RunConfig& c, const std::vector<std::string>& selected,
             const std::string& outputs, std::ostream& out, std::ostream& err) {
  if (outputs.empty()) throw ConfigError("eval needs --outputs (a sync output directory)");
  auto instances = corpus_instances(c, selected);
  auto gateway = make_gateway(c);
  fs::path root(c.out);
  write_text(root / "config.snapshot", config_snapshot(c, "eval"));
  std::vector<Outcome> outcomes(instances.size());
  std::mutex err_mu;
  parallel_for(instances.size(), c.jobs, [&](size_t i) {
    const auto& ref = instances[i];
    Outcome& o = outcomes[i];
    try {
      SyncInstance inst = load_instance(ref.dir);
      fs::path table = fs::path(outputs) / "instances" / ref.id / output_table_name(inst.source());
      InfoTable output = with_rows(inst.source(), read_table_file(table), inst.source().language);
      output.revision_tag.reset();
      InstanceEvaluation ev =
          evaluate_instance(inst.source(), output, inst.gold(), *gateway, eval_options(c));
      write_text(root / "instances" / ref.id / "report.json", report_to_json(ev.report) + "\n");
      o.report = ev.report;
      o.ok = ev.report.failed_rows == 0;
      if (!o.ok) o.error = std::to_string(ev.report.failed_rows) + " row comparison(s) failed";
    } catch (const Error& e) {
      o.error = e.what();
      std::lock_guard lock(err_mu);
      err << ref.id << ": " << e.what() << "\n";
    }
  });
  write_reports(root, "eval", "", instances, outcomes, out);
  return finish(outcomes, err);
}

int cmd_align(const RunConfig& c, const std::vector<std::string>& selected,
              const std::string& against, std::ostream& out, std::ostream& err) {
  auto instances = corpus_instances(c, selected);
  auto gateway = make_gateway(c);
  fs::path root(c.out);
  write_text(root / "config.snapshot", config_snapshot(c, "align"));
  PipelineOptions popts{LangCode(c.pivot), c.pipeline_model(), kPipelineTemperature};

  struct Result {
    bool ok = false;
    std::optional<AlignmentScore> score;
    size_t groups = 0;
  };
  std::vector<Result> results(instances.size());
  std::mutex err_mu;
  parallel_for(instances.size(), c.jobs, [&](size_t i) {
    const auto& ref = instances[i];
    try {
      SyncInstance inst = load_instance(ref.dir);
      InfoTable other = against == "gold" ? inst.gold() : inst.reference();
      if (other.language != inst.source().language) {
        Pipeline pipeline(*gateway, popts);
        other = pipeline.translate_table(other, inst.source().language, nullptr);
      }
      std::vector<std::string> diagnostics;
      Alignment a = multi_vote_align(inst.source(), other, *gateway, c.align_models, c.rounds, {},
                                     &diagnostics);
      fs::path dir = root / "instances" / ref.id;
      write_text(dir / "alignment.json", alignment_to_json(a) + "\n");
      results[i].groups = a.groups().size();
      fs::path gold_file = ref.dir / ("alignment." + against + ".json");
      if (fs::exists(gold_file)) {
        results[i].score = score_alignment(a, alignment_from_json(read_text(gold_file)));
      }
      results[i].ok = true;
    } catch (const Error& e) {
      std::lock_guard lock(err_mu);
      err << ref.id << ": " << e.what() << "\n";
    }
  });

  std::string summary;
  char buf[256];
  double p = 0, r = 0, f = 0;
  size_t scored = 0, failed = 0;
  for (size_t i = 0; i < instances.size(); ++i) {
    if (!results[i].ok) {
      ++failed;
      std::snprintf(buf, sizeof(buf), "%-40s failed\n", instances[i].id.c_str());
    } else if (results[i].score) {
      const auto& s = *results[i].score;
      p += s.precision, r += s.recall, f += s.f1, ++scored;
      std::snprintf(buf, sizeof(buf), "%-40s groups=%zu P=%.4f R=%.4f F1=%.4f\n",
                    instances[i].id.c_str(), results[i].groups, s.precision, s.recall, s.f1);
    } else {
      std::snprintf(buf, sizeof(buf), "%-40s groups=%zu\n", instances[i].id.c_str(),
                    results[i].groups);
    }
    summary += buf;
  }
  if (scored) {
    std::snprintf(buf, sizeof(buf), "%-40s P=%.4f R=%.4f F1=%.4f\n", "mean", p / scored,
                  r / scored, f / scored);
    summary += buf;
  }
  write_text(root / "alignment.txt", summary);
  out << summary;
  return failed ? kExitPartial : kExitOk;
}

int cmd_errors(const RunConfig& c, const std::vector<std::string>& selected, std::ostream& out,
               std::ostream& err) {
  if (c.strategy != "hierarchical") {
    throw ConfigError("the error ledger needs --strategy hierarchical");
  }
  auto instances = corpus_instances(c, selected);
  auto gateway = make_gateway(c);
  fs::path root(c.out);
  write_text(root / "config.snapshot", config_snapshot(c, "errors"));
  PipelineOptions popts{LangCode(c.pivot), c.pipeline_model(), kPipelineTemperature};
  GatewayScorerOptions sopts;
  sopts.evaluator_model = c.evaluators.empty() ? "stub-eval" : c.evaluators.front();
  sopts.translation_model = c.pipeline_model();

  std::vector<std::optional<StageErrorLedger>> ledgers(instances.size());
  std::mutex err_mu;
  parallel_for(instances.size(), c.jobs, [&](size_t i) {
    const auto& ref = instances[i];
    try {
      SyncInstance inst = load_instance(ref.dir);
      SyncTask task = redact_gold(inst);
      Pipeline pipeline(*gateway, popts);
      RunResult result = pipeline.run(task, Strategy::kHierarchical);
      GatewayErrorScorer scorer(inst.gold(), *gateway, sopts);
      StageErrorLedger ledger = stagewise_ledger(task, result.traces, scorer);
      write_text(root / "instances" / ref.id / "ledger.json", ledger_to_json(ledger) + "\n");
      ledgers[i] = std::move(ledger);
    } catch (const Error& e) {
      std::lock_guard lock(err_mu);
      err << ref.id << ": " << e.what() << "\n";
    }
  });
  std::vector<StageErrorLedger> done;
  for (auto& l : ledgers) {
    if (l) done.push_back(*l);
  }
  if (done.empty()) {
    err << "no instance produced a ledger\n";
    return kExitPartial;
  }
  StageErrorLedger total = sum_ledgers(done);
  write_text(root / "ledger.json", ledger_to_json(total) + "\n");
  std::string table = ledger_to_text(total);
  write_text(root / "ledger.txt", table);
  out << table;
  return done.size() == instances.size() ? kExitOk : kExitPartial;
}

int cmd_stats(const RunConfig& c, bool published, std::ostream& out) {
  std::string text;
  if (!c.corpus.empty()) text += corpus_stats_to_text(corpus_stats(c.corpus));
  if (published) {
    if (!text.empty()) text += "\n";
    text += "published benchmark\n" + corpus_stats_to_text(published_corpus_stats());
  }
  if (text.empty()) throw ConfigError("stats needs --corpus or --published");
  if (!c.out.empty()) write_text(fs::path(c.out) / "stats.txt", text);
  out << text;
  return kExitOk;
}

int cmd_fetch(const RunConfig& c, const std::string& title, const std::string& lang,
              const std::string& as_of, const std::string& category, const std::string& table_out,
              std::ostream& out, std::ostream& err) {
  RevisionFetcher fetcher;
  try {
    InfoTable table = fetcher.fetch_revision(title, LangCode(lang), as_of, Category(category));
    std::string serialized = serialize_table(table.rows) + "\n";
    if (!table_out.empty()) {
      write_text(table_out, serialized);
    } else if (!c.out.empty()) {
      write_text(fs::path(c.out) / (entity_slug(title) + "." + lang + ".table"), serialized);
    } else {
      out << serialized;
    }
    err << table.revision_tag.value_or("") << ": " << table.rows.size() << " rows\n";
    return kExitOk;
  } catch (const DatasetError& e) {
    err << "fetch failed: " << e.what() << "\n";
    return kExitPartial;
  }
}

int cmd_transcripts_info(const std::string& file, std::ostream& out) {
  auto records = read_transcript(file);
  std::set<std::string> digests;
  std::map<std::string, size_t> by_tag, by_model;
  for (const auto& r : records) {
    digests.insert(r.digest);
    ++by_tag[r.request.tag.empty() ? "(untagged)" : r.request.tag];
    ++by_model[r.request.model_id.empty() ? "(default)" : r.request.model_id];
  }
  out << "records " << records.size() << "\n";
  out << "digests " << digests.size() << "\n";
  for (const auto& [tag, n] : by_tag) out << "tag " << tag << " " << n << "\n";
  for (const auto& [model, n] : by_model) out << "model " << model << " " << n << "\n";
  return kExitOk;
}

int cmd_transcripts_merge(const std::vector<std::string>& inputs, const std::string& output,
                          std::ostream& out) {
  if (output.empty()) throw ConfigError("transcripts merge needs --output");
  std::map<std::string, TranscriptRecord> merged;
  for (const auto& in : inputs) {
    for (auto& r : read_transcript(in)) merged[r.digest] = std::move(r);
  }
  std::string content;
  for (const auto& [digest, r] : merged) content += to_json_line(r) + "\n";
  write_text(output, content);
  out << "wrote " << merged.size() << " records to " << output << "\n";
  return kExitOk;
}

}  // namespace

void apply_config_text(RunConfig& config, const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string t = text::trim(line);
    if (t.empty() || t[0] == '#') continue;
    size_t eq = t.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(lineno) + " is not key = value");
    }
    set_key(config, text::trim(t.substr(0, eq)), text::trim(t.substr(eq + 1)));
  }
}

void apply_env(RunConfig& config, const std::function<const char*(const char*)>& getenv) {
  auto get = [&](const char* name) -> std::optional<std::string> {
    const char* v = getenv(name);
    if (!v || !*v) return std::nullopt;
    return std::string(v);
  };
  if (auto v = get("SYNC_LLM_ENDPOINT")) config.endpoint = *v;
  if (auto v = get("SYNC_LLM_API_KEY")) config.api_key = *v;
  if (auto v = get("SYNC_LLM_MODEL")) config.models = split_list(*v);
  if (auto v = get("SYNC_LLM_BACKEND")) config.backend = *v;
  if (auto v = get("SYNC_LLM_TRANSCRIPTS")) config.transcripts = *v;
}

void validate_config(const RunConfig& c) {
  if (!parse_strategy(c.strategy)) throw ConfigError("unknown strategy '" + c.strategy + "'");
  if (c.backend != "http" && c.backend != "stub" && c.backend != "replay") {
    throw ConfigError("backend must be http, stub or replay, got '" + c.backend + "'");
  }
  if (c.rounds < 1) throw ConfigError("vote rounds must be at least 1");
  if (c.jobs < 1) throw ConfigError("jobs must be at least 1");
  if (c.max_in_flight < 1) throw ConfigError("max_in_flight must be at least 1");
  if (c.evaluators.empty()) throw ConfigError("at least one evaluator model is needed");
  if (c.backend == "replay") {
    if (c.transcripts.empty()) throw ConfigError("replay backend needs --transcripts");
    if (!fs::is_regular_file(c.transcripts)) {
      throw ConfigError("transcript file not found: " + c.transcripts);
    }
  }
  if (c.backend == "http" && c.endpoint.empty()) {
    throw ConfigError("http backend needs an endpoint (SYNC_LLM_ENDPOINT)");
  }
  if (c.backend == "stub" && !c.stub_rules.empty() && !fs::is_directory(c.stub_rules)) {
    throw ConfigError("stub rule directory not found: " + c.stub_rules);
  }
  try {
    LangCode pivot(c.pivot);
  } catch (const InvalidLanguage& e) {
    throw ConfigError(std::string("bad pivot: ") + e.what());
  }
}

std::string config_snapshot(const RunConfig& c, const std::string& command) {
  std::map<std::string, std::string> kv = {
      {"command", command},
      {"strategy", c.strategy},
      {"pivot", c.pivot},
      {"backend", c.backend},
      {"models", text::join(c.models, ",")},
      {"align_models", text::join(c.align_models, ",")},
      {"evaluators", text::join(c.evaluators, ",")},
      {"rounds", std::to_string(c.rounds)},
      {"jobs", std::to_string(c.jobs)},
      {"max_in_flight", std::to_string(c.max_in_flight)},
      {"corpus", c.corpus},
      {"transcripts", c.transcripts},
      {"record", c.record},
      {"stub_rules", c.stub_rules},
      {"out", c.out},
      {"endpoint", c.endpoint},
  };
  std::string out;
  for (const auto& [k, v] : kv) out += k + " = " + v + "\n";
  return out;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
            const std::function<const char*(const char*)>& getenv) {
  CLI::App app{"Multilingual infobox synchronization", "infosync"};
  app.require_subcommand(1);
  app.fallthrough();

  std::map<std::string, std::string> flags;
  std::string config_file;
  app.add_option("--config", config_file, "Flat key = value configuration file");
  auto flag = [&](const std::string& name, const std::string& help) {
    return app.add_option_function<std::string>(
        "--" + name, [&flags, name](const std::string& v) { flags[name] = v; }, help);
  };
  flag("strategy", "direct, joint, two, decompose or hierarchical")
      ->check(CLI::IsMember({"direct", "joint", "two", "decompose", "hierarchical"}));
  flag("backend", "http, stub or replay")->check(CLI::IsMember({"http", "stub", "replay"}));
  flag("pivot", "Pivot language code");
  flag("models", "Comma-separated pipeline models; the first runs the pipeline");
  flag("align-models", "Comma-separated models voting on alignments");
  flag("evaluators", "Comma-separated evaluator models");
  flag("rounds", "Alignment vote rounds per model");
  flag("jobs", "Instances processed in parallel");
  flag("max-in-flight", "Concurrent model calls");
  flag("corpus", "Corpus root directory");
  flag("transcripts", "Transcript file served by the replay backend");
  flag("record", "Append every model exchange to this transcript file");
  flag("stub-rules", "Stub rule directory");
  flag("out", "Output directory");

  std::vector<std::string> selected;
  auto add_select = [&](CLI::App* sub) {
    sub->add_option("--instance", selected, "Instance id relative to the corpus (repeatable)");
  };

  CLI::App* sync = app.add_subcommand("sync", "Synchronize instances and report");
  add_select(sync);
  CLI::App* eval = app.add_subcommand("eval", "Evaluate existing output tables");
  add_select(eval);
  std::string outputs;
  eval->add_option("--outputs", outputs, "Directory written by sync");
  CLI::App* align = app.add_subcommand("align", "Align source keys with the gold or reference");
  add_select(align);
  std::string against = "gold";
  align->add_option("--against", against, "gold or reference")
      ->check(CLI::IsMember({"gold", "reference"}));
  CLI::App* errors = app.add_subcommand("errors", "Stage-wise error ledger");
  add_select(errors);
  CLI::App* stats = app.add_subcommand("stats", "Corpus statistics");
  bool published = false;
  stats->add_flag("--published", published, "Also print the published benchmark counts");
  CLI::App* fetch = app.add_subcommand("fetch", "Fetch an infobox revision from Wikipedia");
  std::string title, lang, as_of, category = "Person", table_out;
  fetch->add_option("--title", title, "Page title")->required();
  fetch->add_option("--lang", lang, "Wiki language code")->required();
  fetch->add_option("--as-of", as_of, "Latest revision at or before this ISO 8601 time")
      ->required();
  fetch->add_option("--category", category, "Entity category");
  fetch->add_option("--table-out", table_out, "Table file to write");
  CLI::App* transcripts = app.add_subcommand("transcripts", "Inspect or merge transcripts");
  transcripts->require_subcommand(1);
  CLI::App* tinfo = transcripts->add_subcommand("info", "Summarize a transcript file");
  std::string info_file;
  tinfo->add_option("file", info_file, "Transcript file")->required();
  CLI::App* tmerge = transcripts->add_subcommand("merge", "Merge transcripts, last write wins");
  std::vector<std::string> merge_inputs;
  std::string merge_output;
  tmerge->add_option("inputs", merge_inputs, "Transcript files")->required();
  tmerge->add_option("--output", merge_output, "Merged transcript file")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n" << app.help();
    return kExitConfig;
  }

  RunConfig config;
  try {
    if (!config_file.empty()) apply_config_text(config, read_text(config_file));
    apply_env(config, getenv);
    for (const auto& [k, v] : flags) set_key(config, k, v);
    validate_config(config);
    bool needs_out = sync->parsed() || eval->parsed() || align->parsed() || errors->parsed();
    if (needs_out && config.out.empty()) throw ConfigError("no output directory given (--out)");
  } catch (const Error& e) {
    err << "configuration error: " << e.what() << "\n";
    return kExitConfig;
  }

  try {
    if (sync->parsed()) return cmd_sync(config, selected, out, err);
    if (eval->parsed()) return cmd_eval(config, selected, outputs, out, err);
    if (align->parsed()) return cmd_align(config, selected, against, out, err);
    if (errors->parsed()) return cmd_errors(config, selected, out, err);
    if (stats->parsed()) return cmd_stats(config, published, out);
    if (fetch->parsed()) {
      return cmd_fetch(config, title, lang, as_of, category, table_out, out, err);
    }
    if (tinfo->parsed()) return cmd_transcripts_info(info_file, out);
    if (tmerge->parsed()) return cmd_transcripts_merge(merge_inputs, merge_output, out);
  } catch (const ConfigError& e) {
    err << "configuration error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const MissingFile& e) {
    err << "configuration error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitPartial;
  }
  return kExitConfig;
}

}  // namespace infosync::cli
