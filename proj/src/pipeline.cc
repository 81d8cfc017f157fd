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

#include "infosync/pipeline.h"

#include <algorithm>
#include <map>
#include <nlohmann/json.hpp>

#include "infosync/prompts.h"
#include "infosync/text.h"

namespace infosync {

namespace {

using prompts::PromptKind;
using ojson = nlohmann::ordered_json;

const std::vector<std::pair<Strategy, std::string_view>>& strategy_table() {
  static const std::vector<std::pair<Strategy, std::string_view>> kTable = {
      {Strategy::kDirectPrompt, "direct"},   {Strategy::kAlignUpdateJoint, "joint"},
      {Strategy::kAlignUpdateTwoPrompt, "two"}, {Strategy::kDirectDecompose, "decompose"},
      {Strategy::kHierarchical, "hierarchical"},
  };
  return kTable;
}

const std::vector<std::pair<Stage, std::string_view>>& stage_table() {
  static const std::vector<std::pair<Stage, std::string_view>> kTable = {
      {Stage::kTranslateToPivot, "TranslateToPivot"}, {Stage::kTableToKG, "TableToKG"},
      {Stage::kMergeKGs, "MergeKGs"},                 {Stage::kKGToTable, "KGToTable"},
      {Stage::kBackTranslate, "BackTranslate"},       {Stage::kDirectPrompt, "DirectPrompt"},
      {Stage::kAlignUpdateJoint, "AlignUpdateJoint"}, {Stage::kAlign, "Align"},
      {Stage::kUpdate, "Update"},                     {Stage::kDirectDecompose, "DirectDecompose"},
  };
  return kTable;
}

ojson table_json(const InfoTable& t) {
  ojson rows = ojson::array();
  for (const auto& r : t.rows) rows.push_back({r.key, r.value});
  ojson j{{"kind", "table"},
          {"entity", t.entity},
          {"language", t.language.code()},
          {"category", t.category.name()},
          {"rows", rows}};
  if (t.revision_tag) j["revision_tag"] = *t.revision_tag;
  return j;
}

InfoTable table_from_json(const nlohmann::json& j) {
  Rows rows;
  for (const auto& r : j.at("rows")) rows.push_back({r.at(0).get<std::string>(), r.at(1).get<std::string>()});
  InfoTable t{j.at("entity").get<std::string>(), LangCode(j.at("language").get<std::string>()),
              Category(j.at("category").get<std::string>()), std::move(rows), std::nullopt};
  if (j.contains("revision_tag")) t.revision_tag = j.at("revision_tag").get<std::string>();
  return t;
}

ojson artifact_json(const NamedArtifact& a) {
  ojson j;
  if (const auto* t = std::get_if<InfoTable>(&a.value)) {
    j = table_json(*t);
  } else if (const auto* kg = std::get_if<KnowledgeGraph>(&a.value)) {
    j = ojson{{"kind", "kg"}, {"graph", serialize_kg(*kg)}};
  } else {
    j = ojson{{"kind", "alignment"},
              {"alignment", ojson::parse(alignment_to_json(std::get<Alignment>(a.value)))}};
  }
  j["role"] = a.role;
  return j;
}

NamedArtifact artifact_from_json(const nlohmann::json& j) {
  std::string kind = j.at("kind").get<std::string>();
  std::string role = j.at("role").get<std::string>();
  if (kind == "table") return {role, table_from_json(j)};
  if (kind == "kg") return {role, parse_kg(j.at("graph").get<std::string>())};
  if (kind == "alignment") return {role, alignment_from_json(j.at("alignment").dump())};
  throw ParseError("unknown artifact kind '" + kind + "'");
}

InfoTable unrevised(InfoTable t) {
  t.revision_tag.reset();
  return t;
}

}  // namespace

const std::vector<Strategy>& all_strategies() {
  static const std::vector<Strategy> kAll = [] {
    std::vector<Strategy> v;
    for (const auto& [s, f] : strategy_table()) v.push_back(s);
    return v;
  }();
  return kAll;
}

std::string_view strategy_flag(Strategy s) {
  for (const auto& [x, f] : strategy_table()) {
    if (x == s) return f;
  }
  return "";
}

std::optional<Strategy> parse_strategy(std::string_view flag) {
  for (const auto& [s, f] : strategy_table()) {
    if (f == flag) return s;
  }
  return std::nullopt;
}

std::string_view stage_name(Stage s) {
  for (const auto& [x, n] : stage_table()) {
    if (x == s) return n;
  }
  return "";
}

std::optional<Stage> parse_stage(std::string_view name) {
  for (const auto& [s, n] : stage_table()) {
    if (n == name) return s;
  }
  return std::nullopt;
}

const std::vector<Stage>& hierarchical_stages() {
  static const std::vector<Stage> kStages = {Stage::kTranslateToPivot, Stage::kTableToKG,
                                             Stage::kMergeKGs, Stage::kKGToTable,
                                             Stage::kBackTranslate};
  return kStages;
}

const NamedArtifact* StageTrace::output(std::string_view role) const {
  for (const auto& a : outputs) {
    if (a.role == role) return &a;
  }
  return nullptr;
}

std::string traces_to_json(const std::vector<StageTrace>& traces) {
  ojson out = ojson::array();
  for (const auto& t : traces) {
    ojson j;
    j["stage"] = stage_name(t.stage);
    j["inputs"] = ojson::array();
    for (const auto& a : t.inputs) j["inputs"].push_back(artifact_json(a));
    j["calls"] = ojson::array();
    for (const auto& c : t.calls) j["calls"].push_back({{"prompt", c.prompt}, {"response", c.response}});
    j["outputs"] = ojson::array();
    for (const auto& a : t.outputs) j["outputs"].push_back(artifact_json(a));
    j["diagnostics"] = t.diagnostics;
    out.push_back(std::move(j));
  }
  return out.dump(2);
}

std::vector<StageTrace> traces_from_json(const std::string& text) {
  std::vector<StageTrace> out;
  try {
    for (const auto& j : nlohmann::json::parse(text)) {
      auto stage = parse_stage(j.at("stage").get<std::string>());
      if (!stage) throw ParseError("unknown stage " + j.at("stage").dump());
      StageTrace t{*stage, {}, {}, {}, {}};
      for (const auto& a : j.at("inputs")) t.inputs.push_back(artifact_from_json(a));
      for (const auto& c : j.at("calls")) {
        t.calls.push_back({c.at("prompt").get<std::string>(), c.at("response").get<std::string>()});
      }
      for (const auto& a : j.at("outputs")) t.outputs.push_back(artifact_from_json(a));
      t.diagnostics = j.at("diagnostics").get<std::vector<std::string>>();
      out.push_back(std::move(t));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad trace file: ") + e.what());
  }
  return out;
}

SyncTask redact_gold(const SyncInstance& instance) {
  return SyncTask{instance.source(), instance.reference()};
}

StageFailed::StageFailed(Stage stage, const std::string& cause, std::vector<StageTrace> partial)
    : Error(std::string(stage_name(stage)) + " failed: " + cause),
      stage_(stage),
      partial_(std::move(partial)) {}

std::optional<std::string> row_count_diagnostic(const std::string& what, size_t before,
                                                size_t after) {
  if (before == after) return std::nullopt;
  return what + ": row count changed from " + std::to_string(before) + " to " +
         std::to_string(after);
}

std::vector<std::string> uncovered_values(const Rows& rows, const KnowledgeGraph& kg) {
  std::multiset<std::string> leaves;
  for (const auto& l : kg_leaves(kg)) leaves.insert(l);
  std::vector<std::string> missing;
  for (const auto& r : rows) {
    for (const auto& part : text::split(r.value, ", ")) {
      if (part.empty()) continue;
      auto it = leaves.find(part);
      if (it == leaves.end()) {
        missing.push_back(part);
      } else {
        leaves.erase(it);
      }
    }
  }
  return missing;
}

Pipeline::Pipeline(Gateway& gateway, PipelineOptions options)
    : gateway_(gateway), options_(std::move(options)) {}

InfoTable Pipeline::complete_table(const std::string& prompt, const std::string& tag,
                                   StageTrace* trace) {
  CompletionRequest req{prompt, options_.model_id, options_.temperature, 4096, tag, 0};
  std::vector<Exchange> log;
  try {
    Rows rows = complete_parsed(gateway_, req, [](const std::string& s) { return parse_table(s); },
                                &log);
    if (trace) trace->calls.insert(trace->calls.end(), log.begin(), log.end());
    // Callers fill in the metadata.
    return InfoTable{"", options_.pivot, Category("unset"), std::move(rows), std::nullopt};
  } catch (...) {
    if (trace) trace->calls.insert(trace->calls.end(), log.begin(), log.end());
    throw;
  }
}

InfoTable Pipeline::translate_table(const InfoTable& table, const LangCode& target,
                                    StageTrace* trace) {
  if (table.language == target) return table;
  std::string prompt = prompts::render(PromptKind::kTranslateToPivot,
                                       {{"language", table.language.name()},
                                        {"category", table.category.name()},
                                        {"pivot", target.name()},
                                        {"table", serialize_table(table.rows)}});
  InfoTable out = complete_table(prompt, "translate", trace);
  out = with_rows(unrevised(table), std::move(out.rows), target);
  if (trace) {
    if (auto d = row_count_diagnostic("translation of " + table.language.code(), table.rows.size(),
                                      out.rows.size())) {
      trace->diagnostics.push_back(*d);
    }
  }
  return out;
}

InfoTable Pipeline::back_translate(const InfoTable& table, const LangCode& target,
                                   const InfoTable& example_pivot,
                                   const InfoTable& example_original, StageTrace* trace) {
  if (table.language == target) return table;
  std::string prompt = prompts::render(PromptKind::kBackTranslate,
                                       {{"pivot", table.language.name()},
                                        {"category", table.category.name()},
                                        {"language", target.name()},
                                        {"example_original", serialize_table(example_pivot.rows)},
                                        {"example_translated", serialize_table(example_original.rows)},
                                        {"table", serialize_table(table.rows)}});
  InfoTable out = complete_table(prompt, "back_translate", trace);
  out = with_rows(table, std::move(out.rows), target);
  if (trace) {
    if (auto d = row_count_diagnostic("back-translation", table.rows.size(), out.rows.size())) {
      trace->diagnostics.push_back(*d);
    }
  }
  return out;
}

KnowledgeGraph Pipeline::table_to_kg(const InfoTable& table, StageTrace* trace) {
  if (table.rows.empty()) return KnowledgeGraph{};
  std::string prompt = prompts::render(
      PromptKind::kTableToKG,
      {{"category", table.category.name()}, {"table", serialize_table(table.rows)}});
  CompletionRequest req{prompt, options_.model_id, options_.temperature, 4096, "table_to_kg", 0};
  std::vector<Exchange> log;
  KnowledgeGraph kg;
  try {
    kg = complete_parsed(gateway_, req, [](const std::string& s) { return parse_kg(s); }, &log);
  } catch (...) {
    if (trace) trace->calls.insert(trace->calls.end(), log.begin(), log.end());
    throw;
  }
  if (trace) {
    trace->calls.insert(trace->calls.end(), log.begin(), log.end());
    for (const auto& v : uncovered_values(table.rows, kg)) {
      trace->diagnostics.push_back("graph misses value '" + v + "'");
    }
  }
  return kg;
}

KnowledgeGraph Pipeline::merge_kgs(const KnowledgeGraph& source_kg,
                                   const KnowledgeGraph& reference_kg, StageTrace* trace) {
  if (source_kg.empty() && reference_kg.empty()) return KnowledgeGraph{};
  std::string prompt = prompts::render(PromptKind::kMergeKGs, {{"graph_a", serialize_kg(source_kg)},
                                                               {"graph_b", serialize_kg(reference_kg)}});
  CompletionRequest req{prompt, options_.model_id, options_.temperature, 4096, "merge", 0};
  std::vector<Exchange> log;
  KnowledgeGraph merged;
  try {
    merged = complete_parsed(gateway_, req, [](const std::string& s) { return parse_kg(s); }, &log);
  } catch (...) {
    if (trace) trace->calls.insert(trace->calls.end(), log.begin(), log.end());
    throw;
  }
  if (trace) {
    trace->calls.insert(trace->calls.end(), log.begin(), log.end());
    size_t before = std::max(kg_leaves(source_kg).size(), kg_leaves(reference_kg).size());
    size_t after = kg_leaves(merged).size();
    if (after < before) {
      trace->diagnostics.push_back("merged graph has " + std::to_string(after) +
                                   " leaves, fewer than the larger input (" +
                                   std::to_string(before) + ")");
    }
  }
  return merged;
}

InfoTable Pipeline::kg_to_table(const KnowledgeGraph& kg, const InfoTable& exemplar,
                                const KnowledgeGraph& exemplar_kg, StageTrace* trace) {
  if (kg.empty()) return with_rows(exemplar, {}, exemplar.language);
  std::string prompt = prompts::render(PromptKind::kKGToTable,
                                       {{"graph_a", serialize_kg(exemplar_kg)},
                                        {"table_a", serialize_table(exemplar.rows)},
                                        {"graph_g", serialize_kg(kg)}});
  InfoTable out = complete_table(prompt, "kg_to_table", trace);
  out = with_rows(exemplar, std::move(out.rows), exemplar.language);
  if (trace) {
    if (auto d = row_count_diagnostic("graph to table", kg_leaves(kg).size(), out.rows.size())) {
      trace->diagnostics.push_back(*d);
    }
  }
  return out;
}

RunResult Pipeline::run(const SyncTask& task, Strategy strategy) {
  switch (strategy) {
    case Strategy::kHierarchical:
      return run_hierarchical(task);
    case Strategy::kDirectPrompt:
      return run_single(task, Stage::kDirectPrompt, PromptKind::kDirect);
    case Strategy::kAlignUpdateJoint:
      return run_single(task, Stage::kAlignUpdateJoint, PromptKind::kAlignUpdateJoint);
    case Strategy::kDirectDecompose:
      return run_single(task, Stage::kDirectDecompose, PromptKind::kDirectDecompose);
    case Strategy::kAlignUpdateTwoPrompt:
      return run_two_prompt(task);
  }
  throw ConfigError("unknown strategy");
}

RunResult Pipeline::run_hierarchical(const SyncTask& task) {
  std::vector<StageTrace> traces;
  const LangCode& pivot = options_.pivot;
  auto fail = [&](Stage stage, StageTrace& current, const std::exception& e) -> StageFailed {
    traces.push_back(std::move(current));
    return StageFailed(stage, e.what(), traces);
  };

  StageTrace tr{Stage::kTranslateToPivot, {{"source", task.source}, {"reference", task.reference}},
                {}, {}, {}};
  InfoTable source_pivot = task.source, reference_pivot = task.reference;
  try {
    source_pivot = translate_table(task.source, pivot, &tr);
    reference_pivot = translate_table(task.reference, pivot, &tr);
  } catch (const Error& e) {
    throw fail(Stage::kTranslateToPivot, tr, e);
  }
  tr.outputs = {{"source", source_pivot}, {"reference", reference_pivot}};
  traces.push_back(std::move(tr));

  StageTrace kg{Stage::kTableToKG, {{"source", source_pivot}, {"reference", reference_pivot}},
                {}, {}, {}};
  KnowledgeGraph source_kg, reference_kg;
  try {
    source_kg = table_to_kg(source_pivot, &kg);
    reference_kg = table_to_kg(reference_pivot, &kg);
  } catch (const Error& e) {
    throw fail(Stage::kTableToKG, kg, e);
  }
  kg.outputs = {{"source", source_kg}, {"reference", reference_kg}};
  traces.push_back(std::move(kg));

  StageTrace merge{Stage::kMergeKGs, {{"source", source_kg}, {"reference", reference_kg}}, {}, {}, {}};
  KnowledgeGraph merged;
  try {
    merged = merge_kgs(source_kg, reference_kg, &merge);
  } catch (const Error& e) {
    throw fail(Stage::kMergeKGs, merge, e);
  }
  merge.outputs = {{"merged", merged}};
  traces.push_back(std::move(merge));

  StageTrace conv{Stage::kKGToTable, {{"merged", merged}, {"source", source_pivot}}, {}, {}, {}};
  InfoTable table = source_pivot;
  try {
    table = kg_to_table(merged, source_pivot, source_kg, &conv);
  } catch (const Error& e) {
    throw fail(Stage::kKGToTable, conv, e);
  }
  conv.outputs = {{"output", table}};
  traces.push_back(std::move(conv));

  if (task.source.language != pivot) {
    StageTrace bt{Stage::kBackTranslate, {{"output", table}}, {}, {}, {}};
    try {
      table = back_translate(table, task.source.language, source_pivot, task.source, &bt);
    } catch (const Error& e) {
      throw fail(Stage::kBackTranslate, bt, e);
    }
    bt.outputs = {{"output", table}};
    traces.push_back(std::move(bt));
  }
  return {with_rows(unrevised(task.source), table.rows, task.source.language), std::move(traces)};
}

RunResult Pipeline::run_single(const SyncTask& task, Stage stage, PromptKind kind) {
  prompts::Slots slots = {{"language", task.source.language.name()},
                          {"reference_language", task.reference.language.name()},
                          {"category", task.source.category.name()},
                          {"table_a", serialize_table(task.source.rows)},
                          {"table_b", serialize_table(task.reference.rows)}};
  if (kind == PromptKind::kDirectDecompose) slots["pivot"] = options_.pivot.name();
  StageTrace trace{stage, {{"source", task.source}, {"reference", task.reference}}, {}, {}, {}};
  InfoTable out = task.source;
  try {
    out = complete_table(prompts::render(kind, slots), std::string(stage_name(stage)), &trace);
  } catch (const Error& e) {
    std::vector<StageTrace> partial = {std::move(trace)};
    throw StageFailed(stage, e.what(), std::move(partial));
  }
  out = with_rows(unrevised(task.source), std::move(out.rows), task.source.language);
  trace.outputs = {{"output", out}};
  return {out, {std::move(trace)}};
}

RunResult Pipeline::run_two_prompt(const SyncTask& task) {
  std::vector<StageTrace> traces;
  StageTrace align{Stage::kAlign, {{"source", task.source}, {"reference", task.reference}}, {}, {}, {}};
  LlmAlignment aligned;
  try {
    aligned = align_llm(task.source, task.reference, gateway_, options_.model_id, 0, &align.calls);
  } catch (const Error& e) {
    traces.push_back(std::move(align));
    throw StageFailed(Stage::kAlign, e.what(), std::move(traces));
  }
  align.diagnostics = aligned.diagnostics;
  align.outputs = {{"alignment", aligned.alignment}};
  traces.push_back(std::move(align));

  prompts::Slots slots = {
      {"language", task.source.language.name()},
      {"reference_language", task.reference.language.name()},
      {"category", task.source.category.name()},
      {"table_a", serialize_table(task.source.rows)},
      {"table_b", serialize_table(task.reference.rows)},
      {"alignments", render_alignment_prompt(aligned.alignment, task.source.rows, task.reference.rows)}};
  StageTrace update{Stage::kUpdate,
                    {{"source", task.source}, {"reference", task.reference}, {"alignment", aligned.alignment}},
                    {}, {}, {}};
  InfoTable out = task.source;
  try {
    out = complete_table(prompts::render(PromptKind::kAlignUpdateTwo, slots), "update", &update);
  } catch (const Error& e) {
    traces.push_back(std::move(update));
    throw StageFailed(Stage::kUpdate, e.what(), std::move(traces));
  }
  out = with_rows(unrevised(task.source), std::move(out.rows), task.source.language);
  update.outputs = {{"output", out}};
  traces.push_back(std::move(update));
  return {out, std::move(traces)};
}

}  // namespace infosync
