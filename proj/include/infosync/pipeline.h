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

// Synchronization strategies. Every strategy turns a gold-free SyncTask into
// an output table in the source language and records one StageTrace per
// executed stage.
//
// The hierarchical strategy runs, in order:
//   TranslateToPivot  source and reference into the pivot language (tables
//                     already in the pivot language are passed through)
//   TableToKG         both pivot tables into graphs
//   MergeKGs          source graph (A) with reference graph (B)
//   KGToTable         merged graph back to a table keyed like the source
//   BackTranslate     into the source language; omitted when the source
//                     language is the pivot

#ifndef INFOSYNC_PIPELINE_H_
#define INFOSYNC_PIPELINE_H_

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "infosync/alignment.h"
#include "infosync/errors.h"
#include "infosync/knowledge_graph.h"
#include "infosync/llm_gateway.h"
#include "infosync/table.h"

namespace infosync {

enum class Strategy {
  kDirectPrompt,
  kAlignUpdateJoint,
  kAlignUpdateTwoPrompt,
  kDirectDecompose,
  kHierarchical,
};

const std::vector<Strategy>& all_strategies();
// direct, joint, two, decompose, hierarchical.
std::string_view strategy_flag(Strategy s);
std::optional<Strategy> parse_strategy(std::string_view flag);

enum class Stage {
  kTranslateToPivot,
  kTableToKG,
  kMergeKGs,
  kKGToTable,
  kBackTranslate,
  kDirectPrompt,
  kAlignUpdateJoint,
  kAlign,
  kUpdate,
  kDirectDecompose,
};

std::string_view stage_name(Stage s);
std::optional<Stage> parse_stage(std::string_view name);
const std::vector<Stage>& hierarchical_stages();

using Artifact = std::variant<InfoTable, KnowledgeGraph, Alignment>;

// Roles: "source", "reference", "merged", "output", "alignment".
struct NamedArtifact {
  std::string role;
  Artifact value;
};

struct StageTrace {
  Stage stage;
  std::vector<NamedArtifact> inputs;
  std::vector<Exchange> calls;
  std::vector<NamedArtifact> outputs;
  std::vector<std::string> diagnostics;

  const NamedArtifact* output(std::string_view role) const;
};

std::string traces_to_json(const std::vector<StageTrace>& traces);
std::vector<StageTrace> traces_from_json(const std::string& text);

// What a strategy may see of an instance.
struct SyncTask {
  InfoTable source;
  InfoTable reference;
};

SyncTask redact_gold(const SyncInstance& instance);

class StageFailed : public Error {
 public:
  StageFailed(Stage stage, const std::string& cause, std::vector<StageTrace> partial);
  Stage stage() const { return stage_; }
  const std::vector<StageTrace>& partial_traces() const { return partial_; }

 private:
  Stage stage_;
  std::vector<StageTrace> partial_;
};

struct PipelineOptions {
  LangCode pivot{"en"};
  std::string model_id;
  double temperature = kPipelineTemperature;
};

struct RunResult {
  InfoTable output;
  std::vector<StageTrace> traces;
};

class Pipeline {
 public:
  Pipeline(Gateway& gateway, PipelineOptions options);

  // Throws StageFailed.
  RunResult run(const SyncTask& task, Strategy strategy);

  // Single stages. Parse failures are retried once and then propagate.
  InfoTable translate_table(const InfoTable& table, const LangCode& target, StageTrace* trace);
  // Translation out of the pivot language with a worked example mapping.
  InfoTable back_translate(const InfoTable& table, const LangCode& target,
                           const InfoTable& example_pivot, const InfoTable& example_original,
                           StageTrace* trace);
  KnowledgeGraph table_to_kg(const InfoTable& table, StageTrace* trace);
  KnowledgeGraph merge_kgs(const KnowledgeGraph& source_kg, const KnowledgeGraph& reference_kg,
                           StageTrace* trace);
  InfoTable kg_to_table(const KnowledgeGraph& kg, const InfoTable& exemplar,
                        const KnowledgeGraph& exemplar_kg, StageTrace* trace);

  const PipelineOptions& options() const { return options_; }

 private:
  RunResult run_hierarchical(const SyncTask& task);
  RunResult run_single(const SyncTask& task, Stage stage, prompts::PromptKind kind);
  RunResult run_two_prompt(const SyncTask& task);

  InfoTable complete_table(const std::string& prompt, const std::string& tag, StageTrace* trace);

  Gateway& gateway_;
  PipelineOptions options_;
};

// Detail lines for a change in row count between two stages.
std::optional<std::string> row_count_diagnostic(const std::string& what, size_t before,
                                                size_t after);

// Row values (split on ", ") missing from the graph's leaves.
std::vector<std::string> uncovered_values(const Rows& rows, const KnowledgeGraph& kg);

}  // namespace infosync

#endif  // INFOSYNC_PIPELINE_H_
