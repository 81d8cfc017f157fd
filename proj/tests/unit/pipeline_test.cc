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

#include <doctest.h>

#include <algorithm>

#include "helpers.h"
#include "infosync/dataset.h"
#include "infosync/errors.h"
#include "infosync/pipeline.h"

namespace infosync {
namespace {

using testing::FakeBackend;
using testing::table;

SyncInstance fixture(const std::string& rel) {
  return load_instance(testing::corpus_dir() / rel);
}

Rows sorted(Rows rows) {
  std::sort(rows.begin(), rows.end(),
            [](const TableRow& a, const TableRow& b) { return std::tie(a.key, a.value) < std::tie(b.key, b.value); });
  return rows;
}

std::vector<Stage> stages_of(const std::vector<StageTrace>& traces) {
  std::vector<Stage> out;
  for (const auto& t : traces) out.push_back(t.stage);
  return out;
}

TEST_CASE("strategy and stage names round trip") {
  for (Strategy s : all_strategies()) CHECK(parse_strategy(strategy_flag(s)) == s);
  CHECK(all_strategies().size() == 5);
  CHECK(strategy_flag(Strategy::kHierarchical) == "hierarchical");
  CHECK_FALSE(parse_strategy("bogus"));
  for (Stage s : hierarchical_stages()) CHECK(parse_stage(stage_name(s)) == s);
  CHECK(parse_stage(stage_name(Stage::kUpdate)) == Stage::kUpdate);
  CHECK_FALSE(parse_stage("Nope"));
}

TEST_CASE("redact_gold keeps only source and reference") {
  SyncInstance inst = fixture("City/heidelberg");
  SyncTask task = redact_gold(inst);
  CHECK(task.source.rows == inst.source().rows);
  CHECK(task.reference.rows == inst.reference().rows);
}

TEST_CASE("hierarchical run on a German instance reproduces gold") {
  Gateway gw(testing::fixture_stub());
  Pipeline p(gw, PipelineOptions{});
  SyncInstance inst = fixture("City/heidelberg");
  RunResult r = p.run(redact_gold(inst), Strategy::kHierarchical);
  CHECK(r.output.language.code() == "de");
  CHECK(r.output.entity == inst.source().entity);
  CHECK(sorted(r.output.rows) == sorted(inst.gold().rows));
  CHECK(stages_of(r.traces) == hierarchical_stages());
  const NamedArtifact* merged = r.traces[2].output("merged");
  REQUIRE(merged);
  CHECK(std::holds_alternative<KnowledgeGraph>(merged->value));
  for (const auto& t : r.traces) CHECK_FALSE(t.calls.empty());
}

TEST_CASE("back-translation is skipped for a source in the pivot language") {
  Gateway gw(testing::fixture_stub());
  Pipeline p(gw, PipelineOptions{});
  SyncInstance inst = fixture("Album/abbey-road");
  REQUIRE(inst.source().language.code() == "en");
  RunResult r = p.run(redact_gold(inst), Strategy::kHierarchical);
  auto stages = stages_of(r.traces);
  CHECK(stages.size() == 4);
  CHECK(std::find(stages.begin(), stages.end(), Stage::kBackTranslate) == stages.end());
  CHECK(r.output.language.code() == "en");
}

TEST_CASE("a non-English pivot translates both sides") {
  Gateway gw(testing::fixture_stub());
  PipelineOptions opts;
  opts.pivot = LangCode("de");
  Pipeline p(gw, opts);
  SyncInstance inst = fixture("City/heidelberg");
  RunResult r = p.run(redact_gold(inst), Strategy::kHierarchical);
  // The source is already in the pivot, so no back translation is needed.
  CHECK(r.traces.size() == 4);
  CHECK(r.output.language.code() == "de");
}

TEST_CASE("every strategy yields a source-language table with traces") {
  Gateway gw(testing::fixture_stub());
  Pipeline p(gw, PipelineOptions{});
  SyncInstance inst = fixture("City/heidelberg");
  for (Strategy s : all_strategies()) {
    CAPTURE(strategy_flag(s));
    RunResult r = p.run(redact_gold(inst), s);
    CHECK(r.output.language.code() == "de");
    CHECK(r.output.category.name() == "City");
    CHECK_FALSE(r.output.rows.empty());
    CHECK_FALSE(r.traces.empty());
    CHECK(r.traces.back().output("output") != nullptr);
  }
}

TEST_CASE("two-prompt strategy aligns before updating") {
  Gateway gw(testing::fixture_stub());
  Pipeline p(gw, PipelineOptions{});
  RunResult r = p.run(redact_gold(fixture("City/heidelberg")), Strategy::kAlignUpdateTwoPrompt);
  CHECK(stages_of(r.traces) == std::vector<Stage>{Stage::kAlign, Stage::kUpdate});
  const NamedArtifact* a = r.traces[0].output("alignment");
  REQUIRE(a);
  CHECK_FALSE(std::get<Alignment>(a->value).empty());
}

TEST_CASE("gold text never reaches a prompt") {
  auto stub = testing::fixture_stub();
  auto backend = std::make_shared<FakeBackend>(
      [stub](const CompletionRequest& r) { return stub->complete(r); });
  Gateway gw(backend);
  Pipeline p(gw, PipelineOptions{});
  InfoTable source = table("de", {{"Staat", "Deutschland"}}, "X", "City");
  InfoTable reference = table("en", {{"Country", "Germany"}}, "X", "City");
  InfoTable gold = table("de", {{"Staat", "Deutschland"}, {"Kanarienvogel", "zzcanaryzz"}}, "X", "City");
  SyncInstance inst(source, reference, gold);
  for (Strategy s : all_strategies()) p.run(redact_gold(inst), s);
  REQUIRE_FALSE(backend->requests.empty());
  for (const auto& r : backend->requests) {
    CHECK(r.prompt.find("zzcanaryzz") == std::string::npos);
    CHECK(r.prompt.find("Kanarienvogel") == std::string::npos);
  }
}

TEST_CASE("pipeline calls use the configured model and temperature zero") {
  auto stub = testing::fixture_stub();
  auto backend = std::make_shared<FakeBackend>(
      [stub](const CompletionRequest& r) { return stub->complete(r); });
  Gateway gw(backend);
  PipelineOptions opts;
  opts.model_id = "model-x";
  Pipeline p(gw, opts);
  p.run(redact_gold(fixture("City/heidelberg")), Strategy::kHierarchical);
  for (const auto& r : backend->requests) {
    CHECK(r.model_id == "model-x");
    CHECK(r.temperature == 0.0);
  }
}

TEST_CASE("a failing stage reports the stage and the partial traces") {
  auto stub = testing::fixture_stub();
  auto backend = std::make_shared<FakeBackend>([stub](const CompletionRequest& r) -> std::string {
    if (r.tag == "merge") return "no graph here";
    return stub->complete(r);
  });
  Gateway gw(backend);
  Pipeline p(gw, PipelineOptions{});
  try {
    p.run(redact_gold(fixture("City/heidelberg")), Strategy::kHierarchical);
    FAIL("expected StageFailed");
  } catch (const StageFailed& e) {
    CHECK(e.stage() == Stage::kMergeKGs);
    auto stages = stages_of(e.partial_traces());
    CHECK(stages == std::vector<Stage>{Stage::kTranslateToPivot, Stage::kTableToKG, Stage::kMergeKGs});
    // The failed stage keeps its original call and the reprompt.
    CHECK(e.partial_traces().back().calls.size() == 2);
  }
}

TEST_CASE("a backend outage fails the first stage") {
  auto backend = std::make_shared<FakeBackend>(
      [](const CompletionRequest&) -> std::string { throw BackendUnavailable("down"); });
  Gateway gw(backend);
  Pipeline p(gw, PipelineOptions{});
  SyncTask task = redact_gold(fixture("City/heidelberg"));
  CHECK_THROWS_AS(p.run(task, Strategy::kHierarchical), StageFailed);
  try {
    p.run(task, Strategy::kDirectPrompt);
  } catch (const StageFailed& e) {
    CHECK(e.stage() == Stage::kDirectPrompt);
    CHECK(e.partial_traces().size() == 1);
  }
}

TEST_CASE("traces survive a JSON round trip") {
  Gateway gw(testing::fixture_stub());
  Pipeline p(gw, PipelineOptions{});
  for (Strategy s : {Strategy::kHierarchical, Strategy::kAlignUpdateTwoPrompt}) {
    RunResult r = p.run(redact_gold(fixture("City/heidelberg")), s);
    std::string j = traces_to_json(r.traces);
    auto back = traces_from_json(j);
    REQUIRE(back.size() == r.traces.size());
    CHECK(traces_to_json(back) == j);
    CHECK(stages_of(back) == stages_of(r.traces));
  }
  CHECK_THROWS_AS(traces_from_json("{"), ParseError);
}

TEST_CASE("single stages") {
  Gateway gw(testing::fixture_stub());
  Pipeline p(gw, PipelineOptions{});
  InfoTable de = table("de", {{"Staat", "Deutschland"}}, "X", "City");
  StageTrace trace{Stage::kTranslateToPivot, {}, {}, {}, {}};
  InfoTable en = p.translate_table(de, LangCode("en"), &trace);
  CHECK(en.rows == Rows{{"Country", "Germany"}});
  CHECK(en.language.code() == "en");
  CHECK(trace.calls.size() == 1);
  // Same-language translation makes no call.
  CHECK(p.translate_table(en, LangCode("en"), &trace).rows == en.rows);
  CHECK(trace.calls.size() == 1);

  KnowledgeGraph kg = p.table_to_kg(en, nullptr);
  CHECK(kg_leaves(kg) == std::vector<std::string>{"Germany"});
  InfoTable back = p.kg_to_table(kg, en, kg, nullptr);
  CHECK(back.rows == en.rows);
}

TEST_CASE("row_count_diagnostic and uncovered_values") {
  CHECK_FALSE(row_count_diagnostic("x", 3, 3));
  CHECK(*row_count_diagnostic("x", 3, 2) == "x: row count changed from 3 to 2");
  KnowledgeGraph kg = parse_kg(R"({"a": ["1", "2"]})");
  CHECK(uncovered_values({{"a", "1, 2"}}, kg).empty());
  CHECK(uncovered_values({{"a", "1, 3"}, {"b", "1"}}, kg) == std::vector<std::string>{"3", "1"});
}

}  // namespace
}  // namespace infosync
