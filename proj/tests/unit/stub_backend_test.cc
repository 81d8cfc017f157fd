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

#include <nlohmann/json.hpp>

#include "helpers.h"
#include "infosync/errors.h"
#include "infosync/knowledge_graph.h"
#include "infosync/metrics.h"
#include "infosync/prompts.h"
#include "infosync/stub_backend.h"

namespace infosync {
namespace {

using prompts::PromptKind;
using testing::TempDir;

std::string ask(StubBackend& stub, PromptKind kind, const prompts::Slots& slots) {
  CompletionRequest r;
  r.prompt = prompts::render(kind, slots);
  return stub.complete(r);
}

StubRuleSet fr_rules() {
  StubRuleSet rules;
  rules.add_entry("fr", "en", "Pays", "Country");
  rules.add_entry("fr", "en", "Capitale", "Capital");
  rules.add_entry("de", "en", "Hauptstadt", "Capital");
  return rules;
}

TEST_CASE("translation prompt swaps lexicon phrases") {
  StubBackend stub(fr_rules());
  std::string answer = ask(stub, PromptKind::kTranslateToPivot,
                           {{"language", "French"},
                            {"category", "Country"},
                            {"pivot", "English"},
                            {"table", serialize_table({{"Pays", "France"}})}});
  CHECK(parse_table(answer) == Rows{{"Country", "France"}});
}

TEST_CASE("translate lookup order") {
  StubRuleSet rules = fr_rules();
  CHECK(rules.translate("Pays", "fr", "en") == "Country");
  CHECK(rules.translate("Country", "en", "fr") == "Pays");       // inverse
  CHECK(rules.translate("Hauptstadt", "de", "fr") == "Capitale");  // through English
  CHECK(rules.translate("Pays, Capitale", "fr", "en") == "Country, Capital");
  CHECK(rules.translate("Paris", "fr", "en") == "Paris");
  CHECK(rules.translate("Pays", "fr", "fr") == "Pays");
  CHECK(rules.lexicon_size("fr", "en") == 2);
  CHECK(rules.lexicon_size("en", "fr") == 0);
}

TEST_CASE("lexicon entries need both sides") {
  StubRuleSet rules;
  CHECK_THROWS_AS(rules.add_entry("fr", "en", "", "x"), ConfigError);
  CHECK_THROWS_AS(rules.add_entry("fr", "en", "x", ""), ConfigError);
}

TEST_CASE("load reads lexicons and rules") {
  TempDir dir;
  std::filesystem::create_directories(dir.path() / "lexicons");
  std::ofstream(dir.path() / "lexicons" / "fr-en.tsv") << "# comment\nPays\tCountry\n\n";
  std::ofstream(dir.path() / "rules.json")
      << R"({"canned": [{"pattern": "ping", "response": "pong"},
                       {"pattern": "regex:^Q[0-9]+", "response": "numbered"}],
             "faults": {"merge_drop_keys": ["Spouse"], "kg_drop_keys": ["Born"]}})";
  StubRuleSet rules = StubRuleSet::load(dir.path());
  CHECK(rules.translate("Pays", "fr", "en") == "Country");
  CHECK(rules.canned().size() == 2);
  CHECK(rules.merge_drop_keys() == std::set<std::string>{"spouse"});
  CHECK(rules.kg_drop_keys() == std::set<std::string>{"born"});
  StubBackend stub(rules);
  CompletionRequest r;
  r.prompt = "say ping";
  CHECK(stub.complete(r) == "pong");
  r.prompt = "Q12 what";
  CHECK(stub.complete(r) == "numbered");
}

TEST_CASE("load errors") {
  TempDir dir;
  CHECK_THROWS_AS(StubRuleSet::load(dir.path() / "absent"), MissingFile);
  std::filesystem::create_directories(dir.path() / "lexicons");
  std::ofstream(dir.path() / "lexicons" / "fr-en.tsv") << "no tab here\n";
  CHECK_THROWS_AS(StubRuleSet::load(dir.path()), ConfigError);
  std::ofstream(dir.path() / "lexicons" / "fr-en.tsv") << "a\tb\n";
  std::ofstream(dir.path() / "rules.json") << "{";
  CHECK_THROWS_AS(StubRuleSet::load(dir.path()), ConfigError);
}

TEST_CASE("fixture lexicons load") {
  auto stub = testing::fixture_stub();
  CHECK(stub->rules().lexicon_size("de", "en") > 20);
  CHECK(stub->rules().translate("Geburtsdatum", "de", "en") == "Birth date");
  CHECK(stub->rules().translate("Birth date", "en", "hi") == "जन्म तिथि");
}

TEST_CASE("unrecognized and unreadable prompts") {
  StubBackend stub{StubRuleSet{}};
  CompletionRequest r;
  r.prompt = "Tell me a joke";
  CHECK(stub.complete(r).find("could not work out") != std::string::npos);
  std::string broken = prompts::render(PromptKind::kTableToKG, {{"category", "Person"}, {"table", "nope"}});
  r.prompt = broken;
  CHECK(stub.complete(r).find("could not be read") != std::string::npos);
}

TEST_CASE("table to graph to table") {
  StubBackend stub{StubRuleSet{}};
  Rows rows = {{"Name", "A"}, {"Genre", "Rock, Pop"}};
  std::string kg_text = ask(stub, PromptKind::kTableToKG,
                            {{"category", "Album"}, {"table", serialize_table(rows)}});
  KnowledgeGraph kg = parse_kg(kg_text);
  CHECK(kg == table_to_flat_kg(rows));
  std::string back = ask(stub, PromptKind::kKGToTable,
                         {{"graph_a", kg_text}, {"table_a", serialize_table(rows)}, {"graph_g", kg_text}});
  CHECK(parse_table(back) == rows);
}

TEST_CASE("merge prefers graph B and appends its new keys") {
  StubRuleSet rules;
  StubBackend stub(rules);
  std::string merged = ask(stub, PromptKind::kMergeKGs,
                           {{"graph_a", R"({"Born": "1990", "Spouse": "X", "Info": {"a": "1"}})"},
                            {"graph_b", R"({"born": "1991", "Info": {"b": "2"}, "Children": "2"})"}});
  KnowledgeGraph kg = parse_kg(merged);
  REQUIRE(kg.root.size() == 4);
  CHECK(kg.root[0].key == "Born");
  CHECK(kg.root[0].value.text() == "1991");
  CHECK(kg.root[1].value.text() == "X");
  CHECK(kg.root[2].value.map().size() == 2);
  CHECK(kg.root[3].key == "Children");
}

TEST_CASE("merge fault drops configured keys") {
  StubRuleSet rules;
  rules.drop_on_merge("Spouse");
  StubBackend stub(rules);
  KnowledgeGraph kg = parse_kg(ask(stub, PromptKind::kMergeKGs,
                                   {{"graph_a", R"({"Spouse": "X", "Born": "1"})"},
                                    {"graph_b", R"({"Born": "2"})"}}));
  CHECK(kg.root.size() == 1);
}

TEST_CASE("direct update changes exact keys only") {
  StubBackend stub(fr_rules());
  Rows a = {{"Country", "Old"}, {"Mayor", "M"}};
  Rows b = {{"Pays", "New"}, {"Capitale", "Paris"}};
  prompts::Slots slots = {{"language", "English"}, {"reference_language", "French"},
                          {"category", "City"},    {"table_a", serialize_table(a)},
                          {"table_b", serialize_table(b)}};
  CHECK(parse_table(ask(stub, PromptKind::kDirect, slots)) == Rows{{"Country", "New"}, {"Mayor", "M"}});
  CHECK(parse_table(ask(stub, PromptKind::kAlignUpdateJoint, slots)) ==
        Rows{{"Country", "New"}, {"Mayor", "M"}, {"Capital", "Paris"}});
}

TEST_CASE("two-prompt update follows the given alignment") {
  StubBackend stub(fr_rules());
  Rows a = {{"Country", "Old"}, {"Mayor", "M"}};
  Rows b = {{"Pays", "New"}, {"Capitale", "Paris"}};
  prompts::Slots slots = {{"language", "English"}, {"reference_language", "French"},
                          {"category", "City"},    {"table_a", serialize_table(a)},
                          {"table_b", serialize_table(b)},
                          {"alignments", "[\n    ['Mayor'],['Pays'],\n]"}};
  Rows out = parse_table(ask(stub, PromptKind::kAlignUpdateTwo, slots));
  CHECK(out == Rows{{"Country", "Old"}, {"Mayor", "New"}, {"Capital", "Paris"}});
}

TEST_CASE("alignment prompt pairs raw keys across languages") {
  StubBackend stub(fr_rules());
  std::string answer = ask(stub, PromptKind::kAlignKeys,
                           {{"languages", "English, French"},
                            {"table_a", serialize_table({{"Country", "x"}, {"Area", "y"}})},
                            {"table_g", serialize_table({{"Pays", "x"}, {"Capitale", "z"}})}});
  CHECK(parse_table(answer) == Rows{{"Country", "Pays"}});
}

TEST_CASE("evaluation comparator") {
  StubBackend stub{StubRuleSet{}};
  std::string answer = ask(stub, PromptKind::kEvaluate,
                           {{"language", "English"},
                            {"table_1", serialize_table({{"Genre", "Rock, Pop; Jazz"}})},
                            {"table_2", serialize_table({{"Genre", "pop, Blues"}})}});
  AtomicComparison c = parse_comparison(answer);
  CHECK(c.sct == std::vector<std::string>{"Pop"});
  CHECK(c.scd == std::vector<std::string>{"Rock vs Blues"});
  CHECK(c.t1u == std::vector<std::string>{"Jazz"});
  CHECK(c.t2u.empty());
}

TEST_CASE("back translation uses the worked example first") {
  StubRuleSet rules;
  rules.add_entry("de", "en", "Geburtsort", "Birth place");
  StubBackend stub(rules);
  std::string answer = ask(stub, PromptKind::kBackTranslate,
                           {{"pivot", "English"},
                            {"category", "Person"},
                            {"language", "German"},
                            {"example_original", serialize_table({{"Born", "Ulm"}})},
                            {"example_translated", serialize_table({{"Geboren", "Ulm"}})},
                            {"table", serialize_table({{"Born", "Ulm"}, {"Birth place", "X"}})}});
  CHECK(parse_table(answer) == Rows{{"Geboren", "Ulm"}, {"Geburtsort", "X"}});
}

TEST_CASE("stub is a pure function of request and rules") {
  auto a = testing::fixture_stub();
  auto b = testing::fixture_stub();
  CompletionRequest r;
  r.prompt = prompts::render(PromptKind::kTranslateToPivot,
                             {{"language", "German"},
                              {"category", "Person"},
                              {"pivot", "English"},
                              {"table", serialize_table({{"Geburtsdatum", "14. März 1879"}})}});
  CHECK(a->complete(r) == b->complete(r));
  r.attempt = 3;
  r.temperature = 0.7;
  CHECK(a->complete(r) == b->complete(r));
}

}  // namespace
}  // namespace infosync
