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

#include "helpers.h"
#include "infosync/errors.h"
#include "infosync/knowledge_graph.h"
#include "infosync/prompts.h"

namespace infosync {
namespace {

const KGValue* find(const KGMap& m, const std::string& key) {
  for (const auto& f : m) {
    if (f.key == key) return &f.value;
  }
  return nullptr;
}

TEST_CASE("parse_kg reads the example graph of the conversion prompt") {
  std::string prompt(prompts::template_text(prompts::PromptKind::kTableToKG));
  // The example ends in "...." before the closing brace; cut it to a graph.
  size_t begin = prompt.find('{');
  std::string example = prompt.substr(begin, prompt.find("....") - begin) + "}";
  KnowledgeGraph kg = parse_kg("Example Output Knowledge Graph:\n" + example);
  REQUIRE(kg.root.size() == 2);
  const KGValue* person = find(kg.root, "Person");
  const KGValue* occupation = find(kg.root, "Occupation");
  REQUIRE(person);
  REQUIRE(occupation);
  REQUIRE(person->is_map());
  CHECK(find(person->map(), "Birthplace")->text() == "Cojímar, Havana, Cuba");
  const KGValue* additional = find(occupation->map(), "Additional");
  REQUIRE(additional->is_list());
  CHECK(additional->list().size() == 2);
  CHECK(additional->list()[1].text() == "Actress");
  // A list counts as one level.
  CHECK(kg_depth(kg) == 3);
  CHECK(kg_leaves(kg).size() == 7);
}

TEST_CASE("parse_kg basics") {
  CHECK(parse_kg("{}").empty());
  CHECK_THROWS_AS(parse_kg("nothing"), NoGraphFound);
  CHECK_THROWS_AS(parse_kg("{\"a\": "), NoGraphFound);
  CHECK_THROWS_AS(parse_kg(R"({"": "x"})"), InvalidValue);
  KnowledgeGraph kg = parse_kg(R"(sure! {"n": 3, "ok": true, "l": ["a", {"b": "c"}]} done)");
  REQUIRE(kg.root.size() == 3);
  CHECK(kg.root[0].value.text() == "3");
  CHECK(kg.root[1].value.text() == "true");
  CHECK(kg.root[2].value.list()[1].is_map());
}

TEST_CASE("parse_kg keeps leaf text verbatim") {
  KnowledgeGraph kg = parse_kg(R"({"k": "  spaced  \"q\" O'Neil "})");
  CHECK(kg.root[0].value.text() == "  spaced  \"q\" O'Neil ");
}

TEST_CASE("serialize_kg") {
  CHECK(serialize_kg({}) == "{}");
  KnowledgeGraph kg{{{"a", KGValue("1")}, {"b", KGValue(KGList{"x", "y"})}}};
  CHECK(serialize_kg(kg) == "{\n  \"a\": \"1\",\n  \"b\": [\"x\", \"y\"]\n}");
  CHECK(parse_kg(serialize_kg(kg)) == kg);
}

TEST_CASE("flatten_kg joins paths and lists") {
  KnowledgeGraph kg = parse_kg(
      R"({"Person": {"Name": "A", "Born": "1990"}, "Occupation": {"Primary": "Singer", "Additional": ["Songwriter", "Actress"]}, "Spouse": "B"})");
  Rows rows = flatten_kg(kg);
  REQUIRE(rows.size() == 5);
  CHECK(rows[0] == TableRow{"Person / Name", "A"});
  CHECK(rows[3] == TableRow{"Occupation / Additional", "Songwriter, Actress"});
  CHECK(rows[4] == TableRow{"Spouse", "B"});
}

TEST_CASE("flatten_kg reuses exemplar keys") {
  KnowledgeGraph kg = parse_kg(R"({"Person": {"born": "1990"}, "spouse": "B"})");
  std::vector<std::string> keys = {"Born", "Spouse:"};
  Rows rows = flatten_kg(kg, keys);
  CHECK(rows[0].key == "Born");
  CHECK(rows[1].key == "Spouse:");
}

TEST_CASE("flatten_kg expands lists of maps") {
  KnowledgeGraph kg = parse_kg(R"({"Awards": [{"Name": "X"}, {"Name": "Y"}]})");
  Rows rows = flatten_kg(kg);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0] == TableRow{"Awards / Name", "X"});
  CHECK(rows[1] == TableRow{"Awards / Name", "Y"});
}

TEST_CASE("table_to_flat_kg and flatten_kg are inverse on flat tables") {
  Rows rows = {{"Name", "A"}, {"Genre", "Rock, Pop"}, {"Label", "C"}};
  KnowledgeGraph kg = table_to_flat_kg(rows);
  CHECK(kg.root[1].value.is_list());
  CHECK(flatten_kg(kg) == rows);
  CHECK(kg_depth(kg) == 2);
  CHECK(kg_depth(KnowledgeGraph{}) == 0);
}

}  // namespace
}  // namespace infosync
