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
#include "infosync/table.h"
#include "infosync/text.h"

namespace infosync {
namespace {

using testing::table;

TEST_CASE("LangCode accepts the registered corpus languages") {
  for (const char* code : {"af", "ar", "ceb", "de", "en", "es", "fr", "hi", "ko", "nl", "ru", "sv",
                           "tr", "zh"}) {
    CHECK(LangCode(code).code() == code);
  }
  CHECK(LangCode("de").name() == "German");
  CHECK(languages::all().size() >= 14);
}

TEST_CASE("LangCode rejects empty, uppercase and unknown tags") {
  CHECK_THROWS_AS(LangCode(""), InvalidLanguage);
  CHECK_THROWS_AS(LangCode("DE"), InvalidLanguage);
  CHECK_THROWS_AS(LangCode("xx"), InvalidLanguage);
}

TEST_CASE("language registry is extensible") {
  CHECK_FALSE(languages::is_registered("it"));
  languages::register_language("it", "Italian");
  CHECK(LangCode("it").name() == "Italian");
  CHECK(languages::from_name("italian")->code() == "it");
  CHECK(languages::from_name("German")->code() == "de");
  CHECK_FALSE(languages::from_name("Klingon"));
  CHECK_THROWS_AS(languages::register_language("It", "x"), InvalidLanguage);
}

TEST_CASE("Category") {
  CHECK(Category("Album").is_known());
  CHECK_FALSE(Category("Volcano").is_known());
  CHECK_THROWS_AS(Category(""), InvalidCategory);
  CHECK_THROWS_AS(Category("  "), InvalidCategory);
  CHECK(known_categories().size() == 9);
}

TEST_CASE("parse_table reads the two-row example") {
  Rows rows = parse_table(R"([["Name","Albert Einstein"],["Birth date","March 14, 1879"]])");
  REQUIRE(rows.size() == 2);
  CHECK(rows[0] == TableRow{"Name", "Albert Einstein"});
  CHECK(rows[1] == TableRow{"Birth date", "March 14, 1879"});
}

TEST_CASE("parse_table on an empty list") { CHECK(parse_table("[]").empty()); }

TEST_CASE("parse_table skips chatter and unescapes apostrophes") {
  Rows rows = parse_table(R"(Here is the table: [["k","O\'Neil"]] hope this helps)");
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].value == "O'Neil");
}

TEST_CASE("parse_table takes the first valid candidate") {
  Rows rows = parse_table(R"(see [1, 2] then [["a","1"]] and [["b","2"],["c","3"]])");
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].key == "a");
}

TEST_CASE("parse_table accepts single-quoted model output") {
  Rows rows = parse_table("[['Pays', 'France'], ['Capitale', 'Paris']]");
  REQUIRE(rows.size() == 2);
  CHECK(rows[0] == TableRow{"Pays", "France"});
}

TEST_CASE("parse_table errors") {
  CHECK_THROWS_AS(parse_table("no table here"), NoTableFound);
  CHECK_THROWS_AS(parse_table("[[\"a\""), NoTableFound);
  CHECK_THROWS_AS(parse_table(R"([["a","b","c"]])"), MalformedRow);
  CHECK_THROWS_AS(parse_table(R"([["a"]])"), MalformedRow);
  CHECK_THROWS_AS(parse_table(R"([["  ","b"]])"), MalformedRow);
  CHECK_THROWS_AS(parse_table(R"([["a",["b"]]])"), MalformedRow);
  // Both derive from ParseError.
  CHECK_THROWS_AS(parse_table("nothing"), ParseError);
}

TEST_CASE("parse_table keeps duplicate keys and empty values") {
  Rows rows = parse_table(R"([["a","1"],["a",""]])");
  REQUIRE(rows.size() == 2);
  CHECK(rows[1] == TableRow{"a", ""});
}

TEST_CASE("serialize_table") {
  CHECK(serialize_table({}) == "[]");
  std::string s = serialize_table({{"k", "O'Neil"}});
  CHECK(s.find(R"(O\'Neil)") != std::string::npos);
  CHECK(s == "[\n    [\"k\",\"O\\'Neil\"]\n]");
  Rows rows = {{"a \"b\"", "c\\d\ne"}, {"中", "ü"}};
  CHECK(parse_table(serialize_table(rows)) == rows);
}

TEST_CASE("normalize_key") {
  CHECK(normalize_key(" Birth  date:") == "birth date");
  CHECK(normalize_key("birth date") == "birth date");
  CHECK(normalize_key("Größe.") == "größe");
  CHECK(normalize_key("Nom :") == "nom");
  CHECK(normalize_key("Ort؟") == "ort");
  CHECK_THROWS_AS(normalize_key(""), EmptyKey);
  CHECK_THROWS_AS(normalize_key("  ...  "), EmptyKey);
  CHECK_FALSE(try_normalize_key(" : "));
  // Composed and decomposed forms coincide.
  CHECK(normalize_key("Cafe\xCC\x81") == normalize_key("Caf\xC3\xA9"));
}

TEST_CASE("normalize_key is idempotent on random keys") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 2000; ++i) {
    std::string k = testing::random_text(rng, 12);
    auto once = try_normalize_key(k);
    if (!once) continue;
    CHECK(normalize_key(*once) == *once);
  }
}

TEST_CASE("normalize_key never empties alphanumeric input") {
  std::mt19937_64 rng(8);
  const std::string alnum = "abcXYZ019";
  for (int i = 0; i < 1000; ++i) {
    std::string k = testing::random_text(rng, 8) + alnum.substr(rng() % alnum.size(), 1) +
                    testing::random_text(rng, 8);
    CHECK(try_normalize_key(k).has_value());
  }
}

TEST_CASE("lint_table flags duplicates, empty values and templates") {
  InfoTable t = table("en", {{"Name", "A"}, {"name:", "B"}, {"Born", ""}, {"X", "{{birth date|1}}"}});
  auto issues = lint_table(t);
  REQUIRE(issues.size() == 3);
  CHECK(issues[0].kind == LintIssue::Kind::kDuplicateKey);
  CHECK(issues[1].kind == LintIssue::Kind::kEmptyValue);
  CHECK(issues[2].kind == LintIssue::Kind::kNestedTemplate);
  CHECK(lint_table(table("en", {{"a", "1"}})).empty());
}

TEST_CASE("SyncInstance enforces the language and identity constraints") {
  auto s = table("de", {{"a", "1"}});
  auto r = table("en", {{"a", "1"}});
  auto g = table("de", {{"a", "1"}});
  CHECK_NOTHROW(SyncInstance(s, r, g));
  CHECK_THROWS_AS(SyncInstance(s, table("de", {}), g), LanguageConstraintViolation);
  CHECK_THROWS_AS(SyncInstance(s, r, table("fr", {})), LanguageConstraintViolation);
  CHECK_THROWS_AS(SyncInstance(s, table("en", {}, "Other"), g), InstanceMismatch);
  CHECK_THROWS_AS(SyncInstance(s, r, table("de", {}, "E", "City")), InstanceMismatch);
}

TEST_CASE("with_rows keeps metadata") {
  InfoTable t = table("de", {{"a", "1"}}, "Ent", "City");
  t.revision_tag = "old-2018";
  InfoTable u = with_rows(t, {{"b", "2"}}, LangCode("en"));
  CHECK(u.entity == "Ent");
  CHECK(u.category.name() == "City");
  CHECK(u.language.code() == "en");
  CHECK(u.revision_tag == "old-2018");
  CHECK(u.rows == Rows{{"b", "2"}});
}

TEST_CASE("text helpers") {
  CHECK(text::trim("　 ab \n") == "ab");
  CHECK(text::collapse_whitespace("a \t\n b") == "a b");
  CHECK(text::lower("ÄBC") == "äbc");
  CHECK(text::split("a, b, c", ", ") == std::vector<std::string>{"a", "b", "c"});
  CHECK(text::join({"a", "b"}, "-") == "a-b");
  CHECK(text::edit_distance(U"kitten", U"sitting") == 3);
  CHECK(text::normalized_edit_distance("", "") == 0.0);
  CHECK(text::starts_with_ci("Infobox person", "infobox"));
}

}  // namespace
}  // namespace infosync
