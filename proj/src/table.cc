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

#include "infosync/table.h"

#include <algorithm>
#include <map>
#include <mutex>
#include <set>
#include <shared_mutex>

#include "infosync/errors.h"
#include "infosync/text.h"
#include "literal.h"

namespace infosync {

namespace {

struct Registry {
  std::shared_mutex mu;
  std::map<std::string, std::string, std::less<>> names = {
      {"af", "Afrikaans"}, {"ar", "Arabic"},  {"ceb", "Cebuano"}, {"de", "German"},
      {"en", "English"},   {"es", "Spanish"}, {"fr", "French"},   {"hi", "Hindi"},
      {"ko", "Korean"},    {"nl", "Dutch"},   {"ru", "Russian"},  {"sv", "Swedish"},
      {"tr", "Turkish"},   {"zh", "Chinese"},
  };
};

Registry& registry() {
  static Registry r;
  return r;
}

bool is_lowercase_tag(std::string_view code) {
  if (code.empty()) return false;
  return std::all_of(code.begin(), code.end(),
                     [](char c) { return (c >= 'a' && c <= 'z') || c == '-'; });
}

// Sentence-final marks in the scripts of the corpus languages.
const std::u32string& terminal_punctuation() {
  static const std::u32string kMarks = U".:;,!?…。：，；！？"
                                       U"،؛؟।։";
  return kMarks;
}

}  // namespace

LangCode::LangCode(std::string code) : code_(std::move(code)) {
  if (!is_lowercase_tag(code_)) {
    throw InvalidLanguage("language code must be nonempty lowercase: '" + code_ + "'");
  }
  if (!languages::is_registered(code_)) {
    throw InvalidLanguage("unregistered language code: '" + code_ + "'");
  }
}

std::string LangCode::name() const {
  Registry& r = registry();
  std::shared_lock lock(r.mu);
  auto it = r.names.find(code_);
  return it == r.names.end() ? code_ : it->second;
}

namespace languages {

void register_language(const std::string& code, const std::string& name) {
  if (!is_lowercase_tag(code)) throw InvalidLanguage("bad language code: '" + code + "'");
  if (name.empty()) throw InvalidLanguage("language name must be nonempty");
  Registry& r = registry();
  std::unique_lock lock(r.mu);
  r.names[code] = name;
}

bool is_registered(std::string_view code) {
  Registry& r = registry();
  std::shared_lock lock(r.mu);
  return r.names.find(code) != r.names.end();
}

std::optional<LangCode> from_name(std::string_view name) {
  std::string wanted = text::lower(text::trim(name));
  std::string code;
  {
    Registry& r = registry();
    std::shared_lock lock(r.mu);
    for (const auto& [c, n] : r.names) {
      if (text::lower(n) == wanted || c == wanted) {
        code = c;
        break;
      }
    }
  }
  if (code.empty()) return std::nullopt;
  return LangCode(code);
}

std::vector<LangCode> all() {
  std::vector<std::string> codes;
  {
    Registry& r = registry();
    std::shared_lock lock(r.mu);
    for (const auto& [c, n] : r.names) codes.push_back(c);
  }
  std::vector<LangCode> out;
  for (auto& c : codes) out.emplace_back(c);
  return out;
}

}  // namespace languages

Category::Category(std::string name) : name_(std::move(name)) {
  if (text::trim(name_).empty()) throw InvalidCategory("category name must be nonempty");
}

bool Category::is_known() const {
  const auto& known = known_categories();
  return std::find(known.begin(), known.end(), name_) != known.end();
}

const std::vector<std::string>& known_categories() {
  static const std::vector<std::string> kCategories = {
      "Album", "Athlete", "City", "College", "Company", "Country", "Musician", "Person", "Stadium",
  };
  return kCategories;
}

InfoTable with_rows(const InfoTable& like, Rows rows, const LangCode& language) {
  InfoTable t = like;
  t.rows = std::move(rows);
  t.language = language;
  return t;
}

Rows parse_table(std::string_view text) {
  bool saw_list = false;
  std::string first_problem;
  size_t pos = 0;
  while ((pos = text.find('[', pos)) != std::string_view::npos) {
    size_t end = 0;
    auto lit = detail::parse_literal(text, pos, &end);
    if (!lit) {
      ++pos;
      continue;
    }
    saw_list = true;
    Rows rows;
    std::string problem;
    for (const auto& item : lit->items) {
      if (item.kind != detail::Literal::Kind::kList || item.items.size() != 2 ||
          !item.items[0].is_text() || !item.items[1].is_text()) {
        problem = "element is not a two-element list of text";
        break;
      }
      std::string key = text::trim(item.items[0].text);
      if (key.empty()) {
        problem = "row with empty key";
        break;
      }
      rows.push_back({std::move(key), item.items[1].text});
    }
    if (problem.empty()) return rows;
    if (first_problem.empty()) first_problem = problem;
    // Lists nested inside a rejected candidate are not top-level.
    pos = end;
  }
  if (!saw_list) throw NoTableFound("no balanced list-of-pairs table in model output");
  throw MalformedRow(first_problem);
}

std::string serialize_table(const Rows& rows) {
  if (rows.empty()) return "[]";
  std::string out = "[\n";
  for (size_t i = 0; i < rows.size(); ++i) {
    out += "    [";
    out += detail::quote(rows[i].key, true);
    out += ",";
    out += detail::quote(rows[i].value, true);
    out += "]";
    if (i + 1 < rows.size()) out += ",";
    out += "\n";
  }
  out += "]";
  return out;
}

std::optional<std::string> try_normalize_key(std::string_view key) {
  std::string s = text::nfc(text::lower(text::nfc(key)));
  std::u32string u = text::to_u32(text::collapse_whitespace(s));
  const auto& marks = terminal_punctuation();
  while (!u.empty() && (u.back() == U' ' || marks.find(u.back()) != std::u32string::npos)) {
    u.pop_back();
  }
  size_t begin = 0;
  while (begin < u.size() && u[begin] == U' ') ++begin;
  if (begin == u.size()) return std::nullopt;
  return text::to_utf8(std::u32string_view(u).substr(begin));
}

std::string normalize_key(std::string_view key) {
  auto out = try_normalize_key(key);
  if (!out) throw EmptyKey("key is empty after normalization: '" + std::string(key) + "'");
  return *out;
}

std::vector<LintIssue> lint_table(const InfoTable& table) {
  std::vector<LintIssue> issues;
  std::set<std::string> seen;
  for (const auto& row : table.rows) {
    auto norm = try_normalize_key(row.key);
    if (!norm) {
      issues.push_back({LintIssue::Kind::kUnnormalizableKey, row.key, "key normalizes to nothing"});
      continue;
    }
    if (!seen.insert(*norm).second) {
      issues.push_back({LintIssue::Kind::kDuplicateKey, row.key, "duplicate key '" + *norm + "'"});
    }
    if (text::trim(row.value).empty()) {
      issues.push_back({LintIssue::Kind::kEmptyValue, row.key, "empty value"});
    }
    if (row.value.find("{{") != std::string::npos) {
      issues.push_back({LintIssue::Kind::kNestedTemplate, row.key, "value holds raw template markup"});
    }
  }
  return issues;
}

SyncInstance::SyncInstance(InfoTable source, InfoTable reference, InfoTable gold)
    : source_(std::move(source)), reference_(std::move(reference)), gold_(std::move(gold)) {
  if (source_.language != gold_.language) {
    throw LanguageConstraintViolation("source (" + source_.language.code() + ") and gold (" +
                                      gold_.language.code() + ") languages differ");
  }
  if (source_.language == reference_.language) {
    throw LanguageConstraintViolation("source and reference share language " +
                                      source_.language.code());
  }
  if (source_.entity != reference_.entity || source_.entity != gold_.entity) {
    throw InstanceMismatch("tables describe different entities");
  }
  if (source_.category != reference_.category || source_.category != gold_.category) {
    throw InstanceMismatch("tables belong to different categories");
  }
}

}  // namespace infosync
