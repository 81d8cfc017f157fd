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

// Entity-centric key-value tables and the list-of-pairs wire format used in
// every prompt:
//
//   [
//       ["key","value"],
//       ["key","value"]
//   ]
//
// Apostrophes are written as \' so that model-side parsers that quote with
// single quotes keep working.

#ifndef INFOSYNC_TABLE_H_
#define INFOSYNC_TABLE_H_

#include <compare>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace infosync {

// Registered language tag such as "de" or "ceb".
class LangCode {
 public:
  // Throws InvalidLanguage unless `code` is nonempty, lowercase and
  // registered.
  explicit LangCode(std::string code);

  const std::string& code() const { return code_; }

  // English display name ("German"), used when filling prompts.
  std::string name() const;

  friend auto operator<=>(const LangCode&, const LangCode&) = default;

 private:
  std::string code_;
};

// Process-wide language registry; starts with the 14 corpus languages.
namespace languages {
void register_language(const std::string& code, const std::string& name);
bool is_registered(std::string_view code);
std::optional<LangCode> from_name(std::string_view name);
std::vector<LangCode> all();
}  // namespace languages

class Category {
 public:
  // Throws InvalidCategory on an empty name. Names outside the nine corpus
  // categories are accepted.
  explicit Category(std::string name);

  const std::string& name() const { return name_; }
  bool is_known() const;

  friend auto operator<=>(const Category&, const Category&) = default;

 private:
  std::string name_;
};

const std::vector<std::string>& known_categories();

struct TableRow {
  std::string key;
  std::string value;

  friend bool operator==(const TableRow&, const TableRow&) = default;
};

using Rows = std::vector<TableRow>;

struct InfoTable {
  std::string entity;
  LangCode language;
  Category category;
  Rows rows;
  std::optional<std::string> revision_tag;

  friend bool operator==(const InfoTable&, const InfoTable&) = default;
};

InfoTable with_rows(const InfoTable& like, Rows rows, const LangCode& language);

// Returns the first balanced top-level list in `text` whose elements are all
// two-element lists of text. Surrounding chatter is ignored. Throws
// NoTableFound when no balanced list exists, MalformedRow when lists exist
// but none has the row shape.
Rows parse_table(std::string_view text);

std::string serialize_table(const Rows& rows);

// Trimmed, whitespace-collapsed, lowercased NFC with terminal punctuation
// removed. Idempotent. Throws EmptyKey when nothing is left.
std::string normalize_key(std::string_view key);

// Like normalize_key but returns nullopt instead of throwing.
std::optional<std::string> try_normalize_key(std::string_view key);

struct LintIssue {
  enum class Kind { kDuplicateKey, kEmptyValue, kNestedTemplate, kUnnormalizableKey };
  Kind kind;
  std::string key;
  std::string message;
};

std::vector<LintIssue> lint_table(const InfoTable& table);

// One (source, reference, gold) triple. The constructor enforces that source
// and gold share a language, reference uses a different one, and all three
// describe the same entity and category.
class SyncInstance {
 public:
  SyncInstance(InfoTable source, InfoTable reference, InfoTable gold);

  const InfoTable& source() const { return source_; }
  const InfoTable& reference() const { return reference_; }
  const InfoTable& gold() const { return gold_; }

 private:
  InfoTable source_;
  InfoTable reference_;
  InfoTable gold_;
};

}  // namespace infosync

#endif  // INFOSYNC_TABLE_H_
