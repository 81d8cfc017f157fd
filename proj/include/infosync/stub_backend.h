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

// Deterministic offline backend. It recognizes which prompt template a
// request was rendered from and answers with rule-based transformations:
// lexicon translation, flat graph conversion, reference-preferring merges,
// key alignment and a value-token comparator for evaluation.
//
// Rule directory layout:
//
//   lexicons/<from>-<to>.tsv   phrase<TAB>phrase, '#' starts a comment line
//   rules.json                 optional:
//     {"canned": [{"pattern": "...", "response": "..."}],
//      "faults": {"merge_drop_keys": ["..."], "kg_drop_keys": ["..."]}}
//
// A canned pattern is a substring of the prompt, or an ECMAScript regex when
// written as "regex:<expr>". Canned responses take priority over the rules.

#ifndef INFOSYNC_STUB_BACKEND_H_
#define INFOSYNC_STUB_BACKEND_H_

#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "infosync/llm_gateway.h"
#include "infosync/table.h"

namespace infosync {

struct CannedResponse {
  std::string pattern;
  std::string response;
};

class StubRuleSet {
 public:
  StubRuleSet() = default;

  // Throws MissingFile, ConfigError.
  static StubRuleSet load(const std::filesystem::path& dir);

  // Throws ConfigError when either side is empty.
  void add_entry(const std::string& from, const std::string& to, const std::string& phrase,
                 const std::string& translation);
  void add_canned(CannedResponse canned) { canned_.push_back(std::move(canned)); }
  void drop_on_merge(const std::string& key);
  void drop_on_kg(const std::string& key);

  // Exact entry, then the inverse lexicon, then composition through English,
  // then part-wise on ", ", otherwise the text itself.
  std::string translate(const std::string& text, const std::string& from,
                        const std::string& to) const;

  const std::vector<CannedResponse>& canned() const { return canned_; }
  const std::set<std::string>& merge_drop_keys() const { return merge_drop_; }
  const std::set<std::string>& kg_drop_keys() const { return kg_drop_; }
  size_t lexicon_size(const std::string& from, const std::string& to) const;

 private:
  std::optional<std::string> lookup(const std::string& text, const std::string& from,
                                    const std::string& to) const;
  std::optional<std::string> one_hop(const std::string& text, const std::string& from,
                                     const std::string& to) const;

  using Lexicon = std::map<std::string, std::string>;
  std::map<std::pair<std::string, std::string>, Lexicon> lexicons_;
  // Inverse of each lexicon; the first entry for a translation wins.
  std::map<std::pair<std::string, std::string>, Lexicon> inverse_;
  std::vector<CannedResponse> canned_;
  std::set<std::string> merge_drop_;
  std::set<std::string> kg_drop_;
};

class StubBackend : public CompletionBackend {
 public:
  explicit StubBackend(StubRuleSet rules) : rules_(std::move(rules)) {}

  std::string complete(const CompletionRequest& request) override;
  std::string name() const override { return "stub"; }
  const StubRuleSet& rules() const { return rules_; }

 private:
  StubRuleSet rules_;
};

}  // namespace infosync

#endif  // INFOSYNC_STUB_BACKEND_H_
