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

#ifndef INFOSYNC_KNOWLEDGE_GRAPH_H_
#define INFOSYNC_KNOWLEDGE_GRAPH_H_

#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "infosync/table.h"

namespace infosync {

struct KGValue;
struct KGField;

using KGList = std::vector<KGValue>;
// Insertion-ordered; duplicate keys are kept as-is.
using KGMap = std::vector<KGField>;

// A leaf text, a list, or a nested map. Numbers and booleans coming from a
// model are stored as their source text.
struct KGValue {
  std::variant<std::string, KGList, KGMap> data;

  KGValue() = default;
  KGValue(std::string leaf) : data(std::move(leaf)) {}
  KGValue(const char* leaf) : data(std::string(leaf)) {}
  KGValue(KGList list) : data(std::move(list)) {}
  KGValue(KGMap map) : data(std::move(map)) {}

  bool is_text() const { return std::holds_alternative<std::string>(data); }
  bool is_list() const { return std::holds_alternative<KGList>(data); }
  bool is_map() const { return std::holds_alternative<KGMap>(data); }
  const std::string& text() const { return std::get<std::string>(data); }
  const KGList& list() const { return std::get<KGList>(data); }
  const KGMap& map() const { return std::get<KGMap>(data); }
  KGMap& map() { return std::get<KGMap>(data); }
};

struct KGField {
  std::string key;
  KGValue value;
};

bool operator==(const KGValue& a, const KGValue& b);
bool operator==(const KGField& a, const KGField& b);

struct KnowledgeGraph {
  KGMap root;

  bool empty() const { return root.empty(); }
  friend bool operator==(const KnowledgeGraph&, const KnowledgeGraph&) = default;
};

// First balanced top-level map in `text`. Throws NoGraphFound when there is
// none and InvalidValue when maps exist but every one has an empty key.
KnowledgeGraph parse_kg(std::string_view text);

// Two-space indented JSON.
std::string serialize_kg(const KnowledgeGraph& kg);

// Every leaf text in document order.
std::vector<std::string> kg_leaves(const KnowledgeGraph& kg);

// Depth of the deepest leaf; an empty graph has depth 0.
size_t kg_depth(const KnowledgeGraph& kg);

// Deterministic graph-to-table flattening. Each leaf or all-text list becomes
// one row; list leaves are joined with ", ". The row key is the matching
// exemplar key when the joined path or the last path segment normalizes to
// one, otherwise the path segments joined with " / ".
Rows flatten_kg(const KnowledgeGraph& kg, std::span<const std::string> exemplar_keys = {});

// Inverse of the flat case of flatten_kg: one field per row, values holding
// ", " become lists.
KnowledgeGraph table_to_flat_kg(const Rows& rows);

}  // namespace infosync

#endif  // INFOSYNC_KNOWLEDGE_GRAPH_H_
