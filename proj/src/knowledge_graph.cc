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

#include "infosync/knowledge_graph.h"

#include <algorithm>
#include <map>
#include <optional>

#include "infosync/errors.h"
#include "infosync/text.h"
#include "literal.h"

namespace infosync {

bool operator==(const KGValue& a, const KGValue& b) { return a.data == b.data; }
bool operator==(const KGField& a, const KGField& b) {
  return a.key == b.key && a.value == b.value;
}

namespace {

std::optional<KGValue> convert(const detail::Literal& lit) {
  switch (lit.kind) {
    case detail::Literal::Kind::kString:
    case detail::Literal::Kind::kBare:
      return KGValue(lit.text);
    case detail::Literal::Kind::kList: {
      KGList list;
      for (const auto& item : lit.items) {
        auto v = convert(item);
        if (!v) return std::nullopt;
        list.push_back(std::move(*v));
      }
      return KGValue(std::move(list));
    }
    case detail::Literal::Kind::kMap: {
      KGMap map;
      for (const auto& [key, item] : lit.fields) {
        if (text::trim(key).empty()) return std::nullopt;
        auto v = convert(item);
        if (!v) return std::nullopt;
        map.push_back({key, std::move(*v)});
      }
      return KGValue(std::move(map));
    }
  }
  return std::nullopt;
}

void indent(std::string& out, int level) { out.append(static_cast<size_t>(level) * 2, ' '); }

void write_value(std::string& out, const KGValue& v, int level);

void write_map(std::string& out, const KGMap& map, int level) {
  if (map.empty()) {
    out += "{}";
    return;
  }
  out += "{\n";
  for (size_t i = 0; i < map.size(); ++i) {
    indent(out, level + 1);
    out += detail::quote(map[i].key, false);
    out += ": ";
    write_value(out, map[i].value, level + 1);
    if (i + 1 < map.size()) out += ",";
    out += "\n";
  }
  indent(out, level);
  out += "}";
}

void write_value(std::string& out, const KGValue& v, int level) {
  if (v.is_text()) {
    out += detail::quote(v.text(), false);
  } else if (v.is_list()) {
    const auto& list = v.list();
    out += "[";
    for (size_t i = 0; i < list.size(); ++i) {
      if (i) out += ", ";
      write_value(out, list[i], level);
    }
    out += "]";
  } else {
    write_map(out, v.map(), level);
  }
}

void collect_leaves(const KGValue& v, std::vector<std::string>& out) {
  if (v.is_text()) {
    out.push_back(v.text());
  } else if (v.is_list()) {
    for (const auto& item : v.list()) collect_leaves(item, out);
  } else {
    for (const auto& f : v.map()) collect_leaves(f.value, out);
  }
}

size_t depth_of(const KGValue& v) {
  if (v.is_text()) return 0;
  size_t deepest = 0;
  if (v.is_list()) {
    for (const auto& item : v.list()) deepest = std::max(deepest, depth_of(item));
  } else {
    for (const auto& f : v.map()) deepest = std::max(deepest, depth_of(f.value));
  }
  return deepest + 1;
}

class Flattener {
 public:
  explicit Flattener(std::span<const std::string> exemplar_keys) {
    for (const auto& k : exemplar_keys) {
      if (auto norm = try_normalize_key(k)) exemplar_.emplace(*norm, k);
    }
  }

  void map(const KGMap& m, std::vector<std::string>& path, Rows& rows) {
    for (const auto& f : m) {
      path.push_back(f.key);
      value(f.value, path, rows);
      path.pop_back();
    }
  }

 private:
  void value(const KGValue& v, std::vector<std::string>& path, Rows& rows) {
    if (v.is_text()) {
      rows.push_back({key_for(path), v.text()});
    } else if (v.is_map()) {
      map(v.map(), path, rows);
    } else {
      const auto& list = v.list();
      bool all_text = std::all_of(list.begin(), list.end(),
                                  [](const KGValue& item) { return item.is_text(); });
      if (all_text) {
        std::vector<std::string> parts;
        for (const auto& item : list) parts.push_back(item.text());
        rows.push_back({key_for(path), text::join(parts, ", ")});
      } else {
        for (const auto& item : list) value(item, path, rows);
      }
    }
  }

  std::string key_for(const std::vector<std::string>& path) const {
    std::string joined = text::join(path, " / ");
    if (auto norm = try_normalize_key(joined)) {
      if (auto it = exemplar_.find(*norm); it != exemplar_.end()) return it->second;
    }
    if (!path.empty()) {
      if (auto norm = try_normalize_key(path.back())) {
        if (auto it = exemplar_.find(*norm); it != exemplar_.end()) return it->second;
      }
    }
    return joined;
  }

  std::map<std::string, std::string> exemplar_;
};

}  // namespace

KnowledgeGraph parse_kg(std::string_view text) {
  bool saw_map = false;
  size_t pos = 0;
  while ((pos = text.find('{', pos)) != std::string_view::npos) {
    size_t end = 0;
    auto lit = detail::parse_literal(text, pos, &end);
    if (!lit) {
      ++pos;
      continue;
    }
    saw_map = true;
    if (auto v = convert(*lit)) return KnowledgeGraph{std::move(v->map())};
    pos = end;
  }
  if (!saw_map) throw NoGraphFound("no balanced nested-map graph in model output");
  throw InvalidValue("graph contains an empty key");
}

std::string serialize_kg(const KnowledgeGraph& kg) {
  std::string out;
  write_map(out, kg.root, 0);
  return out;
}

std::vector<std::string> kg_leaves(const KnowledgeGraph& kg) {
  std::vector<std::string> out;
  for (const auto& f : kg.root) collect_leaves(f.value, out);
  return out;
}

size_t kg_depth(const KnowledgeGraph& kg) {
  if (kg.root.empty()) return 0;
  return depth_of(KGValue(kg.root));
}

Rows flatten_kg(const KnowledgeGraph& kg, std::span<const std::string> exemplar_keys) {
  Flattener flattener(exemplar_keys);
  Rows rows;
  std::vector<std::string> path;
  flattener.map(kg.root, path, rows);
  return rows;
}

KnowledgeGraph table_to_flat_kg(const Rows& rows) {
  KnowledgeGraph kg;
  for (const auto& row : rows) {
    auto parts = text::split(row.value, ", ");
    if (parts.size() == 1) {
      kg.root.push_back({row.key, KGValue(row.value)});
    } else {
      KGList list;
      for (auto& p : parts) list.emplace_back(std::move(p));
      kg.root.push_back({row.key, KGValue(std::move(list))});
    }
  }
  return kg;
}

}  // namespace infosync
