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

#include "infosync/prompts.h"

#include <algorithm>
#include <set>

#include "infosync/errors.h"

namespace infosync::prompts {

namespace assets {
extern const std::string_view kVersion;
const std::map<std::string_view, std::string_view>& all();
}  // namespace assets

namespace {

constexpr std::string_view kRepromptMarker = "\n\n----\nYour previous answer could not be parsed (";

struct Piece {
  bool is_slot;
  std::string text;
};

std::vector<Piece> pieces(std::string_view tmpl) {
  std::vector<Piece> out;
  size_t pos = 0;
  while (pos < tmpl.size()) {
    size_t open = tmpl.find("{{", pos);
    if (open == std::string_view::npos) break;
    size_t close = tmpl.find("}}", open + 2);
    if (close == std::string_view::npos) break;
    std::string_view name = tmpl.substr(open + 2, close - open - 2);
    bool valid = !name.empty() && std::all_of(name.begin(), name.end(), [](char c) {
      return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_';
    });
    if (!valid) {
      out.push_back({false, std::string(tmpl.substr(pos, open + 2 - pos))});
      pos = open + 2;
      continue;
    }
    if (open > pos) out.push_back({false, std::string(tmpl.substr(pos, open - pos))});
    out.push_back({true, std::string(name)});
    pos = close + 2;
  }
  if (pos < tmpl.size()) out.push_back({false, std::string(tmpl.substr(pos))});
  // Adjacent literals from skipped braces are merged.
  std::vector<Piece> merged;
  for (auto& p : out) {
    if (!p.is_slot && !merged.empty() && !merged.back().is_slot) {
      merged.back().text += p.text;
    } else {
      merged.push_back(std::move(p));
    }
  }
  return merged;
}

bool single_line_slot(const std::string& name) {
  static const std::set<std::string> kSingle = {"language", "reference_language", "pivot",
                                                "category", "languages"};
  return kSingle.count(name) > 0;
}

}  // namespace

const std::vector<PromptKind>& all_kinds() {
  static const std::vector<PromptKind> kKinds = {
      PromptKind::kTranslateToPivot, PromptKind::kTableToKG,        PromptKind::kMergeKGs,
      PromptKind::kKGToTable,        PromptKind::kBackTranslate,    PromptKind::kDirect,
      PromptKind::kAlignUpdateJoint, PromptKind::kAlignUpdateTwo,   PromptKind::kDirectDecompose,
      PromptKind::kAlignKeys,        PromptKind::kEvaluate,
  };
  return kKinds;
}

std::string_view asset_name(PromptKind kind) {
  switch (kind) {
    case PromptKind::kTranslateToPivot: return "translate_to_pivot";
    case PromptKind::kTableToKG: return "table_to_kg";
    case PromptKind::kMergeKGs: return "merge_kgs";
    case PromptKind::kKGToTable: return "kg_to_table";
    case PromptKind::kBackTranslate: return "back_translate";
    case PromptKind::kDirect: return "direct_prompt";
    case PromptKind::kAlignUpdateJoint: return "align_update_joint";
    case PromptKind::kAlignUpdateTwo: return "align_update_two";
    case PromptKind::kDirectDecompose: return "direct_decompose";
    case PromptKind::kAlignKeys: return "align_keys";
    case PromptKind::kEvaluate: return "evaluate";
  }
  return "";
}

std::string_view version() { return assets::kVersion; }

std::string_view template_text(PromptKind kind) {
  const auto& all = assets::all();
  auto it = all.find(asset_name(kind));
  if (it == all.end()) throw ConfigError("missing prompt asset " + std::string(asset_name(kind)));
  return it->second;
}

std::vector<std::string> slot_names(PromptKind kind) {
  std::vector<std::string> names;
  for (const auto& p : pieces(template_text(kind))) {
    if (p.is_slot && std::find(names.begin(), names.end(), p.text) == names.end()) {
      names.push_back(p.text);
    }
  }
  return names;
}

std::string render(PromptKind kind, const Slots& slots) {
  auto names = slot_names(kind);
  for (const auto& [name, value] : slots) {
    if (std::find(names.begin(), names.end(), name) == names.end()) {
      throw ConfigError("prompt " + std::string(asset_name(kind)) + " has no slot '" + name + "'");
    }
  }
  std::string out;
  for (const auto& p : pieces(template_text(kind))) {
    if (!p.is_slot) {
      out += p.text;
      continue;
    }
    auto it = slots.find(p.text);
    if (it == slots.end()) {
      throw ConfigError("prompt " + std::string(asset_name(kind)) + " needs slot '" + p.text + "'");
    }
    out += it->second;
  }
  return out;
}

std::optional<Slots> match(PromptKind kind, std::string_view prompt) {
  auto ps = pieces(template_text(kind));
  Slots slots;
  size_t pos = 0;
  for (size_t i = 0; i < ps.size(); ++i) {
    const Piece& p = ps[i];
    if (!p.is_slot) {
      if (i == 0) {
        if (prompt.substr(0, p.text.size()) != p.text) return std::nullopt;
        pos = p.text.size();
      } else if (prompt.substr(pos, p.text.size()) != p.text) {
        return std::nullopt;
      } else {
        pos += p.text.size();
      }
      continue;
    }
    size_t end = prompt.size();
    if (i + 1 < ps.size()) {
      end = prompt.find(ps[i + 1].text, pos);
      if (end == std::string_view::npos) return std::nullopt;
    }
    std::string value(prompt.substr(pos, end - pos));
    if (single_line_slot(p.text) && value.find('\n') != std::string::npos) return std::nullopt;
    auto [it, inserted] = slots.emplace(p.text, value);
    if (!inserted && it->second != value) return std::nullopt;
    pos = end;
  }
  return slots;
}

std::optional<std::pair<PromptKind, Slots>> identify(std::string_view prompt) {
  prompt = strip_reprompt_note(prompt);
  for (PromptKind kind : all_kinds()) {
    if (auto slots = match(kind, prompt)) return std::make_pair(kind, std::move(*slots));
  }
  return std::nullopt;
}

std::string with_reprompt_note(std::string_view prompt, std::string_view problem) {
  std::string out(strip_reprompt_note(prompt));
  out += kRepromptMarker;
  out += problem;
  out += "). Reply again following the output schema exactly.";
  return out;
}

std::string_view strip_reprompt_note(std::string_view prompt) {
  size_t at = prompt.rfind(kRepromptMarker);
  if (at == std::string_view::npos) return prompt;
  return prompt.substr(0, at);
}

}  // namespace infosync::prompts
