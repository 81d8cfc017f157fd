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

// Prompt templates. Each template is a versioned text asset with named
// `{{slot}}` placeholders; render() fills them and match() recovers them from a
// rendered prompt.

#ifndef INFOSYNC_PROMPTS_H_
#define INFOSYNC_PROMPTS_H_

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace infosync::prompts {

enum class PromptKind {
  kTranslateToPivot,
  kTableToKG,
  kMergeKGs,
  kKGToTable,
  kBackTranslate,
  kDirect,
  kAlignUpdateJoint,
  kAlignUpdateTwo,
  kDirectDecompose,
  kAlignKeys,
  kEvaluate,
};

using Slots = std::map<std::string, std::string>;

const std::vector<PromptKind>& all_kinds();
std::string_view asset_name(PromptKind kind);
std::string_view version();

// Raw template text.
std::string_view template_text(PromptKind kind);

// Slot names in order of first appearance.
std::vector<std::string> slot_names(PromptKind kind);

// Throws ConfigError when a slot is missing or an extra slot is given.
std::string render(PromptKind kind, const Slots& slots);

// Inverse of render for prompts produced from this template. Slots that hold
// a language or category may not span lines.
std::optional<Slots> match(PromptKind kind, std::string_view prompt);

// The template a prompt was rendered from, with its slots.
std::optional<std::pair<PromptKind, Slots>> identify(std::string_view prompt);

// Follow-up prompt sent once after output that failed to parse.
std::string with_reprompt_note(std::string_view prompt, std::string_view problem);
// Removes a note added by with_reprompt_note, if present.
std::string_view strip_reprompt_note(std::string_view prompt);

}  // namespace infosync::prompts

#endif  // INFOSYNC_PROMPTS_H_
