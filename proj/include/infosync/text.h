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

// UTF-8 string helpers shared by the parsers, aligners and metrics.

#ifndef INFOSYNC_TEXT_H_
#define INFOSYNC_TEXT_H_

#include <string>
#include <string_view>
#include <vector>

namespace infosync::text {

// Canonical composed form (NFC). Invalid UTF-8 is passed through unchanged.
std::string nfc(std::string_view utf8);

// Locale-independent lowercase.
std::string lower(std::string_view utf8);

// Strips Unicode whitespace from both ends.
std::string trim(std::string_view utf8);

// Replaces every run of Unicode whitespace by a single ASCII space.
std::string collapse_whitespace(std::string_view utf8);

std::u32string to_u32(std::string_view utf8);
std::string to_utf8(std::u32string_view codepoints);

std::vector<std::string> split(std::string_view s, std::string_view sep);
std::string join(const std::vector<std::string>& parts, std::string_view sep);

// Splits a normalized key on single spaces.
std::vector<std::string> tokens(std::string_view normalized);

// Levenshtein distance over codepoints.
size_t edit_distance(std::u32string_view a, std::u32string_view b);

// Edit distance divided by the longer length; 0 for two empty strings.
double normalized_edit_distance(std::string_view a, std::string_view b);

bool starts_with_ci(std::string_view s, std::string_view prefix);

}  // namespace infosync::text

#endif  // INFOSYNC_TEXT_H_
