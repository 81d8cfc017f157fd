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

// Lenient reader for the JSON-like literals models emit: single or double
// quoted strings, backslash-escaped apostrophes, bare scalars and trailing
// commas are all accepted.

#ifndef INFOSYNC_SRC_LITERAL_H_
#define INFOSYNC_SRC_LITERAL_H_

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace infosync::detail {

struct Literal {
  enum class Kind { kString, kBare, kList, kMap };
  Kind kind = Kind::kString;
  std::string text;                                      // kString, kBare
  std::vector<Literal> items;                            // kList
  std::vector<std::pair<std::string, Literal>> fields;   // kMap

  bool is_text() const { return kind == Kind::kString || kind == Kind::kBare; }
};

// Parses one literal at `pos` (leading whitespace allowed). On success
// `*end` is one past the literal. Returns nullopt on any syntax error.
std::optional<Literal> parse_literal(std::string_view text, size_t pos, size_t* end);

// Quotes `s` with double quotes. Apostrophes become \' when requested.
std::string quote(std::string_view s, bool escape_apostrophe);

}  // namespace infosync::detail

#endif  // INFOSYNC_SRC_LITERAL_H_
