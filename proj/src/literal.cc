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

#include "literal.h"

#include <cstdio>

#include "infosync/text.h"

namespace infosync::detail {

namespace {

constexpr int kMaxDepth = 256;

class Reader {
 public:
  explicit Reader(std::string_view text, size_t pos) : s_(text), pos_(pos) {}

  size_t pos() const { return pos_; }

  std::optional<Literal> value(int depth) {
    if (depth > kMaxDepth) return std::nullopt;
    skip_space();
    if (pos_ >= s_.size()) return std::nullopt;
    char c = s_[pos_];
    if (c == '"' || c == '\'') return string_literal();
    if (c == '[') return list(depth);
    if (c == '{') return map(depth);
    return bare();
  }

 private:
  void skip_space() {
    while (pos_ < s_.size() &&
           (s_[pos_] == ' ' || s_[pos_] == '\t' || s_[pos_] == '\n' || s_[pos_] == '\r')) {
      ++pos_;
    }
  }

  static bool is_bare_char(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
           c == '_' || c == '-' || c == '+' || c == '.';
  }

  std::optional<Literal> bare() {
    size_t start = pos_;
    while (pos_ < s_.size() && is_bare_char(s_[pos_])) ++pos_;
    if (pos_ == start) return std::nullopt;
    Literal lit;
    lit.kind = Literal::Kind::kBare;
    lit.text = std::string(s_.substr(start, pos_ - start));
    return lit;
  }

  static int hex_digit(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
  }

  std::optional<char32_t> hex4() {
    if (pos_ + 4 > s_.size()) return std::nullopt;
    char32_t v = 0;
    for (int i = 0; i < 4; ++i) {
      int d = hex_digit(s_[pos_ + i]);
      if (d < 0) return std::nullopt;
      v = v * 16 + static_cast<char32_t>(d);
    }
    pos_ += 4;
    return v;
  }

  std::optional<Literal> string_literal() {
    const char quote_char = s_[pos_++];
    std::string out;
    while (pos_ < s_.size()) {
      char c = s_[pos_++];
      if (c == quote_char) {
        Literal lit;
        lit.kind = Literal::Kind::kString;
        lit.text = std::move(out);
        return lit;
      }
      if (c != '\\') {
        out.push_back(c);
        continue;
      }
      if (pos_ >= s_.size()) return std::nullopt;
      char e = s_[pos_++];
      switch (e) {
        case 'n': out.push_back('\n'); break;
        case 't': out.push_back('\t'); break;
        case 'r': out.push_back('\r'); break;
        case 'b': out.push_back('\b'); break;
        case 'f': out.push_back('\f'); break;
        case 'u': {
          auto cp = hex4();
          if (!cp) return std::nullopt;
          char32_t code = *cp;
          if (code >= 0xD800 && code <= 0xDBFF && pos_ + 1 < s_.size() && s_[pos_] == '\\' &&
              s_[pos_ + 1] == 'u') {
            size_t save = pos_;
            pos_ += 2;
            auto low = hex4();
            if (low && *low >= 0xDC00 && *low <= 0xDFFF) {
              code = 0x10000 + ((code - 0xD800) << 10) + (*low - 0xDC00);
            } else {
              pos_ = save;
            }
          }
          out += text::to_utf8(std::u32string(1, code));
          break;
        }
        default:
          // \" \' \\ \/ and anything unknown keep the escaped character.
          out.push_back(e);
      }
    }
    return std::nullopt;
  }

  std::optional<Literal> list(int depth) {
    ++pos_;  // '['
    Literal lit;
    lit.kind = Literal::Kind::kList;
    while (true) {
      skip_space();
      if (pos_ >= s_.size()) return std::nullopt;
      if (s_[pos_] == ']') {
        ++pos_;
        return lit;
      }
      auto item = value(depth + 1);
      if (!item) return std::nullopt;
      lit.items.push_back(std::move(*item));
      skip_space();
      if (pos_ >= s_.size()) return std::nullopt;
      if (s_[pos_] == ',') {
        ++pos_;
      } else if (s_[pos_] != ']') {
        return std::nullopt;
      }
    }
  }

  std::optional<Literal> map(int depth) {
    ++pos_;  // '{'
    Literal lit;
    lit.kind = Literal::Kind::kMap;
    while (true) {
      skip_space();
      if (pos_ >= s_.size()) return std::nullopt;
      if (s_[pos_] == '}') {
        ++pos_;
        return lit;
      }
      std::optional<Literal> key;
      if (s_[pos_] == '"' || s_[pos_] == '\'') {
        key = string_literal();
      } else {
        key = bare();
      }
      if (!key) return std::nullopt;
      skip_space();
      if (pos_ >= s_.size() || s_[pos_] != ':') return std::nullopt;
      ++pos_;
      auto item = value(depth + 1);
      if (!item) return std::nullopt;
      lit.fields.emplace_back(std::move(key->text), std::move(*item));
      skip_space();
      if (pos_ >= s_.size()) return std::nullopt;
      if (s_[pos_] == ',') {
        ++pos_;
      } else if (s_[pos_] != '}') {
        return std::nullopt;
      }
    }
  }

  std::string_view s_;
  size_t pos_;
};

}  // namespace

std::optional<Literal> parse_literal(std::string_view text, size_t pos, size_t* end) {
  Reader reader(text, pos);
  auto lit = reader.value(0);
  if (lit && end) *end = reader.pos();
  return lit;
}

std::string quote(std::string_view s, bool escape_apostrophe) {
  std::string out;
  out.reserve(s.size() + 2);
  out.push_back('"');
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      case '\'':
        if (escape_apostrophe) {
          out += "\\'";
        } else {
          out.push_back(c);
        }
        break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", static_cast<unsigned>(c));
          out += buf;
        } else {
          out.push_back(c);
        }
    }
  }
  out.push_back('"');
  return out;
}

}  // namespace infosync::detail
