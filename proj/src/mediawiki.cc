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

#include "infosync/mediawiki.h"

#include <httplib.h>

#include <nlohmann/json.hpp>
#include <regex>
#include <thread>

#include "infosync/errors.h"
#include "infosync/text.h"

namespace infosync {

namespace {

// Index one past the template or link closing at depth zero, or npos.
size_t skip_balanced(const std::string& s, size_t pos, const char* open, const char* close) {
  int depth = 0;
  while (pos + 1 < s.size()) {
    if (s.compare(pos, 2, open) == 0) {
      ++depth;
      pos += 2;
    } else if (s.compare(pos, 2, close) == 0) {
      --depth;
      pos += 2;
      if (depth == 0) return pos;
    } else {
      ++pos;
    }
  }
  return std::string::npos;
}

std::string strip_markup(std::string v) {
  static const std::regex kComment(R"(<!--[\s\S]*?-->)");
  static const std::regex kRefPair(R"(<ref[^>/]*>[\s\S]*?</ref\s*>)", std::regex::icase);
  static const std::regex kRefSingle(R"(<ref[^>]*/>)", std::regex::icase);
  static const std::regex kBr(R"(\s*<br\s*/?>\s*)", std::regex::icase);
  static const std::regex kLabeledLink(R"(\[\[[^\[\]|]*\|([^\[\]]*)\]\])");
  static const std::regex kLink(R"(\[\[([^\[\]|]*)\]\])");
  static const std::regex kExternal(R"(\[https?://\S+\s+([^\]]*)\])");
  static const std::regex kEmphasis("'{2,}");
  v = std::regex_replace(v, kComment, "");
  v = std::regex_replace(v, kRefPair, "");
  v = std::regex_replace(v, kRefSingle, "");
  v = std::regex_replace(v, kBr, ", ");
  v = std::regex_replace(v, kLabeledLink, "$1");
  v = std::regex_replace(v, kLink, "$1");
  v = std::regex_replace(v, kExternal, "$1");
  v = std::regex_replace(v, kEmphasis, "");
  v = text::collapse_whitespace(v);
  v = text::trim(v);
  while (v.size() >= 1 && v.back() == ',') v = text::trim(v.substr(0, v.size() - 1));
  return v;
}

std::vector<std::string> split_top_level(const std::string& body) {
  std::vector<std::string> parts;
  std::string current;
  int braces = 0, brackets = 0;
  for (size_t i = 0; i < body.size(); ++i) {
    if (body.compare(i, 2, "{{") == 0) {
      ++braces;
      current += "{{";
      ++i;
    } else if (body.compare(i, 2, "}}") == 0 && braces > 0) {
      --braces;
      current += "}}";
      ++i;
    } else if (body.compare(i, 2, "[[") == 0) {
      ++brackets;
      current += "[[";
      ++i;
    } else if (body.compare(i, 2, "]]") == 0 && brackets > 0) {
      --brackets;
      current += "]]";
      ++i;
    } else if (body[i] == '|' && braces == 0 && brackets == 0) {
      parts.push_back(current);
      current.clear();
    } else {
      current += body[i];
    }
  }
  parts.push_back(current);
  return parts;
}

}  // namespace

HttpGetter default_http_getter() {
  return [](const std::string& host, const std::string& path) {
    httplib::Client client("https://" + host);
    client.set_connection_timeout(std::chrono::seconds(30));
    client.set_read_timeout(std::chrono::seconds(60));
    httplib::Headers headers = {{"User-Agent", "infosync/1.0 (table synchronization research)"}};
    auto res = client.Get(path, headers);
    if (!res) return HttpResponse{0, httplib::to_string(res.error())};
    return HttpResponse{res->status, res->body};
  };
}

const std::vector<std::string>& infobox_template_prefixes() {
  static const std::vector<std::string> kPrefixes = {"infobox", "ficha", "info/", "ज्ञानसन्दूक",
                                                     "بطاقة", "карточка", "정보상자"};
  return kPrefixes;
}

Rows parse_infobox(const std::string& wikitext) {
  size_t pos = 0;
  while ((pos = wikitext.find("{{", pos)) != std::string::npos) {
    size_t name_end = wikitext.find_first_of("|}\n", pos + 2);
    std::string name = text::lower(text::trim(wikitext.substr(pos + 2, name_end - pos - 2)));
    bool is_infobox = false;
    for (const auto& prefix : infobox_template_prefixes()) {
      if (text::starts_with_ci(name, prefix)) is_infobox = true;
    }
    if (!is_infobox) {
      pos += 2;
      continue;
    }
    size_t end = skip_balanced(wikitext, pos, "{{", "}}");
    if (end == std::string::npos) throw NoInfobox("unterminated infobox template");
    std::string body = wikitext.substr(pos + 2, end - pos - 4);
    Rows rows;
    auto params = split_top_level(body);
    for (size_t i = 1; i < params.size(); ++i) {
      size_t eq = params[i].find('=');
      if (eq == std::string::npos) continue;
      std::string key = text::collapse_whitespace(text::trim(params[i].substr(0, eq)));
      std::string value = strip_markup(params[i].substr(eq + 1));
      if (key.empty() || value.empty()) continue;
      rows.push_back({key, value});
    }
    return rows;
  }
  throw NoInfobox("no infobox template in page text");
}

std::string revision_query_path(const std::string& title, const std::string& as_of) {
  return "/w/api.php?action=query&format=json&formatversion=2&prop=revisions"
         "&rvprop=ids%7Ctimestamp%7Ccontent&rvslots=main&rvlimit=1&rvdir=older&rvstart=" +
         httplib::detail::encode_query_param(as_of) +
         "&titles=" + httplib::detail::encode_query_param(title);
}

RevisionFetcher::RevisionFetcher(HttpGetter getter, std::chrono::milliseconds min_interval)
    : getter_(std::move(getter)),
      min_interval_(min_interval),
      sleep_([](std::chrono::milliseconds d) { std::this_thread::sleep_for(d); }) {}

void RevisionFetcher::pace() {
  std::lock_guard lock(mu_);
  auto now = std::chrono::steady_clock::now();
  if (!first_) {
    auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(now - last_);
    if (elapsed < min_interval_) {
      sleep_(min_interval_ - elapsed);
      now = std::chrono::steady_clock::now();
    }
  }
  first_ = false;
  last_ = now;
}

InfoTable RevisionFetcher::fetch_revision(const std::string& title, const LangCode& lang,
                                          const std::string& as_of, const Category& category) {
  pace();
  HttpResponse res = getter_(lang.code() + ".wikipedia.org", revision_query_path(title, as_of));
  if (res.status != 200) {
    throw NetworkError("revision query for '" + title + "' failed with status " +
                       std::to_string(res.status) + (res.status == 0 ? ": " + res.body : ""));
  }
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(res.body);
  } catch (const nlohmann::json::exception& e) {
    throw NetworkError(std::string("unreadable API answer: ") + e.what());
  }
  if (j.contains("error")) {
    throw NetworkError("API error: " + j["error"].value("info", j["error"].dump()));
  }
  const auto& pages = j.value("/query/pages"_json_pointer, nlohmann::json::array());
  if (pages.empty()) throw PageNotFound("no page named '" + title + "'");
  const auto& page = pages.at(0);
  if (page.value("missing", false) || page.value("invalid", false)) {
    throw PageNotFound("no page named '" + title + "' on " + lang.code() + ".wikipedia.org");
  }
  const auto& revisions = page.value("revisions", nlohmann::json::array());
  if (revisions.empty()) {
    throw PageNotFound("'" + title + "' has no revision at or before " + as_of);
  }
  const auto& rev = revisions.at(0);
  std::string content;
  if (rev.contains("slots")) {
    content = rev["slots"]["main"].value("content", "");
  } else {
    content = rev.value("content", "");
  }
  InfoTable table{page.value("title", title), lang, category, parse_infobox(content), std::nullopt};
  table.revision_tag = "rev-" + std::to_string(rev.value("revid", int64_t{0})) + "@" +
                       rev.value("timestamp", as_of);
  return table;
}

}  // namespace infosync
