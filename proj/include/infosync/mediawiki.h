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

// Infobox revisions from the MediaWiki Action API.

#ifndef INFOSYNC_MEDIAWIKI_H_
#define INFOSYNC_MEDIAWIKI_H_

#include <chrono>
#include <functional>
#include <mutex>
#include <string>
#include <vector>

#include "infosync/table.h"

namespace infosync {

struct HttpResponse {
  int status = 0;  // 0 when the request never completed
  std::string body;
};

// GET https://<host><path_and_query>.
using HttpGetter = std::function<HttpResponse(const std::string& host, const std::string& path)>;

HttpGetter default_http_getter();

// Template names that open an infobox, compared case-insensitively as
// prefixes of the template name.
const std::vector<std::string>& infobox_template_prefixes();

// Top-level `| key = value` parameters of the first infobox template.
// References and comments are removed, links reduced to their label, <br>
// turned into ", ", and nested templates kept as raw text. Parameters with
// empty values are skipped. Throws NoInfobox.
Rows parse_infobox(const std::string& wikitext);

// Query path for the latest revision of `title` at or before `as_of`
// (ISO 8601, e.g. 2018-06-01T00:00:00Z).
std::string revision_query_path(const std::string& title, const std::string& as_of);

class RevisionFetcher {
 public:
  explicit RevisionFetcher(HttpGetter getter = default_http_getter(),
                           std::chrono::milliseconds min_interval = std::chrono::seconds(1));

  // Throws PageNotFound (also when the page did not exist yet at `as_of`),
  // NoInfobox or NetworkError.
  InfoTable fetch_revision(const std::string& title, const LangCode& lang,
                           const std::string& as_of, const Category& category);

  void set_sleep(std::function<void(std::chrono::milliseconds)> sleep) { sleep_ = std::move(sleep); }

 private:
  void pace();

  HttpGetter getter_;
  std::chrono::milliseconds min_interval_;
  std::function<void(std::chrono::milliseconds)> sleep_;
  std::mutex mu_;
  std::chrono::steady_clock::time_point last_{};
  bool first_ = true;
};

}  // namespace infosync

#endif  // INFOSYNC_MEDIAWIKI_H_
