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

// Chat-completion client. Requests are POSTed as
//
//   {"model": ..., "messages": [{"role": "user", "content": ...}],
//    "temperature": ..., "max_tokens": ...}
//
// and the answer is read from choices[0].message.content (or choices[0].text).

#ifndef INFOSYNC_HTTP_BACKEND_H_
#define INFOSYNC_HTTP_BACKEND_H_

#include <chrono>
#include <functional>
#include <string>

#include "infosync/llm_gateway.h"

namespace infosync {

struct HttpBackendOptions {
  // Full URL, e.g. https://host/v1/chat/completions.
  std::string endpoint;
  std::string api_key;
  // Used when a request carries no model id.
  std::string default_model;
  int max_attempts = 3;
  std::chrono::milliseconds base_delay{500};
  std::chrono::milliseconds max_delay{8000};
  std::chrono::seconds timeout{120};
  std::function<void(std::chrono::milliseconds)> sleep;

  // Reads SYNC_LLM_ENDPOINT, SYNC_LLM_API_KEY and SYNC_LLM_MODEL.
  static HttpBackendOptions from_env();
};

class HttpBackend : public CompletionBackend {
 public:
  // Throws ConfigError on a missing or unparseable endpoint.
  explicit HttpBackend(HttpBackendOptions options);

  // Retries connection failures, 429 and 5xx with capped exponential backoff.
  // Exhaustion raises RateLimited when the last failure was a 429 and
  // BackendUnavailable otherwise. Other 4xx answers raise InvalidRequest.
  std::string complete(const CompletionRequest& request) override;
  std::string name() const override { return "http"; }

  // Delay before retry number `retry` (0-based).
  std::chrono::milliseconds backoff(int retry) const;

 private:
  HttpBackendOptions options_;
  std::string scheme_host_port_;
  std::string path_;
};

}  // namespace infosync

#endif  // INFOSYNC_HTTP_BACKEND_H_
