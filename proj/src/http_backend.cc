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

#include "infosync/http_backend.h"

#include <httplib.h>

#include <cstdlib>
#include <nlohmann/json.hpp>
#include <regex>
#include <thread>

#include "infosync/errors.h"

namespace infosync {

namespace {

std::string env_or_empty(const char* name) {
  const char* v = std::getenv(name);
  return v ? v : "";
}

std::string extract_content(const std::string& body) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(body);
    const auto& choice = j.at("choices").at(0);
    if (choice.contains("message")) return choice.at("message").at("content").get<std::string>();
    return choice.at("text").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw BackendUnavailable(std::string("unexpected completion payload: ") + e.what());
  }
}

}  // namespace

HttpBackendOptions HttpBackendOptions::from_env() {
  HttpBackendOptions o;
  o.endpoint = env_or_empty("SYNC_LLM_ENDPOINT");
  o.api_key = env_or_empty("SYNC_LLM_API_KEY");
  o.default_model = env_or_empty("SYNC_LLM_MODEL");
  return o;
}

HttpBackend::HttpBackend(HttpBackendOptions options) : options_(std::move(options)) {
  static const std::regex kUrl(R"(^(https?://[^/]+)(/.*)?$)");
  std::smatch m;
  if (options_.endpoint.empty()) throw ConfigError("no completion endpoint configured");
  if (!std::regex_match(options_.endpoint, m, kUrl)) {
    throw ConfigError("bad completion endpoint: " + options_.endpoint);
  }
  scheme_host_port_ = m[1];
  path_ = m[2].matched ? std::string(m[2]) : "/";
  if (options_.max_attempts < 1) options_.max_attempts = 1;
  if (!options_.sleep) {
    options_.sleep = [](std::chrono::milliseconds d) { std::this_thread::sleep_for(d); };
  }
}

std::chrono::milliseconds HttpBackend::backoff(int retry) const {
  auto delay = options_.base_delay;
  for (int i = 0; i < retry && delay < options_.max_delay; ++i) delay *= 2;
  return std::min(delay, options_.max_delay);
}

std::string HttpBackend::complete(const CompletionRequest& request) {
  nlohmann::json body{
      {"model", request.model_id.empty() ? options_.default_model : request.model_id},
      {"messages", {{{"role", "user"}, {"content", request.prompt}}}},
      {"temperature", request.temperature},
      {"max_tokens", request.max_tokens},
  };
  std::string payload = body.dump();
  httplib::Headers headers;
  if (!options_.api_key.empty()) headers.emplace("Authorization", "Bearer " + options_.api_key);

  bool last_was_rate_limit = false;
  std::string last_problem;
  for (int attempt = 0; attempt < options_.max_attempts; ++attempt) {
    if (attempt > 0) options_.sleep(backoff(attempt - 1));
    httplib::Client client(scheme_host_port_);
    client.set_connection_timeout(std::chrono::duration_cast<std::chrono::seconds>(options_.timeout));
    client.set_read_timeout(options_.timeout);
    auto res = client.Post(path_, headers, payload, "application/json");
    if (!res) {
      last_was_rate_limit = false;
      last_problem = "connection failed: " + httplib::to_string(res.error());
      continue;
    }
    if (res->status == 200) return extract_content(res->body);
    if (res->status == 429) {
      last_was_rate_limit = true;
      last_problem = "rate limited (429)";
      continue;
    }
    if (res->status >= 500) {
      last_was_rate_limit = false;
      last_problem = "server error " + std::to_string(res->status);
      continue;
    }
    throw InvalidRequest("completion endpoint answered " + std::to_string(res->status) + ": " +
                         res->body.substr(0, 200));
  }
  std::string message = "giving up after " + std::to_string(options_.max_attempts) +
                        " attempts: " + last_problem;
  if (last_was_rate_limit) throw RateLimited(message);
  throw BackendUnavailable(message);
}

}  // namespace infosync
