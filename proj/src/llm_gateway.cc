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

#include "infosync/llm_gateway.h"

#include <openssl/evp.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <nlohmann/json.hpp>

#include "infosync/errors.h"

namespace infosync {

using nlohmann::json;

namespace {

std::string sha256_hex(const std::string& data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr);
  EVP_DigestUpdate(ctx, data.data(), data.size());
  EVP_DigestFinal_ex(ctx, digest, &len);
  EVP_MD_CTX_free(ctx);
  static const char* kHex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(kHex[digest[i] >> 4]);
    out.push_back(kHex[digest[i] & 0xF]);
  }
  return out;
}

std::string utc_now() {
  auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

json request_to_json(const CompletionRequest& r) {
  return json{{"model_id", r.model_id},       {"prompt", r.prompt},
              {"temperature", r.temperature}, {"max_tokens", r.max_tokens},
              {"tag", r.tag},                 {"attempt", r.attempt}};
}

}  // namespace

void CompletionRequest::validate() const {
  if (prompt.empty()) throw InvalidRequest("prompt must be nonempty");
  if (!(temperature >= 0.0 && temperature <= 1.0)) {
    throw InvalidRequest("temperature must lie in [0, 1]");
  }
  if (max_tokens <= 0) throw InvalidRequest("max_tokens must be positive");
  if (attempt < 0) throw InvalidRequest("attempt must be nonnegative");
}

std::string request_digest(const CompletionRequest& request) {
  char temperature[32];
  std::snprintf(temperature, sizeof(temperature), "%.6f", request.temperature);
  std::string material;
  material.reserve(request.prompt.size() + request.model_id.size() + 48);
  material += "model_id=";
  material += std::to_string(request.model_id.size()) + ":" + request.model_id;
  material += "\nprompt=";
  material += std::to_string(request.prompt.size()) + ":" + request.prompt;
  material += "\ntemperature=";
  material += temperature;
  material += "\nattempt=" + std::to_string(request.attempt);
  return sha256_hex(material);
}

std::string to_json_line(const TranscriptRecord& record) {
  json j{{"digest", record.digest},
         {"request", request_to_json(record.request)},
         {"response", record.response},
         {"timestamp", record.timestamp},
         {"latency_ms", record.latency_ms}};
  return j.dump(-1, ' ', false, json::error_handler_t::replace);
}

TranscriptRecord transcript_record_from_json_line(const std::string& line) {
  json j;
  try {
    j = json::parse(line);
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad transcript line: ") + e.what());
  }
  TranscriptRecord r;
  try {
    r.digest = j.at("digest").get<std::string>();
    const json& req = j.at("request");
    r.request.model_id = req.value("model_id", "");
    r.request.prompt = req.value("prompt", "");
    r.request.temperature = req.value("temperature", 0.0);
    r.request.max_tokens = req.value("max_tokens", 4096);
    r.request.tag = req.value("tag", "");
    r.request.attempt = req.value("attempt", 0);
    r.response = j.at("response").get<std::string>();
    r.timestamp = j.value("timestamp", "");
    r.latency_ms = j.value("latency_ms", int64_t{0});
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad transcript record: ") + e.what());
  }
  return r;
}

std::vector<TranscriptRecord> read_transcript(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw MissingFile("cannot open transcript " + path.string());
  std::vector<TranscriptRecord> records;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    records.push_back(transcript_record_from_json_line(line));
  }
  return records;
}

ReplayBackend::ReplayBackend(const std::filesystem::path& transcript)
    : ReplayBackend(read_transcript(transcript)) {}

ReplayBackend::ReplayBackend(const std::vector<TranscriptRecord>& records) {
  for (const auto& r : records) responses_[r.digest] = r.response;
}

std::string ReplayBackend::complete(const CompletionRequest& request) {
  std::string digest = request_digest(request);
  auto it = responses_.find(digest);
  if (it == responses_.end()) {
    throw ReplayMiss("no recorded response for digest " + digest +
                     (request.tag.empty() ? "" : " (" + request.tag + ")"));
  }
  return it->second;
}

Gateway::Gateway(std::shared_ptr<CompletionBackend> backend, GatewayOptions options)
    : backend_(std::move(backend)),
      options_(std::move(options)),
      in_flight_(std::clamp(options_.max_in_flight, 1, 1024)) {
  if (!backend_) throw BackendUnavailable("no completion backend configured");
}

std::string Gateway::complete(const CompletionRequest& request) {
  request.validate();
  auto start = std::chrono::steady_clock::now();
  std::string response;
  in_flight_.acquire();
  try {
    response = backend_->complete(request);
  } catch (...) {
    in_flight_.release();
    throw;
  }
  in_flight_.release();
  auto latency = std::chrono::duration_cast<std::chrono::milliseconds>(
                     std::chrono::steady_clock::now() - start)
                     .count();

  std::lock_guard lock(mu_);
  ++calls_;
  if (options_.record_to) {
    TranscriptRecord record{request_digest(request), request, response, utc_now(), latency};
    std::ofstream out(*options_.record_to, std::ios::app);
    if (!out) throw BackendUnavailable("cannot append to transcript " + options_.record_to->string());
    out << to_json_line(record) << '\n';
  }
  return response;
}

std::vector<std::string> Gateway::vote_runs(const CompletionRequest& request, int n) {
  if (n < 1) throw InvalidRequest("vote_runs needs n >= 1");
  std::vector<std::string> out;
  out.reserve(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    CompletionRequest run = request;
    run.attempt = request.attempt + i;
    out.push_back(complete(run));
  }
  return out;
}

int64_t Gateway::calls() const {
  std::lock_guard lock(mu_);
  return calls_;
}

}  // namespace infosync
