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

// Text-completion gateway. A Gateway wraps one CompletionBackend (HTTP, the
// deterministic stub, or transcript replay), caps the number of concurrent
// calls and optionally appends every exchange to a transcript file.
//
// Transcript files hold one JSON record per line:
//
//   {"digest":"<sha256>","request":{...},"response":"...",
//    "timestamp":"2026-01-01T00:00:00Z","latency_ms":12}
//
// Records are keyed by digest; when a digest repeats the last record wins.

#ifndef INFOSYNC_LLM_GATEWAY_H_
#define INFOSYNC_LLM_GATEWAY_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <semaphore>
#include <string>
#include <vector>

#include "infosync/errors.h"
#include "infosync/prompts.h"

namespace infosync {

inline constexpr double kPipelineTemperature = 0.0;
inline constexpr double kEvaluationTemperature = 0.2;

struct CompletionRequest {
  std::string prompt;
  std::string model_id;
  double temperature = kPipelineTemperature;
  int max_tokens = 4096;
  // Free-form stage label, not part of the digest.
  std::string tag;
  // Run index for repeated sampling; part of the digest.
  int attempt = 0;

  // Throws InvalidRequest on an empty prompt, temperature outside [0, 1] or
  // non-positive max_tokens.
  void validate() const;
};

// Hex SHA-256 over (model_id, prompt, temperature, attempt). Independent of
// wall clock, tag and max_tokens.
std::string request_digest(const CompletionRequest& request);

struct TranscriptRecord {
  std::string digest;
  CompletionRequest request;
  std::string response;
  std::string timestamp;
  int64_t latency_ms = 0;
};

std::string to_json_line(const TranscriptRecord& record);
TranscriptRecord transcript_record_from_json_line(const std::string& line);
std::vector<TranscriptRecord> read_transcript(const std::filesystem::path& path);

class CompletionBackend {
 public:
  virtual ~CompletionBackend() = default;
  virtual std::string complete(const CompletionRequest& request) = 0;
  virtual std::string name() const = 0;
};

// Serves recorded responses by digest. Throws ReplayMiss for unknown requests.
class ReplayBackend : public CompletionBackend {
 public:
  explicit ReplayBackend(const std::filesystem::path& transcript);
  explicit ReplayBackend(const std::vector<TranscriptRecord>& records);

  std::string complete(const CompletionRequest& request) override;
  std::string name() const override { return "replay"; }
  size_t size() const { return responses_.size(); }

 private:
  std::map<std::string, std::string> responses_;
};

struct GatewayOptions {
  int max_in_flight = 4;
  // When set, every completed call is appended here.
  std::optional<std::filesystem::path> record_to;
};

class Gateway {
 public:
  explicit Gateway(std::shared_ptr<CompletionBackend> backend, GatewayOptions options = {});

  Gateway(const Gateway&) = delete;
  Gateway& operator=(const Gateway&) = delete;

  // Thread-safe.
  std::string complete(const CompletionRequest& request);

  // `n` completions with attempt = 0..n-1, in attempt order.
  std::vector<std::string> vote_runs(const CompletionRequest& request, int n);

  const CompletionBackend& backend() const { return *backend_; }
  int64_t calls() const;

 private:
  std::shared_ptr<CompletionBackend> backend_;
  GatewayOptions options_;
  std::counting_semaphore<1024> in_flight_;
  mutable std::mutex mu_;
  int64_t calls_ = 0;
};

struct Exchange {
  std::string prompt;
  std::string response;
};

// Completes `request` and parses the answer. A ParseError triggers one more
// call with a note appended to the prompt; a second failure propagates. Every
// call is appended to `log` when given.
template <typename Parse>
auto complete_parsed(Gateway& gateway, CompletionRequest request, Parse parse,
                     std::vector<Exchange>* log = nullptr) -> decltype(parse(std::string())) {
  std::string response = gateway.complete(request);
  if (log) log->push_back({request.prompt, response});
  try {
    return parse(response);
  } catch (const ParseError& e) {
    request.prompt = prompts::with_reprompt_note(request.prompt, e.what());
    response = gateway.complete(request);
    if (log) log->push_back({request.prompt, response});
    return parse(response);
  }
}

}  // namespace infosync

#endif  // INFOSYNC_LLM_GATEWAY_H_
