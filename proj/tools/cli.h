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

// Command-line driver. run_cli is the whole program minus process setup, so
// tests can call it in-process.
//
// Exit codes: 0 success, 1 partial failure, 2 configuration or usage error.

#ifndef INFOSYNC_TOOLS_CLI_H_
#define INFOSYNC_TOOLS_CLI_H_

#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace infosync::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitPartial = 1;
inline constexpr int kExitConfig = 2;

struct RunConfig {
  std::string strategy = "hierarchical";
  std::string pivot = "en";
  std::string backend = "stub";
  std::vector<std::string> models;
  std::vector<std::string> align_models;
  std::vector<std::string> evaluators = {"stub-eval"};
  int rounds = 1;
  int jobs = 1;
  int max_in_flight = 4;
  std::string corpus;
  std::string transcripts;
  std::string record;
  std::string stub_rules;
  std::string out;
  std::string endpoint;
  std::string api_key;

  // Pipeline model: the first of `models`, or empty for the backend default.
  std::string pipeline_model() const;
};

// Flat `key = value` lines; '#' starts a comment line. Keys use '_' or '-'.
// Throws ConfigError on unknown keys or malformed lines.
void apply_config_text(RunConfig& config, const std::string& text);
// Reads SYNC_LLM_ENDPOINT, SYNC_LLM_API_KEY, SYNC_LLM_MODEL, SYNC_LLM_BACKEND
// and SYNC_LLM_TRANSCRIPTS through `getenv`.
void apply_env(RunConfig& config, const std::function<const char*(const char*)>& getenv);
// Throws ConfigError when the configuration cannot run.
void validate_config(const RunConfig& config);
// Sorted `key = value` lines without the API key.
std::string config_snapshot(const RunConfig& config, const std::string& command);

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
            const std::function<const char*(const char*)>& getenv);

}  // namespace infosync::cli

#endif  // INFOSYNC_TOOLS_CLI_H_
