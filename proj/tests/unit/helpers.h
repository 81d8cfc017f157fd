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

#ifndef INFOSYNC_TESTS_HELPERS_H_
#define INFOSYNC_TESTS_HELPERS_H_

#include <filesystem>
#include <fstream>
#include <functional>
#include <memory>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "infosync/llm_gateway.h"
#include "infosync/stub_backend.h"
#include "infosync/table.h"

namespace infosync::testing {

inline std::filesystem::path data_dir() { return INFOSYNC_TEST_DATA; }
inline std::filesystem::path corpus_dir() { return data_dir() / "corpus"; }
inline std::filesystem::path stub_dir() { return data_dir() / "stub"; }

// Fresh directory removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag = "t") {
    static int counter = 0;
    path_ = std::filesystem::temp_directory_path() /
            ("infosync-" + tag + "-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

inline std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline InfoTable table(const std::string& lang, Rows rows, const std::string& entity = "E",
                       const std::string& category = "Person") {
  return InfoTable{entity, LangCode(lang), Category(category), std::move(rows), std::nullopt};
}

// Backend answering through a callback; records every request.
class FakeBackend : public CompletionBackend {
 public:
  explicit FakeBackend(std::function<std::string(const CompletionRequest&)> fn)
      : fn_(std::move(fn)) {}
  std::string complete(const CompletionRequest& r) override {
    requests.push_back(r);
    return fn_(r);
  }
  std::string name() const override { return "fake"; }
  std::vector<CompletionRequest> requests;

 private:
  std::function<std::string(const CompletionRequest&)> fn_;
};

inline std::shared_ptr<StubBackend> fixture_stub() {
  return std::make_shared<StubBackend>(StubRuleSet::load(stub_dir()));
}

// Text drawn from a small alphabet with quotes, escapes, separators and
// non-ASCII letters, so that round trips meet every escaping rule.
inline std::string random_text(std::mt19937_64& rng, size_t max_len, bool allow_empty = true) {
  static const std::vector<std::string> kAtoms = {
      "a", "b", "Z", "0", "7", " ", " ", ",", ", ", "'", "\"", "\\", "[", "]", "{", "}", ":",
      "é", "ß", "ü", "中", "अ", "ع", "\n", "\t", "-", "/", "…", "·"};
  std::uniform_int_distribution<size_t> len(allow_empty ? 0 : 1, max_len);
  std::uniform_int_distribution<size_t> pick(0, kAtoms.size() - 1);
  std::string out;
  size_t n = len(rng);
  for (size_t i = 0; i < n; ++i) out += kAtoms[pick(rng)];
  return out;
}

// Nonempty after trimming, as table keys must be.
inline std::string random_key(std::mt19937_64& rng, size_t max_len) {
  for (;;) {
    std::string k = random_text(rng, max_len, false);
    size_t b = k.find_first_not_of(" \t\n");
    if (b == std::string::npos) continue;
    size_t e = k.find_last_not_of(" \t\n");
    return k.substr(b, e - b + 1);
  }
}

}  // namespace infosync::testing

#endif  // INFOSYNC_TESTS_HELPERS_H_
