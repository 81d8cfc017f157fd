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

// On-disk corpus. Each instance lives in its own directory:
//
//   corpus/<Category>/<entity-slug>/
//     manifest                source.<lang>.table
//     reference.<lang>.table  gold.<lang>.table
//
// The manifest is a key = value text file with the keys entity, category,
// source_lang, reference_lang and optionally source_revision,
// reference_revision and gold_revision. Lines starting with '#' are comments.

#ifndef INFOSYNC_DATASET_H_
#define INFOSYNC_DATASET_H_

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "infosync/table.h"

namespace infosync {

struct InstanceManifest {
  std::string entity;
  std::string category;
  std::string source_lang;
  std::string reference_lang;
  std::optional<std::string> source_revision;
  std::optional<std::string> reference_revision;
  std::optional<std::string> gold_revision;
  std::filesystem::path dir;

  std::filesystem::path source_path() const;
  std::filesystem::path reference_path() const;
  std::filesystem::path gold_path() const;
};

// Throws MissingFile or ParseError.
InstanceManifest read_manifest(const std::filesystem::path& dir);
std::string manifest_text(const InstanceManifest& manifest);

// Throws MissingFile or ParseError.
Rows read_table_file(const std::filesystem::path& path);
void write_table_file(const std::filesystem::path& path, const Rows& rows);

// Throws MissingFile, ParseError, InvalidLanguage, InvalidCategory,
// LanguageConstraintViolation or InstanceMismatch. Never returns a partially
// checked instance.
SyncInstance load_instance(const std::filesystem::path& dir);

// Writes the three tables and the manifest, creating `dir`.
void write_instance(const std::filesystem::path& dir, const SyncInstance& instance);

// Instance directories under `root` (those holding a manifest), sorted.
std::vector<std::filesystem::path> find_instances(const std::filesystem::path& root);

// "Albert Einstein" -> "albert-einstein".
std::string entity_slug(const std::string& entity);

struct CorpusStats {
  std::map<std::string, size_t> tables_by_language;  // by source language
  std::map<std::string, size_t> tables_by_category;
  size_t instance_count = 0;

  friend bool operator==(const CorpusStats&, const CorpusStats&) = default;
};

// Reads only the manifests. Throws like read_manifest.
CorpusStats corpus_stats(const std::filesystem::path& root);

// Published counts of the full benchmark, for comparison with a real corpus.
const CorpusStats& published_corpus_stats();

std::string corpus_stats_to_text(const CorpusStats& stats);

}  // namespace infosync

#endif  // INFOSYNC_DATASET_H_
