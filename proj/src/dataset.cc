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

#include "infosync/dataset.h"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "infosync/errors.h"
#include "infosync/text.h"

namespace infosync {

namespace fs = std::filesystem;

namespace {

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw MissingFile("missing file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string table_name(const std::string& role, const std::string& lang) {
  return role + "." + lang + ".table";
}

InfoTable load_table(const InstanceManifest& m, const fs::path& path, const std::string& lang,
                     const std::optional<std::string>& revision) {
  return InfoTable{m.entity, LangCode(lang), Category(m.category), read_table_file(path), revision};
}

}  // namespace

fs::path InstanceManifest::source_path() const { return dir / table_name("source", source_lang); }
fs::path InstanceManifest::reference_path() const {
  return dir / table_name("reference", reference_lang);
}
fs::path InstanceManifest::gold_path() const { return dir / table_name("gold", source_lang); }

InstanceManifest read_manifest(const fs::path& dir) {
  std::istringstream in(read_file(dir / "manifest"));
  std::map<std::string, std::string> kv;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string t = text::trim(line);
    if (t.empty() || t[0] == '#') continue;
    size_t eq = t.find('=');
    if (eq == std::string::npos) {
      throw ParseError((dir / "manifest").string() + ":" + std::to_string(line_no) +
                       ": expected key = value");
    }
    kv[text::trim(t.substr(0, eq))] = text::trim(t.substr(eq + 1));
  }
  auto required = [&](const char* key) {
    auto it = kv.find(key);
    if (it == kv.end() || it->second.empty()) {
      throw ParseError((dir / "manifest").string() + ": missing '" + key + "'");
    }
    return it->second;
  };
  auto optional = [&](const char* key) -> std::optional<std::string> {
    auto it = kv.find(key);
    if (it == kv.end() || it->second.empty()) return std::nullopt;
    return it->second;
  };
  InstanceManifest m;
  m.entity = required("entity");
  m.category = required("category");
  m.source_lang = required("source_lang");
  m.reference_lang = required("reference_lang");
  m.source_revision = optional("source_revision");
  m.reference_revision = optional("reference_revision");
  m.gold_revision = optional("gold_revision");
  m.dir = dir;
  return m;
}

std::string manifest_text(const InstanceManifest& m) {
  std::string out = "entity = " + m.entity + "\ncategory = " + m.category +
                    "\nsource_lang = " + m.source_lang + "\nreference_lang = " + m.reference_lang +
                    "\n";
  if (m.source_revision) out += "source_revision = " + *m.source_revision + "\n";
  if (m.reference_revision) out += "reference_revision = " + *m.reference_revision + "\n";
  if (m.gold_revision) out += "gold_revision = " + *m.gold_revision + "\n";
  return out;
}

Rows read_table_file(const fs::path& path) {
  std::string content = read_file(path);
  try {
    return parse_table(content);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

void write_table_file(const fs::path& path, const Rows& rows) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw MissingFile("cannot write " + path.string());
  out << serialize_table(rows) << '\n';
}

SyncInstance load_instance(const fs::path& dir) {
  InstanceManifest m = read_manifest(dir);
  InfoTable source = load_table(m, m.source_path(), m.source_lang, m.source_revision);
  InfoTable reference = load_table(m, m.reference_path(), m.reference_lang, m.reference_revision);
  InfoTable gold = load_table(m, m.gold_path(), m.source_lang, m.gold_revision);
  return SyncInstance(std::move(source), std::move(reference), std::move(gold));
}

void write_instance(const fs::path& dir, const SyncInstance& instance) {
  fs::create_directories(dir);
  InstanceManifest m;
  m.entity = instance.source().entity;
  m.category = instance.source().category.name();
  m.source_lang = instance.source().language.code();
  m.reference_lang = instance.reference().language.code();
  m.source_revision = instance.source().revision_tag;
  m.reference_revision = instance.reference().revision_tag;
  m.gold_revision = instance.gold().revision_tag;
  m.dir = dir;
  std::ofstream(dir / "manifest") << manifest_text(m);
  write_table_file(m.source_path(), instance.source().rows);
  write_table_file(m.reference_path(), instance.reference().rows);
  write_table_file(m.gold_path(), instance.gold().rows);
}

std::vector<fs::path> find_instances(const fs::path& root) {
  std::vector<fs::path> out;
  if (!fs::is_directory(root)) throw MissingFile("corpus directory not found: " + root.string());
  for (const auto& entry : fs::recursive_directory_iterator(root)) {
    if (entry.is_regular_file() && entry.path().filename() == "manifest") {
      out.push_back(entry.path().parent_path());
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::string entity_slug(const std::string& entity) {
  std::string slug;
  bool dash = false;
  for (unsigned char c : text::lower(text::trim(entity))) {
    bool keep = std::isalnum(c) || c >= 0x80;
    if (keep) {
      if (dash && !slug.empty()) slug += '-';
      slug += static_cast<char>(c);
      dash = false;
    } else {
      dash = true;
    }
  }
  return slug.empty() ? "entity" : slug;
}

CorpusStats corpus_stats(const fs::path& root) {
  CorpusStats stats;
  if (!fs::exists(root)) return stats;
  for (const auto& dir : find_instances(root)) {
    InstanceManifest m = read_manifest(dir);
    ++stats.tables_by_language[m.source_lang];
    ++stats.tables_by_category[m.category];
    ++stats.instance_count;
  }
  return stats;
}

const CorpusStats& published_corpus_stats() {
  static const CorpusStats kStats = [] {
    CorpusStats s;
    s.tables_by_language = {{"af", 7},  {"ar", 120}, {"ceb", 4}, {"de", 105}, {"en", 206},
                            {"es", 23}, {"fr", 123}, {"hi", 64}, {"ko", 93},  {"nl", 21},
                            {"ru", 131}, {"sv", 15}, {"tr", 18}, {"zh", 18}};
    s.tables_by_category = {{"Album", 76},    {"Athlete", 70}, {"City", 108},
                            {"College", 112}, {"Company", 148}, {"Country", 122},
                            {"Musician", 138}, {"Person", 108}, {"Stadium", 66}};
    s.instance_count = 948;
    return s;
  }();
  return kStats;
}

std::string corpus_stats_to_text(const CorpusStats& stats) {
  std::string out = "instances\t" + std::to_string(stats.instance_count) + "\n";
  for (const auto& [lang, n] : stats.tables_by_language) {
    out += "language\t" + lang + "\t" + std::to_string(n) + "\n";
  }
  for (const auto& [cat, n] : stats.tables_by_category) {
    out += "category\t" + cat + "\t" + std::to_string(n) + "\n";
  }
  return out;
}

}  // namespace infosync
