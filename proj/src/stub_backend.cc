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

#include "infosync/stub_backend.h"

#include <fstream>
#include <nlohmann/json.hpp>
#include <regex>

#include "infosync/alignment.h"
#include "infosync/errors.h"
#include "infosync/knowledge_graph.h"
#include "infosync/prompts.h"
#include "infosync/text.h"

namespace infosync {

namespace {

using prompts::PromptKind;

constexpr const char* kPivot = "en";

std::string code_for(const std::string& language_name) {
  if (auto lang = languages::from_name(language_name)) return lang->code();
  return text::lower(text::trim(language_name));
}

Rows translate_rows(const StubRuleSet& rules, const Rows& rows, const std::string& from,
                    const std::string& to) {
  Rows out;
  out.reserve(rows.size());
  for (const auto& r : rows) {
    out.push_back({rules.translate(r.key, from, to), rules.translate(r.value, from, to)});
  }
  return out;
}

std::string table_answer(const Rows& rows) {
  return "Here is the table:\n" + serialize_table(rows) + "\n";
}

std::optional<std::string> norm(const std::string& key) { return try_normalize_key(key); }

// Reference-preferring recursive merge; keys compared in normalized form.
KGMap merge_maps(const KGMap& a, const KGMap& b) {
  KGMap out;
  auto find = [&out](const std::string& key) -> KGField* {
    auto nk = norm(key);
    for (auto& f : out) {
      if (norm(f.key) == nk) return &f;
    }
    return nullptr;
  };
  auto absorb = [&](const KGField& f, bool from_reference) {
    KGField* existing = find(f.key);
    if (!existing) {
      out.push_back(f);
      return;
    }
    if (existing->value.is_map() && f.value.is_map()) {
      existing->value = KGValue(merge_maps(existing->value.map(), f.value.map()));
    } else if (from_reference) {
      existing->value = f.value;
    }
  };
  for (const auto& f : a) absorb(f, false);
  for (const auto& f : b) absorb(f, true);
  return out;
}

KGMap drop_keys(const KGMap& map, const std::set<std::string>& dropped) {
  KGMap out;
  for (const auto& f : map) {
    auto nk = norm(f.key);
    if (nk && dropped.count(*nk)) continue;
    if (f.value.is_map()) {
      out.push_back({f.key, KGValue(drop_keys(f.value.map(), dropped))});
    } else {
      out.push_back(f);
    }
  }
  return out;
}

// Rows of `a` take the values of their aligned rows of `b`; unaligned rows of
// `b` are appended when `add_missing` is set.
Rows update_rows(const Rows& a, const Rows& b, const Alignment& alignment, bool add_missing) {
  std::map<std::string, std::vector<std::string>> b_values;
  for (const auto& r : b) {
    if (auto nk = norm(r.key)) b_values[*nk].push_back(r.value);
  }
  Rows out;
  for (const auto& r : a) {
    auto nk = norm(r.key);
    KeySet partners = nk ? alignment.right_of(*nk) : KeySet{};
    if (partners.empty()) {
      out.push_back(r);
      continue;
    }
    std::vector<std::string> values;
    for (const auto& p : partners) {
      for (const auto& v : b_values[p]) values.push_back(v);
    }
    out.push_back({r.key, text::join(values, ", ")});
  }
  if (add_missing) {
    KeySet unaligned = alignment.unaligned_right();
    for (const auto& r : b) {
      auto nk = norm(r.key);
      if (nk && unaligned.count(*nk)) out.push_back(r);
    }
  }
  return out;
}

Alignment exact_alignment(const Rows& a, const Rows& b) {
  KeySet left = key_universe(a), right = key_universe(b);
  std::set<Edge> edges;
  for (const auto& k : left) {
    if (right.count(k)) edges.insert({k, k});
  }
  return Alignment(left, right, std::move(edges));
}

std::vector<std::string> facts_of(const Rows& rows) {
  static const std::regex kSep(R"(\s*(?:,\s|;)\s*)");
  std::vector<std::string> out;
  for (const auto& r : rows) {
    std::sregex_token_iterator it(r.value.begin(), r.value.end(), kSep, -1), end;
    for (; it != end; ++it) {
      std::string fact = text::trim(it->str());
      if (try_normalize_key(fact)) out.push_back(fact);
    }
  }
  return out;
}

std::set<std::string> fact_tokens(const std::string& fact) {
  auto nk = try_normalize_key(fact);
  if (!nk) return {};
  auto t = text::tokens(*nk);
  return {t.begin(), t.end()};
}

std::string evaluate_answer(const Rows& t1, const Rows& t2) {
  auto f1 = facts_of(t1), f2 = facts_of(t2);
  std::vector<bool> used(f2.size(), false);
  std::vector<std::string> sct, left1, left2;
  for (const auto& f : f1) {
    auto tok = fact_tokens(f);
    bool matched = false;
    for (size_t j = 0; j < f2.size(); ++j) {
      if (!used[j] && fact_tokens(f2[j]) == tok) {
        used[j] = true;
        matched = true;
        break;
      }
    }
    if (matched) {
      sct.push_back(f);
    } else {
      left1.push_back(f);
    }
  }
  for (size_t j = 0; j < f2.size(); ++j) {
    if (!used[j]) left2.push_back(f2[j]);
  }
  std::vector<std::string> scd, u1, u2;
  size_t paired = std::min(left1.size(), left2.size());
  for (size_t i = 0; i < paired; ++i) scd.push_back(left1[i] + " vs " + left2[i]);
  for (size_t i = paired; i < left1.size(); ++i) u1.push_back(left1[i]);
  for (size_t i = paired; i < left2.size(); ++i) u2.push_back(left2[i]);
  nlohmann::ordered_json j;
  j["similar_consistent"] = sct;
  j["similar_contradictory"] = scd;
  j["table1_unique"] = u1;
  j["table2_unique"] = u2;
  return j.dump(2) + "\n";
}

class Responder {
 public:
  Responder(const StubRuleSet& rules, PromptKind kind, prompts::Slots slots)
      : rules_(rules), kind_(kind), slots_(std::move(slots)) {}

  std::string answer() const {
    switch (kind_) {
      case PromptKind::kTranslateToPivot: {
        Rows rows = parse_table(slot("table"));
        return table_answer(
            translate_rows(rules_, rows, code_for(slot("language")), code_for(slot("pivot"))));
      }
      case PromptKind::kBackTranslate:
        return back_translate();
      case PromptKind::kTableToKG: {
        Rows rows;
        for (const auto& r : parse_table(slot("table"))) {
          auto nk = norm(r.key);
          if (nk && rules_.kg_drop_keys().count(*nk)) continue;
          rows.push_back(r);
        }
        return serialize_kg(table_to_flat_kg(rows)) + "\n";
      }
      case PromptKind::kMergeKGs: {
        KnowledgeGraph a = parse_kg(slot("graph_a"));
        KnowledgeGraph b = parse_kg(slot("graph_b"));
        KnowledgeGraph merged{drop_keys(merge_maps(a.root, b.root), rules_.merge_drop_keys())};
        return serialize_kg(merged) + "\n";
      }
      case PromptKind::kKGToTable: {
        std::vector<std::string> keys;
        for (const auto& r : parse_table(slot("table_a"))) keys.push_back(r.key);
        return table_answer(flatten_kg(parse_kg(slot("graph_g")), keys));
      }
      case PromptKind::kDirect:
        return update(false);
      case PromptKind::kAlignUpdateJoint:
      case PromptKind::kDirectDecompose:
        return update(true);
      case PromptKind::kAlignUpdateTwo:
        return update_with_given_alignments();
      case PromptKind::kAlignKeys:
        return align();
      case PromptKind::kEvaluate:
        return evaluate_answer(parse_table(slot("table_1")), parse_table(slot("table_2")));
    }
    return "";
  }

 private:
  const std::string& slot(const std::string& name) const { return slots_.at(name); }

  std::string back_translate() const {
    std::string from = code_for(slot("pivot")), to = code_for(slot("language"));
    std::map<std::string, std::string> examples;
    Rows pivot_side = parse_table(slot("example_original"));
    Rows original_side = parse_table(slot("example_translated"));
    if (pivot_side.size() == original_side.size()) {
      for (size_t i = 0; i < pivot_side.size(); ++i) {
        examples.emplace(pivot_side[i].key, original_side[i].key);
        examples.emplace(pivot_side[i].value, original_side[i].value);
      }
    }
    auto cell = [&](const std::string& s) {
      auto it = examples.find(s);
      return it != examples.end() ? it->second : rules_.translate(s, from, to);
    };
    Rows out;
    for (const auto& r : parse_table(slot("table"))) out.push_back({cell(r.key), cell(r.value)});
    return table_answer(out);
  }

  std::string update(bool add_missing) const {
    std::string lang = code_for(slot("language")), ref = code_for(slot("reference_language"));
    Rows a = parse_table(slot("table_a"));
    Rows b = translate_rows(rules_, parse_table(slot("table_b")), ref, lang);
    Alignment alignment = add_missing ? align_deterministic(a, b) : exact_alignment(a, b);
    return table_answer(update_rows(a, b, alignment, add_missing));
  }

  std::string update_with_given_alignments() const {
    std::string lang = code_for(slot("language")), ref = code_for(slot("reference_language"));
    Rows a = parse_table(slot("table_a"));
    Rows b_raw = parse_table(slot("table_b"));
    Rows b = translate_rows(rules_, b_raw, ref, lang);
    // Reference keys in the prompt are in the reference language; map them to
    // the translated rows by position.
    std::map<std::string, std::string> translated_key;
    for (size_t i = 0; i < b_raw.size(); ++i) {
      auto from = norm(b_raw[i].key), to = norm(b[i].key);
      if (from && to) translated_key.emplace(*from, *to);
    }
    KeySet left = key_universe(a), right = key_universe(b);
    std::set<Edge> edges;
    for (const auto& [lefts, rights] : parse_alignment_prompt(slot("alignments"))) {
      for (const auto& l : lefts) {
        for (const auto& r : rights) {
          auto nl = norm(l), nr = norm(r);
          if (!nl || !nr) continue;
          auto it = translated_key.find(*nr);
          if (left.count(*nl) && it != translated_key.end()) edges.insert({*nl, it->second});
        }
      }
    }
    return table_answer(update_rows(a, b, Alignment(left, right, std::move(edges)), true));
  }

  std::string align() const {
    auto names = text::split(slot("languages"), ", ");
    std::string a_lang = code_for(names.front());
    std::string g_lang = code_for(names.size() > 1 ? names[1] : names.front());
    Rows a = parse_table(slot("table_a"));
    Rows g_raw = parse_table(slot("table_g"));
    Rows g = translate_rows(rules_, g_raw, g_lang, a_lang);
    Alignment alignment = align_deterministic(a, g);
    std::map<std::string, std::string> raw_a, raw_g;
    for (const auto& r : a) {
      if (auto nk = norm(r.key)) raw_a.emplace(*nk, r.key);
    }
    for (size_t i = 0; i < g.size(); ++i) {
      if (auto nk = norm(g[i].key)) raw_g.emplace(*nk, g_raw[i].key);
    }
    Rows pairs;
    for (const auto& e : alignment.edges()) pairs.push_back({raw_a[e.left], raw_g[e.right]});
    return "Aligned keys:\n" + serialize_table(pairs) + "\n";
  }

  const StubRuleSet& rules_;
  PromptKind kind_;
  prompts::Slots slots_;
};

bool canned_matches(const std::string& pattern, const std::string& prompt) {
  constexpr std::string_view kRegex = "regex:";
  if (pattern.rfind(kRegex, 0) == 0) {
    return std::regex_search(prompt, std::regex(pattern.substr(kRegex.size())));
  }
  return prompt.find(pattern) != std::string::npos;
}

}  // namespace

StubRuleSet StubRuleSet::load(const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir)) throw MissingFile("stub rule directory not found: " + dir.string());
  StubRuleSet rules;
  fs::path lex_dir = dir / "lexicons";
  if (fs::is_directory(lex_dir)) {
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(lex_dir)) {
      if (entry.path().extension() == ".tsv") files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    for (const auto& file : files) {
      auto parts = text::split(file.stem().string(), "-");
      if (parts.size() != 2) throw ConfigError("lexicon name must be <from>-<to>.tsv: " + file.string());
      std::ifstream in(file);
      std::string line;
      int line_no = 0;
      while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        size_t tab = line.find('\t');
        if (tab == std::string::npos) {
          throw ConfigError(file.string() + ":" + std::to_string(line_no) + ": missing tab");
        }
        rules.add_entry(parts[0], parts[1], line.substr(0, tab), line.substr(tab + 1));
      }
    }
  }
  fs::path rules_file = dir / "rules.json";
  if (fs::exists(rules_file)) {
    std::ifstream in(rules_file);
    try {
      auto j = nlohmann::json::parse(in);
      for (const auto& c : j.value("canned", nlohmann::json::array())) {
        rules.add_canned({c.at("pattern").get<std::string>(), c.at("response").get<std::string>()});
      }
      auto faults = j.value("faults", nlohmann::json::object());
      for (const auto& k : faults.value("merge_drop_keys", nlohmann::json::array())) {
        rules.drop_on_merge(k.get<std::string>());
      }
      for (const auto& k : faults.value("kg_drop_keys", nlohmann::json::array())) {
        rules.drop_on_kg(k.get<std::string>());
      }
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError("bad " + rules_file.string() + ": " + e.what());
    }
  }
  return rules;
}

void StubRuleSet::add_entry(const std::string& from, const std::string& to,
                            const std::string& phrase, const std::string& translation) {
  if (text::trim(phrase).empty() || text::trim(translation).empty()) {
    throw ConfigError("lexicon entries must be nonempty on both sides");
  }
  lexicons_[{from, to}][phrase] = translation;
  inverse_[{to, from}].emplace(translation, phrase);
}

void StubRuleSet::drop_on_merge(const std::string& key) { merge_drop_.insert(normalize_key(key)); }
void StubRuleSet::drop_on_kg(const std::string& key) { kg_drop_.insert(normalize_key(key)); }

size_t StubRuleSet::lexicon_size(const std::string& from, const std::string& to) const {
  auto it = lexicons_.find({from, to});
  return it == lexicons_.end() ? 0 : it->second.size();
}

std::optional<std::string> StubRuleSet::one_hop(const std::string& text, const std::string& from,
                                                const std::string& to) const {
  if (from == to) return text;
  if (auto it = lexicons_.find({from, to}); it != lexicons_.end()) {
    if (auto e = it->second.find(text); e != it->second.end()) return e->second;
  }
  if (auto it = inverse_.find({from, to}); it != inverse_.end()) {
    if (auto e = it->second.find(text); e != it->second.end()) return e->second;
  }
  return std::nullopt;
}

std::optional<std::string> StubRuleSet::lookup(const std::string& text, const std::string& from,
                                               const std::string& to) const {
  if (auto direct = one_hop(text, from, to)) return direct;
  if (from != kPivot && to != kPivot) {
    if (auto mid = one_hop(text, from, kPivot)) return one_hop(*mid, kPivot, to);
  }
  return std::nullopt;
}

std::string StubRuleSet::translate(const std::string& text, const std::string& from,
                                   const std::string& to) const {
  if (from == to || text.empty()) return text;
  if (auto whole = lookup(text, from, to)) return *whole;
  auto parts = text::split(text, ", ");
  if (parts.size() > 1) {
    for (auto& p : parts) {
      if (auto t = lookup(p, from, to)) p = *t;
    }
    return text::join(parts, ", ");
  }
  return text;
}

std::string StubBackend::complete(const CompletionRequest& request) {
  for (const auto& c : rules_.canned()) {
    if (canned_matches(c.pattern, request.prompt)) return c.response;
  }
  auto identified = prompts::identify(request.prompt);
  if (!identified) return "I could not work out what this request asks for.";
  try {
    return Responder(rules_, identified->first, std::move(identified->second)).answer();
  } catch (const ParseError&) {
    return "The tables in this request could not be read.";
  }
}

}  // namespace infosync
