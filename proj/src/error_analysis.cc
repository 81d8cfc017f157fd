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

#include "infosync/error_analysis.h"

#include <algorithm>
#include <cstdio>
#include <nlohmann/json.hpp>

#include "infosync/errors.h"
#include "infosync/knowledge_graph.h"

namespace infosync {

namespace {

Rows artifact_rows(const NamedArtifact& a, std::span<const std::string> exemplar_keys) {
  if (const auto* t = std::get_if<InfoTable>(&a.value)) return t->rows;
  if (const auto* kg = std::get_if<KnowledgeGraph>(&a.value)) return flatten_kg(*kg, exemplar_keys);
  throw ConfigError("alignment artifacts cannot be scored");
}

const StageTrace* find_stage(const std::vector<StageTrace>& traces, Stage stage) {
  for (const auto& t : traces) {
    if (t.stage == stage) return &t;
  }
  return nullptr;
}

std::string cell(int64_t cumulative, int64_t delta, bool first) {
  char buf[48];
  if (first) {
    std::snprintf(buf, sizeof(buf), "%lld", static_cast<long long>(cumulative));
  } else {
    std::snprintf(buf, sizeof(buf), "%lld (%+lld)", static_cast<long long>(cumulative),
                  static_cast<long long>(delta));
  }
  return buf;
}

}  // namespace

ErrorCounts& ErrorCounts::operator+=(const ErrorCounts& o) {
  missing += o.missing;
  outdated_full += o.outdated_full;
  outdated_partial += o.outdated_partial;
  redundant += o.redundant;
  return *this;
}

ErrorCounts operator-(const ErrorCounts& a, const ErrorCounts& b) {
  return {a.missing - b.missing, a.outdated_full - b.outdated_full,
          a.outdated_partial - b.outdated_partial, a.redundant - b.redundant};
}

ErrorCounts classify_errors(const Rows& candidate, const Rows& gold, const Alignment& alignment,
                            const PairComparisons& comparisons) {
  (void)candidate;
  ErrorCounts counts;
  for (const auto& g : key_universe(gold)) {
    KeySet partners = alignment.left_of(g);
    if (partners.empty()) {
      ++counts.missing;
      continue;
    }
    struct Scored {
      std::string key;
      Rational f1;
      std::set<std::string> sct;
    };
    std::vector<Scored> scored;
    for (const auto& c : partners) {
      auto it = comparisons.find({g, c});
      if (it == comparisons.end()) {
        scored.push_back({c, Rational(0), {}});
      } else {
        scored.push_back({c, score_row(it->second).f1,
                          {it->second.sct.begin(), it->second.sct.end()}});
      }
    }
    std::stable_sort(scored.begin(), scored.end(),
                     [](const Scored& a, const Scored& b) { return a.f1 > b.f1; });
    const Scored& best = scored.front();
    if (best.f1 == 0) {
      ++counts.outdated_full;
    } else if (best.f1 < 1) {
      ++counts.outdated_partial;
    }
    for (size_t i = 1; i < scored.size(); ++i) {
      const auto& other = scored[i].sct;
      size_t smaller = std::min(other.size(), best.sct.size());
      if (smaller == 0) continue;
      size_t shared = 0;
      for (const auto& f : other) shared += best.sct.count(f);
      if (static_cast<double>(shared) >= kRedundancyOverlap * static_cast<double>(smaller)) {
        ++counts.redundant;
      }
    }
  }
  return counts;
}

GatewayErrorScorer::GatewayErrorScorer(InfoTable gold, Gateway& gateway,
                                       GatewayScorerOptions options)
    : gold_(std::move(gold)), gateway_(gateway), options_(std::move(options)) {}

const InfoTable& GatewayErrorScorer::gold_in(const LangCode& language) {
  if (language == gold_.language) return gold_;
  auto it = translated_.find(language);
  if (it != translated_.end()) return it->second;
  Pipeline translator(gateway_, PipelineOptions{language, options_.translation_model});
  return translated_.emplace(language, translator.translate_table(gold_, language, nullptr))
      .first->second;
}

ErrorCounts GatewayErrorScorer::score(const InfoTable& candidate) {
  const InfoTable& gold = gold_in(candidate.language);
  Alignment alignment = align_deterministic(candidate.rows, gold.rows, options_.aligner);
  PairComparisons comparisons;
  for (const auto& e : alignment.edges()) {
    try {
      comparisons[{e.right, e.left}] =
          compare_rows(row_for_key(candidate.rows, e.left), row_for_key(gold.rows, e.right),
                       gold.language, gateway_, CompareOptions{options_.evaluator_model});
    } catch (const ComparisonFailed&) {
      // Scored as 0 by classify_errors.
    }
  }
  return classify_errors(candidate.rows, gold.rows, alignment, comparisons);
}

const std::vector<std::string>& ledger_labels() {
  static const std::vector<std::string> kLabels = {"In Refer.", "+Tr. (En)",   "+KG Cons.",
                                                   "+Merge",    "+Table Conv.", "+Tr. (BT-Orig)"};
  return kLabels;
}

StageErrorLedger stagewise_ledger(const SyncTask& task, const std::vector<StageTrace>& traces,
                                  ErrorScorer& scorer) {
  const StageTrace* tr = find_stage(traces, Stage::kTranslateToPivot);
  const StageTrace* kg = find_stage(traces, Stage::kTableToKG);
  const StageTrace* merge = find_stage(traces, Stage::kMergeKGs);
  const StageTrace* conv = find_stage(traces, Stage::kKGToTable);
  const StageTrace* bt = find_stage(traces, Stage::kBackTranslate);
  if (!tr || !kg || !merge || !conv || !tr->output("reference") || !kg->output("reference") ||
      !merge->output("merged") || !conv->output("output")) {
    throw ConfigError("stage ledger needs the traces of a complete hierarchical run");
  }
  const auto& ref_pivot = std::get<InfoTable>(tr->output("reference")->value);
  const auto& src_pivot = std::get<InfoTable>(tr->output("source")->value);
  std::vector<std::string> ref_keys, all_keys;
  for (const auto& r : ref_pivot.rows) ref_keys.push_back(r.key);
  for (const auto& r : src_pivot.rows) all_keys.push_back(r.key);
  all_keys.insert(all_keys.end(), ref_keys.begin(), ref_keys.end());
  const LangCode& pivot = ref_pivot.language;

  auto as_table = [&](Rows rows) { return with_rows(task.reference, std::move(rows), pivot); };

  std::vector<ErrorCounts> columns;
  columns.push_back(scorer.score(task.reference));
  if (task.reference.language == pivot) {
    columns.push_back(columns.back());
  } else {
    columns.push_back(scorer.score(ref_pivot));
  }
  columns.push_back(scorer.score(as_table(artifact_rows(*kg->output("reference"), ref_keys))));
  columns.push_back(scorer.score(as_table(artifact_rows(*merge->output("merged"), all_keys))));
  columns.push_back(scorer.score(as_table(artifact_rows(*conv->output("output"), all_keys))));
  if (bt && bt->output("output")) {
    columns.push_back(scorer.score(std::get<InfoTable>(bt->output("output")->value)));
  } else {
    columns.push_back(columns.back());
  }

  StageErrorLedger ledger;
  for (size_t i = 0; i < columns.size(); ++i) {
    ErrorCounts delta = i == 0 ? columns[0] : columns[i] - columns[i - 1];
    ledger.entries.push_back({ledger_labels()[i], columns[i], delta});
  }
  return ledger;
}

StageErrorLedger sum_ledgers(const std::vector<StageErrorLedger>& ledgers) {
  StageErrorLedger out;
  for (const auto& l : ledgers) {
    if (out.entries.empty()) {
      out = l;
      continue;
    }
    if (l.entries.size() != out.entries.size()) throw ConfigError("ledgers have different columns");
    for (size_t i = 0; i < l.entries.size(); ++i) {
      if (l.entries[i].label != out.entries[i].label) throw ConfigError("ledger labels differ");
      out.entries[i].cumulative += l.entries[i].cumulative;
      out.entries[i].delta += l.entries[i].delta;
    }
  }
  return out;
}

std::string ledger_to_text(const StageErrorLedger& ledger) {
  struct Line {
    const char* name;
    int64_t ErrorCounts::*field;
  };
  const Line lines[] = {{"Missing", &ErrorCounts::missing},
                        {"Outdated (full)", &ErrorCounts::outdated_full},
                        {"Outdated (partial)", &ErrorCounts::outdated_partial},
                        {"Redundant", &ErrorCounts::redundant}};
  char buf[64];
  std::string out;
  std::snprintf(buf, sizeof(buf), "%-20s", "Error type");
  out += buf;
  for (const auto& e : ledger.entries) {
    std::snprintf(buf, sizeof(buf), " %-16s", e.label.c_str());
    out += buf;
  }
  out += "\n";
  auto row = [&](const char* name, auto get) {
    std::snprintf(buf, sizeof(buf), "%-20s", name);
    out += buf;
    for (size_t i = 0; i < ledger.entries.size(); ++i) {
      const auto& e = ledger.entries[i];
      std::snprintf(buf, sizeof(buf), " %-16s", cell(get(e.cumulative), get(e.delta), i == 0).c_str());
      out += buf;
    }
    out += "\n";
  };
  for (const auto& l : lines) {
    row(l.name, [&](const ErrorCounts& c) { return c.*(l.field); });
  }
  row("Total", [](const ErrorCounts& c) { return c.total(); });
  return out;
}

std::string ledger_to_json(const StageErrorLedger& ledger) {
  auto counts = [](const ErrorCounts& c) {
    return nlohmann::ordered_json{{"missing", c.missing},
                                  {"outdated_full", c.outdated_full},
                                  {"outdated_partial", c.outdated_partial},
                                  {"redundant", c.redundant},
                                  {"total", c.total()}};
  };
  nlohmann::ordered_json j = nlohmann::ordered_json::array();
  for (const auto& e : ledger.entries) {
    j.push_back({{"stage", e.label}, {"cumulative", counts(e.cumulative)}, {"delta", counts(e.delta)}});
  }
  return j.dump(2);
}

}  // namespace infosync
