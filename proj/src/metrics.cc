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

#include "infosync/metrics.h"

#include <cstdio>
#include <nlohmann/json.hpp>

#include "infosync/errors.h"
#include "infosync/knowledge_graph.h"
#include "infosync/prompts.h"
#include "infosync/text.h"

namespace infosync {

namespace {

using ojson = nlohmann::ordered_json;

Rational ratio(size_t num, size_t den) {
  if (den == 0) return Rational(0);
  return Rational(static_cast<long long>(num)) / Rational(static_cast<long long>(den));
}

std::vector<std::string> text_list(const KnowledgeGraph& kg, const std::string& field,
                                   bool* present) {
  for (const auto& f : kg.root) {
    if (f.key != field) continue;
    *present = true;
    if (f.value.is_text()) {
      return f.value.text().empty() ? std::vector<std::string>{} : std::vector<std::string>{f.value.text()};
    }
    if (!f.value.is_list()) throw InvalidValue("'" + field + "' must be a list of facts");
    std::vector<std::string> out;
    for (const auto& item : f.value.list()) {
      if (!item.is_text()) throw InvalidValue("'" + field + "' holds a non-text fact");
      out.push_back(item.text());
    }
    return out;
  }
  return {};
}

std::string fixed(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.4f", v);
  return buf;
}

}  // namespace

double to_double(const Rational& r) { return r.convert_to<double>(); }

std::string to_string(const Rational& r) {
  auto num = boost::multiprecision::numerator(r);
  auto den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

KeySet AlignmentPartition::tri_gold_keys() const {
  KeySet out;
  for (const auto& t : tri) out.insert(t.gold_key);
  return out;
}

KeySet AlignmentPartition::bi_input_gold_keys() const {
  KeySet out;
  for (const auto& p : bi_input_gold) out.insert(p.second);
  return out;
}

KeySet AlignmentPartition::bi_gold_output_keys() const {
  KeySet out;
  for (const auto& p : bi_gold_output) out.insert(p.first);
  return out;
}

std::set<KeyPair> AlignmentPartition::input_gold_pairs() const {
  std::set<KeyPair> out;
  for (const auto& t : tri) out.insert({t.gold_key, t.source_key});
  for (const auto& p : bi_input_gold) out.insert({p.second, p.first});
  return out;
}

std::set<KeyPair> AlignmentPartition::output_gold_pairs() const {
  std::set<KeyPair> out;
  for (const auto& t : tri) out.insert({t.gold_key, t.output_key});
  for (const auto& p : bi_gold_output) out.insert({p.first, p.second});
  return out;
}

AlignmentPartition partition_alignments(const Alignment& ig, const Alignment& og) {
  if (ig.right_universe() != og.right_universe()) {
    throw UniverseMismatch("source-gold and output-gold alignments use different gold keys");
  }
  AlignmentPartition p;
  p.gold_universe = ig.right_universe();
  p.input_universe = ig.left_universe();
  p.output_universe = og.left_universe();
  for (const auto& g : p.gold_universe) {
    KeySet inputs = ig.left_of(g), outputs = og.left_of(g);
    if (!inputs.empty() && !outputs.empty()) {
      for (const auto& i : inputs) {
        for (const auto& o : outputs) p.tri.insert({i, g, o});
      }
    } else if (!inputs.empty()) {
      for (const auto& i : inputs) p.bi_input_gold.insert({i, g});
    } else if (!outputs.empty()) {
      for (const auto& o : outputs) p.bi_gold_output.insert({g, o});
    } else {
      p.un_gold.insert(g);
    }
  }
  p.un_input = ig.unaligned_left();
  p.un_output = og.unaligned_left();
  return p;
}

AtomicComparison parse_comparison(const std::string& model_text) {
  KnowledgeGraph kg = parse_kg(model_text);
  bool any = false;
  AtomicComparison c;
  c.sct = text_list(kg, "similar_consistent", &any);
  c.scd = text_list(kg, "similar_contradictory", &any);
  c.t1u = text_list(kg, "table1_unique", &any);
  c.t2u = text_list(kg, "table2_unique", &any);
  if (!any) throw InvalidValue("answer has none of the four comparison lists");
  std::set<std::string> seen;
  for (auto* list : {&c.sct, &c.scd, &c.t1u, &c.t2u}) {
    std::vector<std::string> kept;
    for (auto& fact : *list) {
      if (seen.insert(fact).second) kept.push_back(std::move(fact));
    }
    *list = std::move(kept);
  }
  return c;
}

AtomicComparison compare_rows(const TableRow& left, const TableRow& right,
                              const LangCode& language, Gateway& gateway,
                              const CompareOptions& options, std::vector<Exchange>* log) {
  CompletionRequest req;
  req.prompt = prompts::render(prompts::PromptKind::kEvaluate,
                               {{"language", language.name()},
                                {"table_1", serialize_table({left})},
                                {"table_2", serialize_table({right})}});
  req.model_id = options.model_id;
  req.temperature = options.temperature;
  req.tag = "evaluate";
  req.attempt = options.attempt;
  try {
    return complete_parsed(gateway, req, parse_comparison, log);
  } catch (const ParseError& e) {
    throw ComparisonFailed(std::string("comparison answer unreadable: ") + e.what());
  }
}

RowScore score_counts(size_t sct, size_t scd, size_t t1u, size_t t2u) {
  RowScore s;
  size_t p_den = sct + scd + t1u, r_den = sct + scd + t2u;
  s.vacuous = p_den == 0 || r_den == 0;
  s.precision = p_den == 0 ? Rational(1) : ratio(sct, p_den);
  s.recall = r_den == 0 ? Rational(1) : ratio(sct, r_den);
  Rational sum = s.precision + s.recall;
  s.f1 = sum == 0 ? Rational(0) : Rational(2) * s.precision * s.recall / sum;
  return s;
}

RowScore score_row(const AtomicComparison& c) {
  return score_counts(c.sct.size(), c.scd.size(), c.t1u.size(), c.t2u.size());
}

RowScore failed_row() {
  RowScore s;
  s.failed = true;
  return s;
}

double UpdateReport::updated() const { return to_double(updated_fraction * 100); }
double UpdateReport::added_pct() const { return to_double(added_fraction * 100); }
Rational UpdateReport::missing_ratio() const { return ratio(missed_gold, gold_len); }
Rational UpdateReport::noisy_deleted_ratio() const { return ratio(deleted_input, gold_len); }
Rational UpdateReport::noisy_added_ratio() const { return added_fraction; }
Rational UpdateReport::un_input_ratio() const { return ratio(un_input, input_len); }
Rational UpdateReport::un_output_ratio() const { return ratio(un_output, output_len); }

UpdateReport build_report(const AlignmentPartition& partition, const RowScores& input_gold,
                          const RowScores& output_gold) {
  UpdateReport r;
  r.gold_len = partition.gold_universe.size();
  r.input_len = partition.input_universe.size();
  r.output_len = partition.output_universe.size();
  r.added_rows = partition.bi_gold_output.size();
  r.missed_gold = partition.un_gold.size();
  r.deleted_input = partition.bi_input_gold.size();
  r.un_input = partition.un_input.size();
  r.un_output = partition.un_output.size();
  r.tri_rows = partition.tri_gold_keys().size();

  auto score = [&](const RowScores& scores, const KeyPair& key) -> const RowScore& {
    auto it = scores.find(key);
    if (it == scores.end()) {
      throw ComparisonFailed("no row score for gold key '" + key.first + "' and '" + key.second + "'");
    }
    if (it->second.vacuous) ++r.vacuous_rows;
    if (it->second.failed) ++r.failed_rows;
    return it->second;
  };

  std::set<KeyPair> tri_og, tri_ig;
  for (const auto& t : partition.tri) {
    tri_og.insert({t.gold_key, t.output_key});
    tri_ig.insert({t.gold_key, t.source_key});
  }
  Rational net = 0;
  for (const auto& k : tri_og) net += score(output_gold, k).f1;
  for (const auto& k : tri_ig) net -= score(input_gold, k).f1;
  Rational added = 0;
  for (const auto& p : partition.bi_gold_output) added += score(output_gold, p).f1;
  if (r.gold_len > 0) {
    Rational g(static_cast<long long>(r.gold_len));
    r.updated_fraction = net / g;
    r.added_fraction = added / g;
  }
  return r;
}

UpdateReport ensemble_scores(const std::vector<UpdateReport>& per_model) {
  if (per_model.empty()) throw EnsembleMismatch("no evaluator reports to combine");
  UpdateReport out = per_model.front();
  Rational updated = 0, added = 0;
  size_t vacuous = 0, failed = 0;
  for (const auto& r : per_model) {
    const auto& f = per_model.front();
    if (r.added_rows != f.added_rows || r.missed_gold != f.missed_gold ||
        r.deleted_input != f.deleted_input || r.gold_len != f.gold_len ||
        r.input_len != f.input_len || r.output_len != f.output_len || r.un_input != f.un_input ||
        r.un_output != f.un_output || r.tri_rows != f.tri_rows) {
      throw EnsembleMismatch("evaluator reports disagree on structural counts");
    }
    updated += r.updated_fraction;
    added += r.added_fraction;
    vacuous += r.vacuous_rows;
    failed += r.failed_rows;
  }
  Rational n(static_cast<long long>(per_model.size()));
  out.updated_fraction = updated / n;
  out.added_fraction = added / n;
  out.vacuous_rows = vacuous;
  out.failed_rows = failed;
  return out;
}

AggregateReport aggregate_reports(const std::vector<UpdateReport>& reports) {
  AggregateReport a;
  a.instances = reports.size();
  if (reports.empty()) return a;
  Rational updated = 0, added = 0;
  for (const auto& r : reports) {
    updated += r.updated_fraction;
    added += r.added_fraction;
    a.total_added_rows += r.added_rows;
    a.total_missed_gold += r.missed_gold;
    a.total_deleted_input += r.deleted_input;
    a.failed_rows += r.failed_rows;
  }
  Rational n(static_cast<long long>(reports.size()));
  a.updated = to_double(updated * 100 / n);
  a.added_pct = to_double(added * 100 / n);
  double dn = static_cast<double>(reports.size());
  a.added_rows = static_cast<double>(a.total_added_rows) / dn;
  a.missed_gold = static_cast<double>(a.total_missed_gold) / dn;
  a.deleted_input = static_cast<double>(a.total_deleted_input) / dn;
  return a;
}

TableRow row_for_key(const Rows& rows, const std::string& normalized_key) {
  TableRow out;
  std::vector<std::string> values;
  for (const auto& r : rows) {
    if (try_normalize_key(r.key) != normalized_key) continue;
    if (out.key.empty()) out.key = r.key;
    values.push_back(r.value);
  }
  if (out.key.empty()) out.key = normalized_key;
  out.value = text::join(values, ", ");
  return out;
}

InstanceEvaluation evaluate_instance(const InfoTable& source, const InfoTable& output,
                                     const InfoTable& gold, Gateway& gateway,
                                     const EvalOptions& options) {
  if (options.evaluator_models.empty()) throw ConfigError("at least one evaluator model is needed");
  InstanceEvaluation ev;
  ev.input_gold = multi_vote_align(source, gold, gateway, options.alignment_models, options.rounds,
                                   options.aligner, &ev.diagnostics);
  ev.output_gold = multi_vote_align(output, gold, gateway, options.alignment_models, options.rounds,
                                    options.aligner, &ev.diagnostics);
  ev.partition = partition_alignments(ev.input_gold, ev.output_gold);

  for (const auto& model : options.evaluator_models) {
    RowScores ig, og;
    auto run = [&](const InfoTable& candidate, const std::set<KeyPair>& pairs, RowScores& into,
                   const char* side) {
      for (const auto& pair : pairs) {
        ComparedPair cp{model, side, pair, {}, {}};
        try {
          cp.comparison = compare_rows(row_for_key(candidate.rows, pair.second),
                                       row_for_key(gold.rows, pair.first), gold.language, gateway,
                                       CompareOptions{model});
          cp.score = score_row(cp.comparison);
        } catch (const ComparisonFailed& e) {
          cp.score = failed_row();
          ev.diagnostics.push_back(model + ": " + e.what());
        }
        into[pair] = cp.score;
        ev.comparisons.push_back(std::move(cp));
      }
    };
    run(source, ev.partition.input_gold_pairs(), ig, "input");
    run(output, ev.partition.output_gold_pairs(), og, "output");
    ev.per_model.push_back(build_report(ev.partition, ig, og));
  }
  ev.report = ensemble_scores(ev.per_model);
  return ev;
}

std::string report_to_json(const UpdateReport& r) {
  ojson j;
  j["updated"] = fixed(r.updated());
  j["added_pct"] = fixed(r.added_pct());
  j["added_rows"] = r.added_rows;
  j["missed_gold"] = r.missed_gold;
  j["deleted_input"] = r.deleted_input;
  j["gold_len"] = r.gold_len;
  j["input_len"] = r.input_len;
  j["output_len"] = r.output_len;
  j["un_input"] = r.un_input;
  j["un_output"] = r.un_output;
  j["tri_rows"] = r.tri_rows;
  j["vacuous_rows"] = r.vacuous_rows;
  j["failed_rows"] = r.failed_rows;
  j["exact"] = {{"updated", to_string(r.updated_fraction)},
                {"added", to_string(r.added_fraction)},
                {"missing", to_string(r.missing_ratio())},
                {"noisy_deleted", to_string(r.noisy_deleted_ratio())},
                {"noisy_added", to_string(r.noisy_added_ratio())},
                {"un_input", to_string(r.un_input_ratio())},
                {"un_output", to_string(r.un_output_ratio())}};
  return j.dump(2);
}

std::string aggregate_to_json(const AggregateReport& a) {
  ojson j;
  j["instances"] = a.instances;
  j["updated"] = fixed(a.updated);
  j["added_pct"] = fixed(a.added_pct);
  j["added_rows"] = fixed(a.added_rows);
  j["missed_gold"] = fixed(a.missed_gold);
  j["deleted_input"] = fixed(a.deleted_input);
  j["total_added_rows"] = a.total_added_rows;
  j["total_missed_gold"] = a.total_missed_gold;
  j["total_deleted_input"] = a.total_deleted_input;
  j["failed_rows"] = a.failed_rows;
  return j.dump(2);
}

std::string aggregate_to_text(const AggregateReport& a) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), "%-10s %-12s %-16s %-12s %-12s\n%-10.2f %-12.2f %-16.2f %-12.2f %-12.2f\n",
                "Updated", "Added (%)", "Added (#Rows)", "Missed (G)", "Delete (I)", a.updated,
                a.added_pct, a.added_rows, a.missed_gold, a.deleted_input);
  return buf;
}

}  // namespace infosync
