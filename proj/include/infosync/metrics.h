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

// Synchronization quality. Each output is judged against the gold table
// through two alignments (source to gold, output to gold). Gold keys fall
// into tri-, bi- or un-aligned groups. Aligned row pairs are compared as
// atomic facts and scored with fact-level precision and recall.
//
// All per-row scores and report ratios are kept as exact rationals; the
// double fields are conversions of them.

#ifndef INFOSYNC_METRICS_H_
#define INFOSYNC_METRICS_H_

#include <boost/multiprecision/cpp_int.hpp>
#include <compare>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "infosync/alignment.h"
#include "infosync/llm_gateway.h"
#include "infosync/table.h"

namespace infosync {

using Rational = boost::multiprecision::cpp_rational;

double to_double(const Rational& r);
// "n/d", or "n" for integers.
std::string to_string(const Rational& r);

struct TriAligned {
  std::string source_key;
  std::string gold_key;
  std::string output_key;
  friend auto operator<=>(const TriAligned&, const TriAligned&) = default;
};

// (source_key, gold_key) in bi_input_gold; (gold_key, output_key) in
// bi_gold_output.
struct KeyPair {
  std::string first;
  std::string second;
  friend auto operator<=>(const KeyPair&, const KeyPair&) = default;
};

struct AlignmentPartition {
  std::set<TriAligned> tri;
  std::set<KeyPair> bi_input_gold;
  std::set<KeyPair> bi_gold_output;
  KeySet un_input;
  KeySet un_output;
  KeySet un_gold;

  KeySet gold_universe;
  KeySet input_universe;
  KeySet output_universe;

  // Distinct gold keys of each group.
  KeySet tri_gold_keys() const;
  KeySet bi_input_gold_keys() const;
  KeySet bi_gold_output_keys() const;
  // Distinct (source, gold) and (output, gold) pairs that need a comparison.
  std::set<KeyPair> input_gold_pairs() const;
  std::set<KeyPair> output_gold_pairs() const;
};

// `ig` aligns source (left) to gold (right); `og` aligns output (left) to
// gold (right). Throws UniverseMismatch when the gold universes differ.
AlignmentPartition partition_alignments(const Alignment& ig, const Alignment& og);

struct AtomicComparison {
  std::vector<std::string> sct;
  std::vector<std::string> scd;
  std::vector<std::string> t1u;
  std::vector<std::string> t2u;
  friend bool operator==(const AtomicComparison&, const AtomicComparison&) = default;
};

// Reads the four-list answer of the evaluation prompt. Facts repeated
// across lists are kept only in the first. Throws ParseError.
AtomicComparison parse_comparison(const std::string& model_text);

struct CompareOptions {
  std::string model_id;
  double temperature = kEvaluationTemperature;
  int attempt = 0;
};

// Renders the evaluation prompt for two single-row tables. Throws
// ComparisonFailed when the answer cannot be parsed after one retry.
AtomicComparison compare_rows(const TableRow& left, const TableRow& right,
                              const LangCode& language, Gateway& gateway,
                              const CompareOptions& options,
                              std::vector<Exchange>* log = nullptr);

struct RowScore {
  Rational precision;
  Rational recall;
  Rational f1;
  // A precision or recall denominator was zero.
  bool vacuous = false;
  // The comparison could not be obtained; the row scores 0.
  bool failed = false;

  double precision_value() const { return to_double(precision); }
  double recall_value() const { return to_double(recall); }
  double f1_value() const { return to_double(f1); }
};

// P = |SCT| / (|SCT|+|SCD|+|T1U|), R = |SCT| / (|SCT|+|SCD|+|T2U|). A zero
// denominator gives 1 and sets `vacuous`; F1 of P = R = 0 is 0.
RowScore score_row(const AtomicComparison& c);
RowScore score_counts(size_t sct, size_t scd, size_t t1u, size_t t2u);
RowScore failed_row();

// Keyed by {gold_key, other_key}.
using RowScores = std::map<KeyPair, RowScore>;

struct UpdateReport {
  // Net tri-aligned improvement and bi(o,g) additions over |g|, as fractions.
  Rational updated_fraction;
  Rational added_fraction;
  size_t added_rows = 0;
  size_t missed_gold = 0;
  size_t deleted_input = 0;
  size_t gold_len = 0;
  size_t input_len = 0;
  size_t output_len = 0;
  size_t un_input = 0;
  size_t un_output = 0;
  size_t tri_rows = 0;
  size_t vacuous_rows = 0;
  size_t failed_rows = 0;

  // Percent values of the two fractions.
  double updated() const;
  double added_pct() const;

  // un(g)/|g|, bi(i,g)/|g|, bi(o,g)/|g| (semantic), un(i)/|i|, un(o)/|o|; a
  // zero length yields 0.
  Rational missing_ratio() const;
  Rational noisy_deleted_ratio() const;
  Rational noisy_added_ratio() const;
  Rational un_input_ratio() const;
  Rational un_output_ratio() const;
};

// Throws ComparisonFailed when a needed pair has no score.
UpdateReport build_report(const AlignmentPartition& partition, const RowScores& input_gold,
                          const RowScores& output_gold);

// Field-wise mean of the semantic fractions. Structural counts must agree
// and are passed through; otherwise EnsembleMismatch.
UpdateReport ensemble_scores(const std::vector<UpdateReport>& per_model);

// Corpus view: every field averaged over instances.
struct AggregateReport {
  size_t instances = 0;
  double updated = 0;
  double added_pct = 0;
  double added_rows = 0;
  double missed_gold = 0;
  double deleted_input = 0;
  size_t total_added_rows = 0;
  size_t total_missed_gold = 0;
  size_t total_deleted_input = 0;
  size_t failed_rows = 0;
};

AggregateReport aggregate_reports(const std::vector<UpdateReport>& reports);

struct EvalOptions {
  std::vector<std::string> evaluator_models = {"stub-eval"};
  std::vector<std::string> alignment_models;
  int rounds = 1;
  DeterministicAlignerOptions aligner;
};

struct ComparedPair {
  std::string evaluator;
  std::string side;  // "input" or "output"
  KeyPair keys;      // {gold_key, other_key}
  AtomicComparison comparison;
  RowScore score;
};

struct InstanceEvaluation {
  Alignment input_gold;
  Alignment output_gold;
  AlignmentPartition partition;
  std::vector<UpdateReport> per_model;
  UpdateReport report;
  std::vector<ComparedPair> comparisons;
  std::vector<std::string> diagnostics;
};

// Row of `rows` for a normalized key; duplicate keys are joined with ", ".
TableRow row_for_key(const Rows& rows, const std::string& normalized_key);

InstanceEvaluation evaluate_instance(const InfoTable& source, const InfoTable& output,
                                     const InfoTable& gold, Gateway& gateway,
                                     const EvalOptions& options);

// Report documents; stable field order and fixed precision.
std::string report_to_json(const UpdateReport& report);
std::string aggregate_to_json(const AggregateReport& report);
// Updated / Added (%) / Added (#Rows) / Missed (G) / Delete (I).
std::string aggregate_to_text(const AggregateReport& report);

}  // namespace infosync

#endif  // INFOSYNC_METRICS_H_
