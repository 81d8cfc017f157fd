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

// Residual-error taxonomy and per-stage attribution for the hierarchical
// pipeline.

#ifndef INFOSYNC_ERROR_ANALYSIS_H_
#define INFOSYNC_ERROR_ANALYSIS_H_

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "infosync/alignment.h"
#include "infosync/metrics.h"
#include "infosync/pipeline.h"
#include "infosync/table.h"

namespace infosync {

struct ErrorCounts {
  int64_t missing = 0;
  int64_t outdated_full = 0;
  int64_t outdated_partial = 0;
  int64_t redundant = 0;

  int64_t total() const { return missing + outdated_full + outdated_partial + redundant; }

  ErrorCounts& operator+=(const ErrorCounts& o);
  friend ErrorCounts operator+(ErrorCounts a, const ErrorCounts& b) { return a += b; }
  friend ErrorCounts operator-(const ErrorCounts& a, const ErrorCounts& b);
  friend bool operator==(const ErrorCounts&, const ErrorCounts&) = default;
};

// Fraction of the smaller SCT set shared with the other at which a second
// candidate row counts as redundant.
inline constexpr double kRedundancyOverlap = 0.5;

// Comparisons keyed by {gold_key, candidate_key}; the candidate is table 1.
using PairComparisons = std::map<KeyPair, AtomicComparison>;

// `alignment` runs from candidate keys (left) to gold keys (right). A gold
// key without candidates is missing; otherwise the best candidate F1 decides:
// 0 is outdated_full, strictly between 0 and 1 is outdated_partial. Further
// candidates of a gold key whose SCT facts overlap the best candidate's are
// redundant. A pair without a comparison scores 0.
ErrorCounts classify_errors(const Rows& candidate, const Rows& gold, const Alignment& alignment,
                            const PairComparisons& comparisons);

// Turns a candidate table into ErrorCounts against a fixed gold table.
class ErrorScorer {
 public:
  virtual ~ErrorScorer() = default;
  virtual ErrorCounts score(const InfoTable& candidate) = 0;
};

struct GatewayScorerOptions {
  std::string evaluator_model = "stub-eval";
  std::string translation_model;
  DeterministicAlignerOptions aligner;
};

// Aligns deterministically and compares rows through the gateway. Gold is
// translated into the candidate's language first when they differ.
class GatewayErrorScorer : public ErrorScorer {
 public:
  GatewayErrorScorer(InfoTable gold, Gateway& gateway, GatewayScorerOptions options = {});
  ErrorCounts score(const InfoTable& candidate) override;

 private:
  const InfoTable& gold_in(const LangCode& language);

  InfoTable gold_;
  Gateway& gateway_;
  GatewayScorerOptions options_;
  std::map<LangCode, InfoTable> translated_;
};

struct LedgerEntry {
  std::string label;
  ErrorCounts cumulative;
  ErrorCounts delta;
};

struct StageErrorLedger {
  std::vector<LedgerEntry> entries;

  const ErrorCounts& final_counts() const { return entries.back().cumulative; }
};

// Column labels, in order.
const std::vector<std::string>& ledger_labels();

// Scores the reference table and the reference-side artifact after each
// hierarchical stage. Graph artifacts are flattened deterministically.
// Columns of elided stages repeat the previous counts. Throws ConfigError
// when the traces are not a complete hierarchical run.
StageErrorLedger stagewise_ledger(const SyncTask& task, const std::vector<StageTrace>& traces,
                                  ErrorScorer& scorer);

// Field-wise sum of per-instance ledgers with identical labels.
StageErrorLedger sum_ledgers(const std::vector<StageErrorLedger>& ledgers);

// Rows per error type, one column per stage; deltas in parentheses.
std::string ledger_to_text(const StageErrorLedger& ledger);
std::string ledger_to_json(const StageErrorLedger& ledger);

}  // namespace infosync

#endif  // INFOSYNC_ERROR_ANALYSIS_H_
