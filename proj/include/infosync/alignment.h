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

// Key correspondences between two tables.
//
// An Alignment stores atomic left-key to right-key edges over explicit key
// universes. All keys are normalized (see normalize_key). Groups are the
// connected components of the edge graph, so every universe key belongs to
// exactly one group or one unaligned set.

#ifndef INFOSYNC_ALIGNMENT_H_
#define INFOSYNC_ALIGNMENT_H_

#include <compare>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "infosync/llm_gateway.h"
#include "infosync/table.h"

namespace infosync {

struct Edge {
  std::string left;
  std::string right;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

struct AlignedGroup {
  std::vector<std::string> left;   // sorted
  std::vector<std::string> right;  // sorted
  friend bool operator==(const AlignedGroup&, const AlignedGroup&) = default;
};

using KeySet = std::set<std::string>;

class Alignment {
 public:
  Alignment() = default;

  // Throws UniverseMismatch when an edge endpoint lies outside its universe.
  Alignment(KeySet left_universe, KeySet right_universe, std::set<Edge> edges);

  // Edges given as raw keys; keys are normalized first.
  static Alignment from_raw(const Rows& left, const Rows& right,
                            const std::vector<std::pair<std::string, std::string>>& edges);

  // Every left key of a group is joined to every right key of the group.
  static Alignment from_groups(KeySet left_universe, KeySet right_universe,
                               const std::vector<AlignedGroup>& groups);

  const KeySet& left_universe() const { return left_universe_; }
  const KeySet& right_universe() const { return right_universe_; }
  const std::set<Edge>& edges() const { return edges_; }

  // Connected components, ordered by their smallest left key.
  std::vector<AlignedGroup> groups() const;
  KeySet unaligned_left() const;
  KeySet unaligned_right() const;

  KeySet right_of(const std::string& left_key) const;
  KeySet left_of(const std::string& right_key) const;

  bool empty() const { return edges_.empty(); }
  friend bool operator==(const Alignment&, const Alignment&) = default;

 private:
  KeySet left_universe_;
  KeySet right_universe_;
  std::set<Edge> edges_;
};

// Normalized keys of a row list; rows whose key normalizes to nothing are
// skipped.
KeySet key_universe(const Rows& rows);

struct DeterministicAlignerOptions {
  double threshold = 0.5;
  // Key pairs treated as synonyms (similarity 1). Matched after normalization.
  std::vector<std::pair<std::string, std::string>> aliases;
};

// Token-set Dice over normalized keys; when it falls below the threshold the
// character-trigram Dice is used instead.
double key_similarity(const std::string& normalized_a, const std::string& normalized_b);

// Greedy one-to-one matching by descending similarity, ties by key order.
Alignment align_deterministic(const Rows& a, const Rows& b,
                              const DeterministicAlignerOptions& options = {});

struct LlmAlignment {
  Alignment alignment;
  std::vector<std::string> diagnostics;
};

// Renders the alignment prompt with the tables' languages. Model keys that are not
// echoed exactly are re-anchored to the closest real key within normalized
// edit distance 0.2 or dropped with a diagnostic.
LlmAlignment align_llm(const InfoTable& a, const InfoTable& b, Gateway& gateway,
                       const std::string& model_id, int attempt = 0,
                       std::vector<Exchange>* log = nullptr);

// Turns one raw model answer into an alignment, applying re-anchoring.
LlmAlignment alignment_from_answer(const Rows& a, const Rows& b, const Rows& answer_pairs);

// Keeps an edge iff it occurs in strictly more than half of the votes. When a
// key keeps several edges that do not co-occur in a majority of votes, the
// edge with the most support wins, then the one in `preference`, then the
// smallest. Throws EmptyVoteSet or UniverseMismatch.
Alignment majority_vote(const std::vector<Alignment>& votes, const Alignment* preference = nullptr);

// Per-model majority over `rounds` runs, then a majority over the
// deterministic result together with every per-model result. Both tables
// should share a language for the deterministic vote to be meaningful.
Alignment multi_vote_align(const InfoTable& a, const InfoTable& b, Gateway& gateway,
                           const std::vector<std::string>& models, int rounds,
                           const DeterministicAlignerOptions& options = {},
                           std::vector<std::string>* diagnostics = nullptr);

struct AlignmentScore {
  double precision = 0;
  double recall = 0;
  double f1 = 0;
};

// Edge-level precision and recall. An empty prediction has precision 1 and an
// empty gold alignment recall 1.
AlignmentScore score_alignment(const Alignment& pred, const Alignment& gold);

// JSON document {"pairs": [[[left...], [right...]], ...],
// "unaligned_left": [...], "unaligned_right": [...]}.
std::string alignment_to_json(const Alignment& alignment);
Alignment alignment_from_json(const std::string& text);

// Alignment listing used inside update prompts.
std::string render_alignment_prompt(const Alignment& alignment, const Rows& left,
                                    const Rows& right);
std::vector<std::pair<std::vector<std::string>, std::vector<std::string>>> parse_alignment_prompt(
    std::string_view text);

}  // namespace infosync

#endif  // INFOSYNC_ALIGNMENT_H_
