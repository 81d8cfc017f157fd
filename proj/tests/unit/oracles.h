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

// Brute-force reference implementations and generators shared by the
// property tests and the acceptance suite.

#ifndef INFOSYNC_TESTS_ORACLES_H_
#define INFOSYNC_TESTS_ORACLES_H_

#include <random>
#include <set>
#include <string>
#include <vector>

#include "helpers.h"
#include "infosync/alignment.h"
#include "infosync/knowledge_graph.h"
#include "infosync/metrics.h"

namespace infosync::testing {

inline Rows random_rows(std::mt19937_64& rng, size_t max_rows) {
  Rows rows;
  size_t n = rng() % (max_rows + 1);
  for (size_t i = 0; i < n; ++i) rows.push_back({random_key(rng, 10), random_text(rng, 14)});
  return rows;
}

inline KGValue random_value(std::mt19937_64& rng, int depth);

inline KGMap random_map(std::mt19937_64& rng, int depth) {
  KGMap m;
  size_t n = rng() % 4;
  for (size_t i = 0; i < n; ++i) m.push_back({random_key(rng, 8), random_value(rng, depth + 1)});
  return m;
}

inline KGValue random_value(std::mt19937_64& rng, int depth) {
  unsigned pick = depth >= 3 ? 0 : rng() % 3;
  if (pick == 0) return KGValue(random_text(rng, 10));
  if (pick == 1) {
    KGList list;
    size_t n = rng() % 4;
    for (size_t i = 0; i < n; ++i) list.push_back(random_value(rng, depth + 1));
    return KGValue(std::move(list));
  }
  return KGValue(random_map(rng, depth));
}

inline KeySet numbered(const std::string& prefix, size_t n) {
  KeySet out;
  for (size_t i = 0; i < n; ++i) out.insert(prefix + std::to_string(i));
  return out;
}

// Each possible edge is present with probability density / 10.
inline Alignment random_alignment(std::mt19937_64& rng, const KeySet& l, const KeySet& r,
                                  int density) {
  std::set<Edge> edges;
  for (const auto& x : l) {
    for (const auto& y : r) {
      if (static_cast<int>(rng() % 10) < density) edges.insert({x, y});
    }
  }
  return Alignment(l, r, std::move(edges));
}

struct PartitionOracle {
  std::set<TriAligned> tri;
  std::set<KeyPair> bi_input_gold;
  std::set<KeyPair> bi_gold_output;
  KeySet un_input, un_output, un_gold;
};

// Gold keys grouped by which of the two alignments reach them, every edge
// checked one by one.
inline PartitionOracle enumerate_partition(const Alignment& ig, const Alignment& og) {
  PartitionOracle o;
  for (const auto& g : ig.right_universe()) {
    std::vector<std::string> ins, outs;
    for (const auto& i : ig.left_universe()) {
      if (ig.edges().count({i, g})) ins.push_back(i);
    }
    for (const auto& k : og.left_universe()) {
      if (og.edges().count({k, g})) outs.push_back(k);
    }
    if (!ins.empty() && !outs.empty()) {
      for (const auto& i : ins) {
        for (const auto& k : outs) o.tri.insert({i, g, k});
      }
    } else if (!ins.empty()) {
      for (const auto& i : ins) o.bi_input_gold.insert({i, g});
    } else if (!outs.empty()) {
      for (const auto& k : outs) o.bi_gold_output.insert({g, k});
    } else {
      o.un_gold.insert(g);
    }
  }
  auto unaligned = [](const Alignment& a) {
    KeySet out;
    for (const auto& k : a.left_universe()) {
      bool any = false;
      for (const auto& e : a.edges()) any |= e.left == k;
      if (!any) out.insert(k);
    }
    return out;
  };
  o.un_input = unaligned(ig);
  o.un_output = unaligned(og);
  return o;
}

inline bool matches(const AlignmentPartition& p, const PartitionOracle& o) {
  return p.tri == o.tri && p.bi_input_gold == o.bi_input_gold &&
         p.bi_gold_output == o.bi_gold_output && p.un_input == o.un_input &&
         p.un_output == o.un_output && p.un_gold == o.un_gold;
}

struct FloatScore {
  double precision, recall, f1;
};

inline FloatScore float_score(size_t sct, size_t scd, size_t t1u, size_t t2u) {
  double pd = static_cast<double>(sct + scd + t1u), rd = static_cast<double>(sct + scd + t2u);
  double p = pd == 0 ? 1.0 : static_cast<double>(sct) / pd;
  double r = rd == 0 ? 1.0 : static_cast<double>(sct) / rd;
  return {p, r, p + r == 0 ? 0.0 : 2 * p * r / (p + r)};
}

}  // namespace infosync::testing

#endif  // INFOSYNC_TESTS_ORACLES_H_
