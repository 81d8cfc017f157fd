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

#include "infosync/alignment.h"

#include <algorithm>
#include <functional>
#include <map>
#include <nlohmann/json.hpp>
#include <numeric>

#include "infosync/errors.h"
#include "infosync/llm_gateway.h"
#include "infosync/prompts.h"
#include "infosync/text.h"
#include "literal.h"

namespace infosync {

namespace {

constexpr double kReanchorDistance = 0.2;

std::set<std::u32string> trigrams(const std::string& s) {
  std::u32string u = text::to_u32(s);
  std::set<std::u32string> out;
  if (u.size() < 3) {
    if (!u.empty()) out.insert(u);
    return out;
  }
  for (size_t i = 0; i + 3 <= u.size(); ++i) out.insert(u.substr(i, 3));
  return out;
}

template <typename T>
double dice(const std::set<T>& a, const std::set<T>& b) {
  if (a.empty() && b.empty()) return 0.0;
  size_t common = 0;
  for (const auto& x : a) common += b.count(x);
  return 2.0 * static_cast<double>(common) / static_cast<double>(a.size() + b.size());
}

// Union-find over "L:"/"R:" prefixed keys.
class Components {
 public:
  std::string find(const std::string& x) {
    auto it = parent_.find(x);
    if (it == parent_.end()) {
      parent_[x] = x;
      return x;
    }
    if (it->second == x) return x;
    std::string root = find(it->second);
    parent_[x] = root;
    return root;
  }
  void unite(const std::string& a, const std::string& b) {
    std::string ra = find(a), rb = find(b);
    if (ra != rb) parent_[std::max(ra, rb)] = std::min(ra, rb);
  }

 private:
  std::map<std::string, std::string> parent_;
};

std::optional<std::string> anchor(const std::string& model_key, const Rows& rows,
                                  std::vector<std::string>& diagnostics, const char* side) {
  for (const auto& r : rows) {
    if (r.key == model_key) return normalize_key(r.key);
  }
  auto norm = try_normalize_key(model_key);
  if (!norm) {
    diagnostics.push_back(std::string("dropped empty ") + side + " key");
    return std::nullopt;
  }
  std::optional<std::string> best;
  double best_distance = 2.0;
  for (const auto& k : key_universe(rows)) {
    double d = text::normalized_edit_distance(*norm, k);
    if (d < best_distance || (d == best_distance && best && k < *best)) {
      best_distance = d;
      best = k;
    }
  }
  if (best && best_distance <= kReanchorDistance) {
    diagnostics.push_back(std::string("re-anchored ") + side + " key '" + model_key + "' to '" +
                          *best + "'");
    return best;
  }
  diagnostics.push_back(std::string("dropped ") + side + " key '" + model_key +
                        "' with no close table key");
  return std::nullopt;
}

std::string raw_key_for(const std::string& normalized, const Rows& rows) {
  for (const auto& r : rows) {
    if (try_normalize_key(r.key) == normalized) return r.key;
  }
  return normalized;
}

}  // namespace

Alignment::Alignment(KeySet left_universe, KeySet right_universe, std::set<Edge> edges)
    : left_universe_(std::move(left_universe)),
      right_universe_(std::move(right_universe)),
      edges_(std::move(edges)) {
  for (const auto& e : edges_) {
    if (!left_universe_.count(e.left)) {
      throw UniverseMismatch("edge key '" + e.left + "' is not a left table key");
    }
    if (!right_universe_.count(e.right)) {
      throw UniverseMismatch("edge key '" + e.right + "' is not a right table key");
    }
  }
}

Alignment Alignment::from_raw(const Rows& left, const Rows& right,
                              const std::vector<std::pair<std::string, std::string>>& edges) {
  std::set<Edge> out;
  for (const auto& [l, r] : edges) out.insert({normalize_key(l), normalize_key(r)});
  return Alignment(key_universe(left), key_universe(right), std::move(out));
}

Alignment Alignment::from_groups(KeySet left_universe, KeySet right_universe,
                                 const std::vector<AlignedGroup>& groups) {
  std::set<Edge> edges;
  for (const auto& g : groups) {
    for (const auto& l : g.left) {
      for (const auto& r : g.right) edges.insert({l, r});
    }
  }
  return Alignment(std::move(left_universe), std::move(right_universe), std::move(edges));
}

std::vector<AlignedGroup> Alignment::groups() const {
  Components comps;
  for (const auto& e : edges_) comps.unite("L:" + e.left, "R:" + e.right);
  std::map<std::string, AlignedGroup> by_root;
  for (const auto& e : edges_) {
    AlignedGroup& g = by_root[comps.find("L:" + e.left)];
    g.left.push_back(e.left);
    g.right.push_back(e.right);
  }
  std::vector<AlignedGroup> out;
  for (auto& [root, g] : by_root) {
    std::sort(g.left.begin(), g.left.end());
    g.left.erase(std::unique(g.left.begin(), g.left.end()), g.left.end());
    std::sort(g.right.begin(), g.right.end());
    g.right.erase(std::unique(g.right.begin(), g.right.end()), g.right.end());
    out.push_back(std::move(g));
  }
  std::sort(out.begin(), out.end(),
            [](const AlignedGroup& a, const AlignedGroup& b) { return a.left < b.left; });
  return out;
}

KeySet Alignment::unaligned_left() const {
  KeySet out = left_universe_;
  for (const auto& e : edges_) out.erase(e.left);
  return out;
}

KeySet Alignment::unaligned_right() const {
  KeySet out = right_universe_;
  for (const auto& e : edges_) out.erase(e.right);
  return out;
}

KeySet Alignment::right_of(const std::string& left_key) const {
  KeySet out;
  for (auto it = edges_.lower_bound({left_key, ""}); it != edges_.end() && it->left == left_key;
       ++it) {
    out.insert(it->right);
  }
  return out;
}

KeySet Alignment::left_of(const std::string& right_key) const {
  KeySet out;
  for (const auto& e : edges_) {
    if (e.right == right_key) out.insert(e.left);
  }
  return out;
}

KeySet key_universe(const Rows& rows) {
  KeySet out;
  for (const auto& r : rows) {
    if (auto n = try_normalize_key(r.key)) out.insert(*n);
  }
  return out;
}

double key_similarity(const std::string& a, const std::string& b) {
  if (a == b) return 1.0;
  auto ta = text::tokens(a), tb = text::tokens(b);
  double token = dice(std::set<std::string>(ta.begin(), ta.end()),
                      std::set<std::string>(tb.begin(), tb.end()));
  if (token >= 0.5) return token;
  return std::max(token, dice(trigrams(a), trigrams(b)));
}

Alignment align_deterministic(const Rows& a, const Rows& b,
                              const DeterministicAlignerOptions& options) {
  KeySet left = key_universe(a), right = key_universe(b);
  std::set<std::pair<std::string, std::string>> aliases;
  for (const auto& [x, y] : options.aliases) {
    auto nx = try_normalize_key(x), ny = try_normalize_key(y);
    if (!nx || !ny) continue;
    aliases.insert({*nx, *ny});
    aliases.insert({*ny, *nx});
  }
  struct Candidate {
    double score;
    const std::string* l;
    const std::string* r;
  };
  std::vector<Candidate> candidates;
  for (const auto& l : left) {
    for (const auto& r : right) {
      double s = aliases.count({l, r}) ? 1.0 : key_similarity(l, r);
      if (s >= options.threshold) candidates.push_back({s, &l, &r});
    }
  }
  std::stable_sort(candidates.begin(), candidates.end(), [](const Candidate& x, const Candidate& y) {
    if (x.score != y.score) return x.score > y.score;
    if (*x.l != *y.l) return *x.l < *y.l;
    return *x.r < *y.r;
  });
  std::set<std::string> used_l, used_r;
  std::set<Edge> edges;
  for (const auto& c : candidates) {
    if (used_l.count(*c.l) || used_r.count(*c.r)) continue;
    used_l.insert(*c.l);
    used_r.insert(*c.r);
    edges.insert({*c.l, *c.r});
  }
  return Alignment(std::move(left), std::move(right), std::move(edges));
}

LlmAlignment alignment_from_answer(const Rows& a, const Rows& b, const Rows& answer_pairs) {
  LlmAlignment out;
  std::set<Edge> edges;
  for (const auto& pair : answer_pairs) {
    auto l = anchor(pair.key, a, out.diagnostics, "Table A");
    auto r = anchor(pair.value, b, out.diagnostics, "Table G");
    if (l && r) edges.insert({*l, *r});
  }
  out.alignment = Alignment(key_universe(a), key_universe(b), std::move(edges));
  return out;
}

LlmAlignment align_llm(const InfoTable& a, const InfoTable& b, Gateway& gateway,
                       const std::string& model_id, int attempt, std::vector<Exchange>* log) {
  if (a.rows.empty() || b.rows.empty()) {
    return {Alignment(key_universe(a.rows), key_universe(b.rows), {}), {}};
  }
  std::string languages = a.language == b.language
                              ? a.language.name()
                              : a.language.name() + ", " + b.language.name();
  CompletionRequest req;
  req.prompt = prompts::render(prompts::PromptKind::kAlignKeys,
                               {{"languages", languages},
                                {"table_a", serialize_table(a.rows)},
                                {"table_g", serialize_table(b.rows)}});
  req.model_id = model_id;
  req.tag = "align";
  req.attempt = attempt;
  Rows pairs =
      complete_parsed(gateway, req, [](const std::string& s) { return parse_table(s); }, log);
  return alignment_from_answer(a.rows, b.rows, pairs);
}

Alignment majority_vote(const std::vector<Alignment>& votes, const Alignment* preference) {
  if (votes.empty()) throw EmptyVoteSet("majority vote needs at least one alignment");
  const KeySet& lu = votes.front().left_universe();
  const KeySet& ru = votes.front().right_universe();
  for (const auto& v : votes) {
    if (v.left_universe() != lu || v.right_universe() != ru) {
      throw UniverseMismatch("votes are over different key universes");
    }
  }
  const size_t n = votes.size();
  std::map<Edge, size_t> support;
  for (const auto& v : votes) {
    for (const auto& e : v.edges()) ++support[e];
  }
  std::set<Edge> kept;
  for (const auto& [e, count] : support) {
    if (count * 2 > n) kept.insert(e);
  }

  auto co_occurring = [&](const std::vector<Edge>& edges) {
    size_t together = 0;
    for (const auto& v : votes) {
      bool all = std::all_of(edges.begin(), edges.end(),
                             [&](const Edge& e) { return v.edges().count(e) > 0; });
      together += all ? 1 : 0;
    }
    return together * 2 > n;
  };
  auto better = [&](const Edge& x, const Edge& y) {
    if (support[x] != support[y]) return support[x] > support[y];
    bool px = preference && preference->edges().count(x);
    bool py = preference && preference->edges().count(y);
    if (px != py) return px;
    return x < y;
  };
  auto resolve = [&](std::function<const std::string&(const Edge&)> side) {
    std::map<std::string, std::vector<Edge>> by_key;
    for (const auto& e : kept) by_key[side(e)].push_back(e);
    for (auto& [key, edges] : by_key) {
      if (edges.size() < 2 || co_occurring(edges)) continue;
      Edge best = *std::min_element(edges.begin(), edges.end(), better);
      for (const auto& e : edges) {
        if (!(e == best)) kept.erase(e);
      }
    }
  };
  resolve([](const Edge& e) -> const std::string& { return e.left; });
  resolve([](const Edge& e) -> const std::string& { return e.right; });
  return Alignment(lu, ru, std::move(kept));
}

Alignment multi_vote_align(const InfoTable& a, const InfoTable& b, Gateway& gateway,
                           const std::vector<std::string>& models, int rounds,
                           const DeterministicAlignerOptions& options,
                           std::vector<std::string>* diagnostics) {
  if (rounds < 1) throw ConfigError("vote rounds must be at least 1");
  Alignment deterministic = align_deterministic(a.rows, b.rows, options);
  std::vector<Alignment> final_votes = {deterministic};
  for (const auto& model : models) {
    std::vector<Alignment> runs;
    for (int r = 0; r < rounds; ++r) {
      LlmAlignment run = align_llm(a, b, gateway, model, r);
      if (diagnostics) {
        for (auto& d : run.diagnostics) diagnostics->push_back(model + ": " + d);
      }
      runs.push_back(std::move(run.alignment));
    }
    final_votes.push_back(majority_vote(runs, &deterministic));
  }
  return majority_vote(final_votes, &deterministic);
}

AlignmentScore score_alignment(const Alignment& pred, const Alignment& gold) {
  size_t hit = 0;
  for (const auto& e : pred.edges()) hit += gold.edges().count(e);
  AlignmentScore s;
  s.precision = pred.edges().empty() ? 1.0 : static_cast<double>(hit) / pred.edges().size();
  s.recall = gold.edges().empty() ? 1.0 : static_cast<double>(hit) / gold.edges().size();
  s.f1 = s.precision + s.recall == 0 ? 0.0
                                     : 2 * s.precision * s.recall / (s.precision + s.recall);
  return s;
}

std::string alignment_to_json(const Alignment& alignment) {
  nlohmann::ordered_json j;
  j["pairs"] = nlohmann::ordered_json::array();
  for (const auto& g : alignment.groups()) {
    j["pairs"].push_back({g.left, g.right});
  }
  auto ul = alignment.unaligned_left(), ur = alignment.unaligned_right();
  j["unaligned_left"] = std::vector<std::string>(ul.begin(), ul.end());
  j["unaligned_right"] = std::vector<std::string>(ur.begin(), ur.end());
  return j.dump(2);
}

Alignment alignment_from_json(const std::string& text) {
  try {
    auto j = nlohmann::json::parse(text);
    KeySet left, right;
    std::vector<AlignedGroup> groups;
    for (const auto& pair : j.at("pairs")) {
      AlignedGroup g;
      for (const auto& k : pair.at(0)) g.left.push_back(normalize_key(k.get<std::string>()));
      for (const auto& k : pair.at(1)) g.right.push_back(normalize_key(k.get<std::string>()));
      if (g.left.empty() || g.right.empty()) throw ParseError("alignment pair with an empty side");
      left.insert(g.left.begin(), g.left.end());
      right.insert(g.right.begin(), g.right.end());
      groups.push_back(std::move(g));
    }
    for (const auto& k : j.value("unaligned_left", nlohmann::json::array())) {
      left.insert(normalize_key(k.get<std::string>()));
    }
    for (const auto& k : j.value("unaligned_right", nlohmann::json::array())) {
      right.insert(normalize_key(k.get<std::string>()));
    }
    return Alignment::from_groups(std::move(left), std::move(right), groups);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad alignment file: ") + e.what());
  }
}

std::string render_alignment_prompt(const Alignment& alignment, const Rows& left,
                                    const Rows& right) {
  auto quoted = [](const std::vector<std::string>& keys, const Rows& rows) {
    std::vector<std::string> parts;
    for (const auto& k : keys) {
      std::string q = detail::quote(raw_key_for(k, rows), true);
      parts.push_back("'" + q.substr(1, q.size() - 2) + "'");
    }
    return "[" + text::join(parts, ", ") + "]";
  };
  std::string out = "[\n";
  for (const auto& g : alignment.groups()) {
    out += "    " + quoted(g.left, left) + "," + quoted(g.right, right) + ",\n";
  }
  out += "]";
  return out;
}

std::vector<std::pair<std::vector<std::string>, std::vector<std::string>>> parse_alignment_prompt(
    std::string_view text) {
  size_t start = text.find('[');
  if (start == std::string_view::npos) throw NoTableFound("no alignment list");
  size_t end = 0;
  auto lit = detail::parse_literal(text, start, &end);
  if (!lit || lit->kind != detail::Literal::Kind::kList || lit->items.size() % 2 != 0) {
    throw MalformedRow("alignment list must hold key-list pairs");
  }
  std::vector<std::pair<std::vector<std::string>, std::vector<std::string>>> out;
  auto keys = [](const detail::Literal& l) {
    std::vector<std::string> ks;
    if (l.kind != detail::Literal::Kind::kList) throw MalformedRow("alignment side is not a list");
    for (const auto& item : l.items) {
      if (!item.is_text()) throw MalformedRow("alignment key is not text");
      ks.push_back(item.text);
    }
    return ks;
  };
  for (size_t i = 0; i < lit->items.size(); i += 2) {
    out.emplace_back(keys(lit->items[i]), keys(lit->items[i + 1]));
  }
  return out;
}

}  // namespace infosync
