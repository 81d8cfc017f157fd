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

#include <doctest.h>

#include <algorithm>
#include <random>

#include "helpers.h"
#include "infosync/alignment.h"
#include "infosync/errors.h"

namespace infosync {
namespace {

using testing::FakeBackend;
using testing::table;

Alignment make(KeySet l, KeySet r, std::set<Edge> e) {
  return Alignment(std::move(l), std::move(r), std::move(e));
}

TEST_CASE("Alignment rejects edges outside the universes") {
  CHECK_THROWS_AS(make({"a"}, {"x"}, {{"a", "y"}}), UniverseMismatch);
  CHECK_THROWS_AS(make({"a"}, {"x"}, {{"b", "x"}}), UniverseMismatch);
  CHECK_NOTHROW(make({"a"}, {"x"}, {{"a", "x"}}));
}

TEST_CASE("groups are connected components") {
  Alignment a = make({"a", "b", "c"}, {"x", "y", "z"}, {{"a", "x"}, {"b", "x"}, {"c", "y"}});
  auto groups = a.groups();
  REQUIRE(groups.size() == 2);
  CHECK(groups[0] == AlignedGroup{{"a", "b"}, {"x"}});
  CHECK(groups[1] == AlignedGroup{{"c"}, {"y"}});
  CHECK(a.unaligned_left().empty());
  CHECK(a.unaligned_right() == KeySet{"z"});
  CHECK(a.right_of("a") == KeySet{"x"});
  CHECK(a.left_of("x") == KeySet{"a", "b"});
}

TEST_CASE("from_groups joins every left key to every right key") {
  Alignment a = Alignment::from_groups({"a", "b"}, {"x", "y"}, {{{"a", "b"}, {"x"}}});
  CHECK(a.edges() == std::set<Edge>{{"a", "x"}, {"b", "x"}});
  CHECK(a.unaligned_right() == KeySet{"y"});
}

TEST_CASE("from_raw normalizes keys") {
  Rows l = {{"Birth date:", "1"}}, r = {{"BIRTH  DATE", "1"}};
  Alignment a = Alignment::from_raw(l, r, {{"Birth date:", "BIRTH  DATE"}});
  CHECK(a.edges() == std::set<Edge>{{"birth date", "birth date"}});
}

TEST_CASE("key_similarity by hand") {
  CHECK(key_similarity("name", "name") == 1.0);
  // {date, of, birth} against {birth, date}: 2 * 2 / 5.
  CHECK(key_similarity("date of birth", "birth date") == doctest::Approx(0.8));
  // No shared token; trigrams share bir irt rth pla lac ace out of 8 and 9.
  CHECK(key_similarity("birthplace", "birth place") == doctest::Approx(12.0 / 17.0));
  CHECK(key_similarity("born", "birth date") == 0.0);
}

TEST_CASE("align_deterministic on identical tables is the identity") {
  Rows rows = {{"Name", "A"}, {"Born", "1"}, {"Spouse", "B"}};
  Alignment a = align_deterministic(rows, rows);
  CHECK(a.edges() == std::set<Edge>{{"born", "born"}, {"name", "name"}, {"spouse", "spouse"}});
  CHECK(a.unaligned_left().empty());
}

TEST_CASE("align_deterministic on disjoint keys aligns nothing") {
  Alignment a = align_deterministic({{"Born", "1"}}, {{"Spouse", "2"}});
  CHECK(a.empty());
  CHECK(a.unaligned_left() == KeySet{"born"});
  CHECK(a.unaligned_right() == KeySet{"spouse"});
}

TEST_CASE("align_deterministic is greedy and one to one") {
  Rows a = {{"Name", "A"}, {"Birth date", "1"}};
  Rows b = {{"Name", "A"}, {"Birth date", "1"}, {"Death date", "2"}};
  Alignment al = align_deterministic(a, b);
  CHECK(al.edges() == std::set<Edge>{{"birth date", "birth date"}, {"name", "name"}});
  CHECK(al.unaligned_right() == KeySet{"death date"});
  // Equal scores go to the smaller key.
  Alignment tie = align_deterministic({{"x date", "1"}}, {{"b date", "1"}, {"a date", "1"}});
  CHECK(tie.edges() == std::set<Edge>{{"x date", "a date"}});
}

TEST_CASE("align_deterministic uses the threshold and aliases") {
  Rows a = {{"born", "1"}}, b = {{"Birth date", "1"}};
  CHECK(align_deterministic(a, b).empty());
  DeterministicAlignerOptions opts;
  opts.aliases = {{"Born", "birth date"}};
  CHECK(align_deterministic(a, b, opts).edges() == std::set<Edge>{{"born", "birth date"}});
  DeterministicAlignerOptions strict;
  strict.threshold = 0.9;
  CHECK(align_deterministic({{"date of birth", "1"}}, b, strict).empty());
  CHECK_FALSE(align_deterministic({{"date of birth", "1"}}, b).empty());
}

TEST_CASE("align_deterministic on empty tables") {
  CHECK(align_deterministic({}, {}).edges().empty());
  Alignment a = align_deterministic({{"a", "1"}}, {});
  CHECK(a.unaligned_left() == KeySet{"a"});
}

TEST_CASE("align_llm re-anchors near misses and drops unknown keys") {
  auto backend = std::make_shared<FakeBackend>([](const CompletionRequest&) {
    return R"([["Name","Name"],["Birth Date","Birth dat"],["Occupation","Job"]])";
  });
  Gateway gw(backend);
  InfoTable a = table("en", {{"Name", "A"}, {"Birth Date", "1"}});
  InfoTable b = table("en", {{"Name", "A"}, {"Birth date", "1"}});
  LlmAlignment out = align_llm(a, b, gw, "m");
  CHECK(out.alignment.edges() ==
        std::set<Edge>{{"birth date", "birth date"}, {"name", "name"}});
  REQUIRE(backend->requests.size() == 1);
  CHECK(backend->requests[0].prompt.find("Birth date") != std::string::npos);
  CHECK(backend->requests[0].model_id == "m");
  bool reanchored = false, dropped = false;
  for (const auto& d : out.diagnostics) {
    reanchored |= d.find("re-anchored") != std::string::npos;
    dropped |= d.find("dropped") != std::string::npos;
  }
  CHECK(reanchored);
  CHECK(dropped);
}

TEST_CASE("align_llm skips the call for an empty table") {
  auto backend = std::make_shared<FakeBackend>([](const CompletionRequest&) { return "[]"; });
  Gateway gw(backend);
  LlmAlignment out = align_llm(table("en", {}), table("en", {{"a", "1"}}), gw, "m");
  CHECK(out.alignment.empty());
  CHECK(out.alignment.unaligned_right() == KeySet{"a"});
  CHECK(backend->requests.empty());
}

TEST_CASE("align_llm reprompts once on an unreadable answer") {
  int calls = 0;
  auto backend = std::make_shared<FakeBackend>([&](const CompletionRequest&) {
    return ++calls == 1 ? std::string("sorry") : std::string(R"([["a","a"]])");
  });
  Gateway gw(backend);
  LlmAlignment out = align_llm(table("en", {{"a", "1"}}), table("en", {{"a", "1"}}), gw, "m");
  CHECK(out.alignment.edges().size() == 1);
  CHECK(calls == 2);
}

TEST_CASE("majority_vote keeps strict majorities") {
  KeySet l = {"k"}, r = {"x", "y"};
  std::vector<Alignment> votes = {make(l, r, {{"k", "x"}}), make(l, r, {{"k", "x"}}),
                                  make(l, r, {{"k", "y"}})};
  CHECK(majority_vote(votes).edges() == std::set<Edge>{{"k", "x"}});
  // Two votes split evenly keep nothing.
  std::vector<Alignment> even = {make(l, r, {{"k", "x"}}), make(l, r, {{"k", "y"}})};
  CHECK(majority_vote(even).empty());
  // A single vote is returned unchanged.
  CHECK(majority_vote({votes[0]}) == votes[0]);
}

TEST_CASE("majority_vote keeps co-occurring edges of one key") {
  KeySet l = {"k"}, r = {"x", "y"};
  Alignment both = make(l, r, {{"k", "x"}, {"k", "y"}});
  CHECK(majority_vote({both, both, make(l, r, {})}) == both);
}

TEST_CASE("majority_vote resolves conflicting edges") {
  KeySet l = {"k"}, r = {"x", "y"};
  std::vector<Alignment> votes = {make(l, r, {{"k", "x"}, {"k", "y"}}), make(l, r, {{"k", "x"}}),
                                  make(l, r, {{"k", "y"}})};
  CHECK(majority_vote(votes).edges() == std::set<Edge>{{"k", "x"}});
  Alignment pref = make(l, r, {{"k", "y"}});
  CHECK(majority_vote(votes, &pref).edges() == std::set<Edge>{{"k", "y"}});
}

TEST_CASE("majority_vote errors") {
  CHECK_THROWS_AS(majority_vote({}), EmptyVoteSet);
  CHECK_THROWS_AS(majority_vote({make({"a"}, {"x"}, {}), make({"b"}, {"x"}, {})}),
                  UniverseMismatch);
}

struct VoteFixture {
  InfoTable a = table("en", {{"Name", "A"}, {"Born", "1"}});
  InfoTable b = table("en", {{"Name", "A"}, {"Birth date", "1"}});
  static constexpr const char* kWithBorn = R"([["Name","Name"],["Born","Birth date"]])";
  static constexpr const char* kNameOnly = R"([["Name","Name"]])";
};

TEST_CASE_FIXTURE(VoteFixture, "multi_vote_align with no models is the deterministic aligner") {
  auto backend = std::make_shared<FakeBackend>([](const CompletionRequest&) { return "[]"; });
  Gateway gw(backend);
  CHECK(multi_vote_align(a, b, gw, {}, 3) == align_deterministic(a.rows, b.rows));
  CHECK(backend->requests.empty());
  CHECK_THROWS_AS(multi_vote_align(a, b, gw, {"m"}, 0), ConfigError);
}

TEST_CASE_FIXTURE(VoteFixture, "multi_vote_align accepts an edge two models agree on") {
  auto backend = std::make_shared<FakeBackend>([](const CompletionRequest&) { return kWithBorn; });
  Gateway gw(backend);
  Alignment out = multi_vote_align(a, b, gw, {"m1", "m2"}, 3);
  CHECK(out.edges() == std::set<Edge>{{"born", "birth date"}, {"name", "name"}});
  CHECK(backend->requests.size() == 6);
}

TEST_CASE_FIXTURE(VoteFixture, "multi_vote_align rejects an edge only one model proposes") {
  auto backend = std::make_shared<FakeBackend>(
      [](const CompletionRequest& r) { return r.model_id == "m1" ? kWithBorn : kNameOnly; });
  Gateway gw(backend);
  Alignment out = multi_vote_align(a, b, gw, {"m1", "m2"}, 1);
  CHECK(out.edges() == std::set<Edge>{{"name", "name"}});
}

TEST_CASE_FIXTURE(VoteFixture, "multi_vote_align takes each model's majority over rounds") {
  // Round 0 of m1 proposes the extra edge; rounds 1 and 2 do not.
  auto backend = std::make_shared<FakeBackend>([](const CompletionRequest& r) {
    return r.attempt == 0 ? kWithBorn : kNameOnly;
  });
  Gateway gw(backend);
  std::vector<std::string> diag;
  Alignment out = multi_vote_align(a, b, gw, {"m1", "m2"}, 3, {}, &diag);
  CHECK(out.edges() == std::set<Edge>{{"name", "name"}});
}

TEST_CASE("score_alignment by hand") {
  KeySet l = {"a", "b", "c", "d", "e"}, r = {"w", "x", "y", "z", "v"};
  Alignment gold = make(l, r, {{"a", "w"}, {"b", "x"}, {"c", "y"}, {"d", "z"}});
  Alignment pred = make(l, r, {{"a", "w"}, {"b", "x"}, {"e", "v"}});
  AlignmentScore s = score_alignment(pred, gold);
  CHECK(s.precision == doctest::Approx(2.0 / 3.0));
  CHECK(s.recall == doctest::Approx(0.5));
  CHECK(s.f1 == doctest::Approx(4.0 / 7.0));

  AlignmentScore empty = score_alignment(make(l, r, {}), gold);
  CHECK(empty.precision == 1.0);
  CHECK(empty.recall == 0.0);
  CHECK(empty.f1 == 0.0);

  AlignmentScore perfect = score_alignment(gold, gold);
  CHECK(perfect.f1 == 1.0);
  CHECK(score_alignment(make(l, r, {}), make(l, r, {})).f1 == 1.0);
}

TEST_CASE("alignment JSON round trip") {
  Alignment a = make({"a", "b", "c"}, {"x", "y"}, {{"a", "x"}, {"b", "x"}});
  std::string j = alignment_to_json(a);
  CHECK(j.find("\"pairs\"") != std::string::npos);
  CHECK(alignment_from_json(j) == a);
  CHECK_THROWS_AS(alignment_from_json("{"), ParseError);
  CHECK_THROWS_AS(alignment_from_json(R"({"pairs":[[[],["x"]]]})"), ParseError);
}

TEST_CASE("alignment prompt listing uses raw keys and parses back") {
  Rows left = {{"Name", "A"}, {"Born", "1"}}, right = {{"Nom", "A"}, {"Né le", "1"}};
  Alignment a = Alignment::from_raw(left, right, {{"Name", "Nom"}, {"Born", "Né le"}});
  std::string listing = render_alignment_prompt(a, left, right);
  CHECK(listing == "[\n    ['Born'],['Né le'],\n    ['Name'],['Nom'],\n]");
  auto parsed = parse_alignment_prompt(listing);
  REQUIRE(parsed.size() == 2);
  CHECK(parsed[0].first == std::vector<std::string>{"Born"});
  CHECK(parsed[0].second == std::vector<std::string>{"Né le"});
  CHECK(render_alignment_prompt(make({}, {}, {}), {}, {}) == "[\n]");
  CHECK_THROWS_AS(parse_alignment_prompt("none"), NoTableFound);
  CHECK_THROWS_AS(parse_alignment_prompt("[['a']]"), MalformedRow);
}

TEST_CASE("every universe key is in exactly one group or unaligned set") {
  std::mt19937_64 rng(11);
  for (int iter = 0; iter < 500; ++iter) {
    KeySet l, r;
    size_t nl = rng() % 6, nr = rng() % 6;
    for (size_t i = 0; i < nl; ++i) l.insert("l" + std::to_string(i));
    for (size_t i = 0; i < nr; ++i) r.insert("r" + std::to_string(i));
    std::set<Edge> edges;
    for (const auto& x : l) {
      for (const auto& y : r) {
        if (rng() % 4 == 0) edges.insert({x, y});
      }
    }
    Alignment a(l, r, edges);
    std::map<std::string, int> seen;
    for (const auto& g : a.groups()) {
      for (const auto& k : g.left) ++seen["L" + k];
      for (const auto& k : g.right) ++seen["R" + k];
    }
    for (const auto& k : a.unaligned_left()) ++seen["L" + k];
    for (const auto& k : a.unaligned_right()) ++seen["R" + k];
    CHECK(seen.size() == l.size() + r.size());
    CHECK(std::all_of(seen.begin(), seen.end(), [](const auto& kv) { return kv.second == 1; }));
    CHECK(Alignment::from_groups(l, r, a.groups()).edges().size() >= edges.size());
  }
}

}  // namespace
}  // namespace infosync
