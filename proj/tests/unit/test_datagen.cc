// Copyright 2026 The Friendlab Authors.
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

#include <cmath>

#include "friendlab/datagen.h"
#include "friendlab/io.h"
#include "friendlab/matcher.h"
#include "test_main.h"

using namespace friendlab;
using friendlab::testing::toks;

namespace {

int entity_index(const std::string& token) { return std::stoi(token.substr(1)); }
int predicate_index(const std::string& token) { return std::stoi(token.substr(1)); }

}  // namespace

TEST_CASE("oracle_labeler examples") {
  TokenSeq u1 = toks({"E01", "v2", "E05"});
  std::vector<int> p1{1};
  auto r1 = oracle_labeler(u1, p1);
  REQUIRE(r1.size() == 1);
  CHECK(r1[0].get(Role::kArg0) == Span{0, 0, 0});
  CHECK(r1[0].get(Role::kArg1) == Span{0, 2, 2});
  CHECK(r1[0].size() == 2);

  TokenSeq u2 = toks({"v2", "E05"});
  std::vector<int> p2{0};
  auto r2 = oracle_labeler(u2, p2);
  CHECK_FALSE(r2[0].get(Role::kArg0).has_value());
  CHECK(r2[0].get(Role::kArg1) == Span{0, 1, 1});

  TokenSeq u3 = toks({"E01", "v2", "E05", "E09", "v3", "E01"});
  std::vector<int> p3{1, 4};
  auto r3 = oracle_labeler(u3, p3);
  REQUIRE(r3.size() == 2);
  CHECK(r3[1].get(Role::kArg0) == Span{0, 3, 3});
  CHECK(r3[1].get(Role::kArg1) == Span{0, 5, 5});

  std::vector<int> bad{6};
  CHECK_THROWS_AS(oracle_labeler(u3, bad), std::out_of_range);
  std::vector<int> neg{-1};
  CHECK_THROWS_AS(oracle_labeler(u3, neg), std::out_of_range);
}

TEST_CASE("oracle_labeler ignores pronouns and fillers") {
  TokenSeq u = toks({"PRN", "v1", "f0"});
  std::vector<int> p{1};
  CHECK(oracle_labeler(u, p)[0].empty());
}

TEST_CASE("token classes") {
  CHECK(classify_token("E07") == TokenClass::kEntity);
  CHECK(classify_token("v3") == TokenClass::kPredicate);
  CHECK(classify_token("PRN") == TokenClass::kPronoun);
  CHECK(classify_token("f2") == TokenClass::kFiller);
  CHECK(classify_token("hello") == TokenClass::kUnknown);
  CHECK(classify_token("E") == TokenClass::kUnknown);
  CHECK(entity_token(3) == "E03");
  CHECK(predicate_token(9) == "v9");
}

TEST_CASE("generate_corpus is deterministic and sized") {
  WorldConfig cfg;
  auto a = generate_corpus(7, 100, cfg);
  auto b = generate_corpus(7, 100, cfg);
  REQUIRE(a.size() == 100);
  CHECK(serialize_corpus(a) == serialize_corpus(b));
  CHECK(serialize_corpus(generate_corpus(8, 100, cfg)) != serialize_corpus(a));
  CHECK_THROWS_AS(generate_corpus(7, 0, cfg), std::invalid_argument);
}

TEST_CASE("WorldConfig validation") {
  WorldConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  auto expect_bad = [](auto mutate) {
    WorldConfig c;
    mutate(c);
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  };
  expect_bad([](WorldConfig& c) { c.pronoun_rate = 1.5; });
  expect_bad([](WorldConfig& c) { c.ellipsis_rate = -0.1; });
  expect_bad([](WorldConfig& c) { c.pronoun_rate = 0.7; c.ellipsis_rate = 0.4; });
  expect_bad([](WorldConfig& c) { c.n_entities = 0; });
  expect_bad([](WorldConfig& c) { c.n_predicates = 0; });
  expect_bad([](WorldConfig& c) { c.max_predicates_last = 0; });
  expect_bad([](WorldConfig& c) { c.min_context_utterances = 1; });
  expect_bad([](WorldConfig& c) { c.max_context_utterances = 1; });
}

TEST_CASE("generated instances follow the construction rules") {
  WorldConfig cfg;
  auto corpus = generate_corpus(11, 2000, cfg);
  for (const Instance& inst : corpus) {
    CAPTURE(inst.id);
    REQUIRE_NOTHROW(validate_instance(inst));
    CHECK(inst.utterances.size() >= 3);
    REQUIRE(inst.gold_a);
    REQUIRE(inst.gold_b);
    REQUIRE(inst.trace);
    CHECK(inst.gold_a->size() == inst.predicates.size());

    // Context utterances: [filler] E v E with selectional preferences.
    for (std::size_t u = 0; u + 1 < inst.utterances.size(); ++u) {
      const TokenSeq& t = inst.utterances[u].tokens;
      const std::size_t off = t.size() == 4 ? 1 : 0;
      REQUIRE(t.size() == 3 + off);
      if (off) CHECK(classify_token(t[0]) == TokenClass::kFiller);
      const int v = predicate_index(t[off + 1]);
      CHECK(entity_index(t[off]) % cfg.n_entity_types == subject_type(cfg, v));
      CHECK(entity_index(t[off + 2]) % cfg.n_entity_types == object_type(cfg, v));
    }

    // gold_b: no pronoun, each predicate flanked by entities.
    const TokenSeq& rw = *inst.gold_b;
    for (const std::string& t : rw) CHECK(t != "PRN");
    std::vector<int> pred_pos;
    for (int i = 0; i < static_cast<int>(rw.size()); ++i) {
      if (classify_token(rw[i]) == TokenClass::kPredicate) pred_pos.push_back(i);
    }
    REQUIRE(pred_pos.size() == inst.predicates.size());
    auto labeled = oracle_labeler(rw, pred_pos);
    for (std::size_t k = 0; k < labeled.size(); ++k) {
      CHECK(labeled[k].get(Role::kArg0).has_value());
      CHECK(labeled[k].get(Role::kArg1).has_value());
      CHECK(canonical_concat(labeled[k], std::span<const TokenSeq>(&rw, 1)) ==
            canonical_concat((*inst.gold_a)[k], inst));
    }
  }
}

TEST_CASE("pronoun and elided arguments resolve to the most recent compatible mention") {
  WorldConfig cfg;
  auto corpus = generate_corpus(12, 2000, cfg);
  int resolved = 0;
  for (const Instance& inst : corpus) {
    const int last = static_cast<int>(inst.utterances.size()) - 1;
    for (std::size_t k = 0; k < inst.predicates.size(); ++k) {
      const int verb = predicate_index(inst.predicate_token(k));
      for (int side = 0; side < 2; ++side) {
        const Role role = side == 0 ? Role::kArg0 : Role::kArg1;
        const Span span = *(*inst.gold_a)[k].get(role);
        const SlotTrace& st = inst.trace->slots[k][side];
        const int want = side == 0 ? subject_type(cfg, verb) : object_type(cfg, verb);
        // Scan context tokens backwards for the first entity of that type.
        std::optional<Span> expected;
        for (int u = last - 1; u >= 0 && !expected; --u) {
          const TokenSeq& t = inst.utterances[u].tokens;
          for (int i = static_cast<int>(t.size()) - 1; i >= 0; --i) {
            if (is_entity(t[i]) && entity_index(t[i]) % cfg.n_entity_types == want) {
              expected = Span{u, i, i};
              break;
            }
          }
        }
        CHECK(st.eligible == expected.has_value());
        if (st.realization == SlotRealization::kExplicit) {
          CHECK(span.utterance_index == last);
          CHECK(is_entity(inst.last_utterance()[span.start]));
        } else {
          REQUIRE(expected);
          CHECK(span == *expected);
          ++resolved;
        }
      }
    }
  }
  CHECK(resolved > 1000);
}

TEST_CASE("pronoun frequency matches the sampling decisions") {
  WorldConfig cfg;
  auto corpus = generate_corpus(13, 10000, cfg);
  double expected = 0.0;
  long eligible = 0, pronouns = 0;
  int with_prn = 0;
  for (const Instance& inst : corpus) {
    int e = 0;
    for (const auto& slots : inst.trace->slots) {
      for (const SlotTrace& st : slots) {
        e += st.eligible;
        pronouns += st.realization == SlotRealization::kPronoun;
      }
    }
    eligible += e;
    expected += 1.0 - std::pow(1.0 - cfg.pronoun_rate, e);
    bool has = false;
    for (const std::string& t : inst.last_utterance()) has = has || t == "PRN";
    with_prn += has;
  }
  expected /= corpus.size();
  const double observed = static_cast<double>(with_prn) / corpus.size();
  CHECK(std::abs(observed - expected) <= 0.05);
  CHECK(std::abs(static_cast<double>(pronouns) / eligible - cfg.pronoun_rate) <= 0.02);
}
