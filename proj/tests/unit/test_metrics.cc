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

#include "friendlab/metrics.h"
#include "test_main.h"

using namespace friendlab;
using friendlab::testing::toks;

namespace {

ArgumentSet args(std::optional<Span> a0, std::optional<Span> a1) {
  ArgumentSet s;
  if (a0) s.set(Role::kArg0, *a0);
  if (a1) s.set(Role::kArg1, *a1);
  return s;
}

}  // namespace

TEST_CASE("span_prf: exact match") {
  std::vector<ArgumentSet> gold{args(Span{0, 0, 0}, Span{2, 2, 2})};
  PRF p = span_prf(gold, gold);
  CHECK(p.precision == 1.0);
  CHECK(p.recall == 1.0);
  CHECK(p.f1 == 1.0);
}

TEST_CASE("span_prf: one of two gold correct plus one spurious") {
  // Hand count: gold {ARG0@(0,0,0), ARG1@(2,2,2)}, predicted
  // {ARG0@(0,0,0), ARG1@(1,0,0)}: 1 correct, 2 predicted, 2 gold.
  std::vector<ArgumentSet> gold{args(Span{0, 0, 0}, Span{2, 2, 2})};
  std::vector<ArgumentSet> pred{args(Span{0, 0, 0}, Span{1, 0, 0})};
  PRF p = span_prf(pred, gold);
  CHECK(p.precision == 0.5);
  CHECK(p.recall == 0.5);
  CHECK(p.f1 == 0.5);
}

TEST_CASE("span_prf: empty cases") {
  std::vector<ArgumentSet> gold{args(Span{0, 0, 0}, std::nullopt)};
  std::vector<ArgumentSet> none{ArgumentSet{}};
  PRF p = span_prf(none, gold);
  CHECK(p.precision == 0.0);
  CHECK(p.recall == 0.0);
  CHECK(p.f1 == 0.0);
  PRF q = span_prf(none, none);
  CHECK(q.precision == 1.0);
  CHECK(q.recall == 1.0);
  CHECK(q.f1 == 1.0);
  CHECK_THROWS_AS(span_prf(none, {}), std::invalid_argument);
}

TEST_CASE("span_prf: same span under another role is wrong") {
  std::vector<ArgumentSet> gold{args(Span{0, 0, 0}, std::nullopt)};
  std::vector<ArgumentSet> pred{args(std::nullopt, Span{0, 0, 0})};
  CHECK(span_prf(pred, gold).f1 == 0.0);
}

TEST_CASE("span counts micro-average across instances") {
  SpanCounts total;
  total += span_counts({args(Span{0, 0, 0}, Span{0, 2, 2})}, {args(Span{0, 0, 0}, Span{0, 2, 2})});
  total += span_counts({ArgumentSet{}}, {args(Span{0, 0, 0}, Span{0, 2, 2})});
  PRF p = total.prf();
  CHECK(p.precision == 1.0);
  CHECK(p.recall == 0.5);
  CHECK(p.f1 == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("wer examples") {
  CHECK(wer(toks({"a", "b", "x", "d"}), toks({"a", "b", "c", "d"})) == 0.25);
  CHECK(wer(toks({"a", "b"}), toks({"a", "b"})) == 0.0);
  CHECK(wer({}, toks({"a", "b", "c", "d"})) == 1.0);
  CHECK(wer(toks({"a", "b", "c"}), toks({"z"})) == 3.0);
  CHECK_THROWS_AS(wer(toks({"a"}), {}), std::invalid_argument);
}

TEST_CASE("rouge_l examples") {
  CHECK(rouge_l(toks({"a", "c"}), toks({"a", "b", "c"})) == doctest::Approx(0.8).epsilon(1e-15));
  CHECK(rouge_l(toks({"a", "b"}), toks({"a", "b"})) == 1.0);
  CHECK(rouge_l(toks({"a", "b"}), toks({"c", "d"})) == 0.0);
  CHECK(rouge_l({}, toks({"a"})) == 0.0);
  CHECK(rouge_l({}, {}) == 0.0);
}

TEST_CASE("exact_match examples") {
  CHECK(exact_match(toks({"a", "b"}), toks({"a", "b"})));
  CHECK_FALSE(exact_match(toks({"a", "b"}), toks({"a", "c"})));
  CHECK(exact_match({}, {}));
}

TEST_CASE("RewriteScores aggregates corpus-level") {
  RewriteScores s;
  s.add(toks({"a", "b", "x", "d"}), toks({"a", "b", "c", "d"}));
  s.add(toks({"a", "c"}), toks({"a", "b", "c"}));
  s.add(toks({"q"}), toks({"q"}));
  CHECK(s.em() == doctest::Approx(1.0 / 3.0));
  // (1 + 1 + 0) edits over (4 + 3 + 1) reference tokens.
  CHECK(s.wer() == 0.25);
  CHECK(s.rouge_l() == doctest::Approx((0.75 + 0.8 + 1.0) / 3.0));
}
