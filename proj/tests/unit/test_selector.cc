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

#include "friendlab/selector.h"
#include "test_main.h"

using namespace friendlab;

namespace {

struct Case {
  MatchResult match;
  TaskAPrediction a;
  TaskBPrediction b;
};

Case make_case(std::vector<double> conf_a, std::vector<double> m, double conf_b, double overall) {
  Case c;
  for (double x : conf_a) c.a.confidence.push_back(Score(x));
  c.a.arguments.resize(conf_a.size());
  for (double x : m) c.match.per_predicate.push_back(Score(x));
  c.match.overall = Score(overall);
  c.b.confidence = Score(conf_b);
  return c;
}

}  // namespace

TEST_CASE("score blends") {
  CHECK(score_predicate(Score(0.9), Score(0.5), 0.2).value() == doctest::Approx(0.58).epsilon(1e-15));
  CHECK(score_predicate(Score(0.3), Score(0.8), 1.0).value() == 0.3);
  CHECK(score_predicate(Score(0.3), Score(0.8), 0.0).value() == 0.8);
  CHECK(score_rewrite(Score(0.5), Score(1.0), 0.2).value() == doctest::Approx(0.9).epsilon(1e-15));
  for (double beta : {0.0, 0.2, 0.5, 1.0}) {
    CHECK(score_rewrite(Score(1.0), Score(1.0), beta).value() == 1.0);
    CHECK(score_rewrite(Score(0.0), Score(0.0), beta).value() == 0.0);
  }
  CHECK_THROWS_AS(score_predicate(Score(0.5), Score(0.5), 1.5), std::invalid_argument);
}

TEST_CASE("select uses >= and min aggregation") {
  SelectorConfig cfg;
  cfg.alpha = 0.0;
  cfg.beta = 0.0;
  Case at = make_case({0.1, 0.1}, {0.6, 0.6}, 0.1, 0.6);
  SelectionRecord r = select(at.match, at.a, at.b, cfg, "x");
  CHECK(r.q_a);
  CHECK(r.q_b);
  CHECK(r.instance_id == "x");

  Case mixed = make_case({0.0, 0.0}, {0.9, 0.5}, 0.0, 0.5);
  SelectionRecord m = select(mixed.match, mixed.a, mixed.b, cfg);
  CHECK_FALSE(m.q_a);
  CHECK(m.predicate_pass == std::vector<bool>{true, false});
  cfg.per_predicate = true;
  CHECK(select(mixed.match, mixed.a, mixed.b, cfg).q_a);
}

TEST_CASE("threshold 1.0 rejects anything below 1") {
  SelectorConfig cfg;
  cfg.threshold_a = cfg.threshold_b = 1.0;
  Case c = make_case({0.999}, {1.0}, 0.999, 1.0);
  SelectionRecord r = select(c.match, c.a, c.b, cfg);
  CHECK_FALSE(r.q_a);
  CHECK_FALSE(r.q_b);
}

TEST_CASE("selection is monotone in scores and nested in thresholds") {
  Rng rng(8);
  for (int trial = 0; trial < 3000; ++trial) {
    const double ca = rng.uniform01(), m = rng.uniform01(), cb = rng.uniform01();
    SelectorConfig cfg;
    cfg.alpha = rng.uniform01();
    cfg.beta = rng.uniform01();
    cfg.threshold_a = rng.uniform01();
    cfg.threshold_b = rng.uniform01();
    Case base = make_case({ca}, {m}, cb, m);
    Case up = make_case({std::min(1.0, ca + 0.1)}, {std::min(1.0, m + 0.1)},
                        std::min(1.0, cb + 0.1), std::min(1.0, m + 0.1));
    SelectionRecord r0 = select(base.match, base.a, base.b, cfg);
    SelectionRecord r1 = select(up.match, up.a, up.b, cfg);
    CHECK((!r0.q_a || r1.q_a));
    CHECK((!r0.q_b || r1.q_b));
    SelectorConfig higher = cfg;
    higher.threshold_a = std::min(1.0, cfg.threshold_a + 0.2);
    higher.threshold_b = std::min(1.0, cfg.threshold_b + 0.2);
    SelectionRecord r2 = select(base.match, base.a, base.b, higher);
    CHECK((!r2.q_a || r0.q_a));
    CHECK((!r2.q_b || r0.q_b));
  }
}

TEST_CASE("alpha = beta = 1 depends on confidences only") {
  SelectorConfig cfg;
  cfg.alpha = cfg.beta = 1.0;
  Case a = make_case({0.7}, {0.0}, 0.7, 0.0);
  Case b = make_case({0.7}, {1.0}, 0.7, 1.0);
  SelectionRecord ra = select(a.match, a.a, a.b, cfg), rb = select(b.match, b.a, b.b, cfg);
  CHECK(ra.q_a == rb.q_a);
  CHECK(ra.q_b == rb.q_b);
  CHECK(ra.s == rb.s);
}

TEST_CASE("SelectorConfig validation messages") {
  SelectorConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.threshold_a = 1.5;
  CHECK_THROWS_WITH_AS(cfg.validate(), "threshold out of [0,1]", std::invalid_argument);
  cfg = SelectorConfig{};
  cfg.threshold_b = -0.1;
  CHECK_THROWS_WITH_AS(cfg.validate(), "threshold out of [0,1]", std::invalid_argument);
  cfg = SelectorConfig{};
  cfg.alpha = 2.0;
  CHECK_THROWS_WITH_AS(cfg.validate(), "alpha out of [0,1]", std::invalid_argument);
}
