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
#include <numeric>

#include "friendlab/models.h"
#include "test_main.h"

using namespace friendlab;
using friendlab::testing::make_instance;
using friendlab::testing::toks;

namespace {

void randomize(LinearModel& m, std::uint64_t seed, double scale) {
  Rng rng(seed);
  for (double& w : m.weights) w = scale * (2.0 * rng.uniform01() - 1.0);
  for (double& b : m.bias) b = scale * (2.0 * rng.uniform01() - 1.0);
}

struct FlatPos {
  int utt, idx;
};

std::vector<FlatPos> flatten(const Instance& inst) {
  std::vector<FlatPos> out;
  for (int u = 0; u < static_cast<int>(inst.utterances.size()); ++u) {
    for (int i = 0; i < static_cast<int>(inst.utterances[u].tokens.size()); ++i) {
      out.push_back({u, i});
    }
  }
  return out;
}

// Reference decode from exposed token distributions: argmax (earliest
// label on ties), orphan I starts a span, spans stop at utterance
// boundaries, and each role keeps its most confident span.
ArgumentSet reference_decode(const Instance& inst,
                             const std::vector<std::array<double, kBioLabelCount>>& probs,
                             std::array<std::optional<double>, kRoleCount>& conf) {
  const std::vector<FlatPos> pos = flatten(inst);
  std::vector<int> label(probs.size());
  for (std::size_t t = 0; t < probs.size(); ++t) {
    int best = 0;
    for (int l = 1; l < kBioLabelCount; ++l) {
      if (probs[t][l] > probs[t][best]) best = l;
    }
    label[t] = best;
  }
  ArgumentSet out;
  conf = {};
  std::size_t t = 0;
  while (t < label.size()) {
    if (label[t] == 0) {
      ++t;
      continue;
    }
    const int role = (label[t] - 1) / 2;
    std::size_t e = t;
    double c = probs[t][label[t]];
    while (e + 1 < label.size() && label[e + 1] == 2 + 2 * role &&
           pos[e + 1].utt == pos[t].utt) {
      ++e;
      c *= probs[e][label[e]];
    }
    if (!conf[role] || c > *conf[role]) {
      conf[role] = c;
      out.set(static_cast<Role>(role), Span{pos[t].utt, pos[t].idx, pos[e].idx});
    }
    t = e + 1;
  }
  return out;
}

double rel_err(double a, double n) {
  return std::abs(a - n) / std::max({std::abs(a), std::abs(n), 1e-3});
}

Instance small_dialogue() {
  Instance inst = make_instance({toks({"E01", "v2", "E05"}), toks({"f1", "E03", "v4", "E07"}),
                                 toks({"PRN", "v2"})},
                                {1});
  return inst;
}

}  // namespace

TEST_CASE("zero-weight task-A model decodes nothing") {
  auto corpus = generate_corpus(3, 20, WorldConfig{});
  LinearModel m = make_model(Task::kA, WorldConfig{});
  for (const Instance& inst : corpus) {
    TaskAPrediction p = predict_a(m, inst);
    REQUIRE(p.arguments.size() == inst.predicates.size());
    for (std::size_t k = 0; k < p.arguments.size(); ++k) {
      CHECK(p.arguments[k].empty());
      CHECK(p.confidence[k].value() == 0.0);
    }
  }
}

TEST_CASE("task-A distributions normalize and decoding is re-checkable") {
  auto corpus = generate_corpus(4, 60, WorldConfig{});
  LinearModel m = make_model(Task::kA, WorldConfig{});
  randomize(m, 17, 1.5);
  int spans = 0;
  for (const Instance& inst : corpus) {
    TaskAPrediction p = predict_a(m, inst);
    for (std::size_t k = 0; k < inst.predicates.size(); ++k) {
      for (const auto& tok : p.token_probs[k]) {
        const double sum = std::accumulate(tok.begin(), tok.end(), 0.0);
        CHECK(std::abs(sum - 1.0) < 1e-9);
      }
      std::array<std::optional<double>, kRoleCount> conf;
      ArgumentSet ref = reference_decode(inst, p.token_probs[k], conf);
      CHECK(ref == p.arguments[k]);
      std::vector<double> cs;
      for (int r = 0; r < kRoleCount; ++r) {
        CHECK(conf[r].has_value() == p.argument_confidence[k][r].has_value());
        if (conf[r]) {
          CHECK(*conf[r] == doctest::Approx(*p.argument_confidence[k][r]).epsilon(1e-12));
          cs.push_back(*conf[r]);
          ++spans;
        }
      }
      const double gm = cs.empty() ? 0.0 : geometric_mean(cs).value();
      CHECK(p.confidence[k].value() == doctest::Approx(gm).epsilon(1e-12));
    }
    TaskAPrediction again = predict_a(m, inst);
    CHECK(again.arguments == p.arguments);
  }
  CHECK(spans > 20);
}

TEST_CASE("orphan I tags are repaired into spans") {
  Instance inst = small_dialogue();
  LinearModel m = make_model(Task::kA, WorldConfig{});
  // Bias I-ARG1 above everything: every token tags I-ARG1, which the
  // repair turns into one span per utterance.
  m.bias[4] = 5.0;
  TaskAPrediction p = predict_a(m, inst);
  const auto& s = p.arguments[0].get(Role::kArg1);
  REQUIRE(s.has_value());
  CHECK(s->start == 0);
  CHECK(s->end == static_cast<int>(inst.utterances[s->utterance_index].tokens.size()) - 1);
  CHECK_FALSE(p.arguments[0].get(Role::kArg0).has_value());
}

TEST_CASE("zero-weight task-B decode is fully determined by tie rules") {
  Instance inst = small_dialogue();
  LinearModel m = make_model(Task::kB, WorldConfig{});
  TaskBPrediction p = predict_b(m, inst);
  // Keep everything; start = end = 0 everywhere, so "E01" is inserted in
  // every slot including the end of the utterance.
  CHECK(p.rewrite == toks({"E01", "PRN", "E01", "v2", "E01"}));
  CHECK(p.confidence.value() > 0.0);
  CHECK(p.confidence.value() <= 1.0);
  Instance single = make_instance({toks({"E01", "v2", "E05"})}, {1});
  CHECK_THROWS_WITH_AS(predict_b(m, single), "no context", std::invalid_argument);
}

TEST_CASE("task-B confidence is the product of realized decisions") {
  auto corpus = generate_corpus(5, 40, WorldConfig{});
  LinearModel m = make_model(Task::kB, WorldConfig{});
  randomize(m, 23, 1.0);
  for (const Instance& inst : corpus) {
    TaskBPrediction p = predict_b(m, inst);
    double c = 1.0;
    for (std::size_t j = 0; j < p.decisions.keep.size(); ++j) {
      c *= p.keep_probs[j][p.decisions.keep[j] ? 0 : 1];
    }
    for (std::size_t j = 0; j < p.decisions.start.size(); ++j) {
      const int st = p.decisions.start[j], ed = p.decisions.end[j];
      if (st <= ed) c *= p.start_probs[j][st] * p.end_probs[j][ed];
    }
    CHECK(p.confidence.value() == doctest::Approx(c).epsilon(1e-12));
    CHECK(p.confidence.value() > 0.0);
    CHECK(assemble_rewrite(inst, p.decisions) == p.rewrite);
  }
}

TEST_CASE("gold rewrites are expressible as decisions") {
  auto corpus = generate_corpus(6, 1000, WorldConfig{});
  for (const Instance& inst : corpus) {
    RewriteDecisions d = derive_rewrite_target(inst, *inst.gold_b);
    CHECK(assemble_rewrite(inst, d) == *inst.gold_b);
    for (std::size_t j = 0; j < d.start.size(); ++j) {
      if (d.start[j] > d.end[j]) {
        CHECK(d.start[j] == kNoInsertStart);
        CHECK(d.end[j] == kNoInsertEnd);
      }
    }
  }
  Instance inst = small_dialogue();
  CHECK_THROWS_AS(derive_rewrite_target(inst, toks({"E99", "v2"})), std::invalid_argument);
}

TEST_CASE("derive_rewrite_target prefers the latest context occurrence") {
  Instance inst = make_instance({toks({"E01", "v2", "E05"}), toks({"E01", "v4", "E07"}),
                                 toks({"v2", "E05"})},
                                {0});
  RewriteDecisions d = derive_rewrite_target(inst, toks({"E01", "v2", "E05"}));
  CHECK(d.start[0] == 3);
  CHECK(d.end[0] == 3);
  CHECK(std::all_of(d.keep.begin(), d.keep.end(), [](bool k) { return k; }));
}

TEST_CASE("analytic gradients match central finite differences") {
  const double h = 1e-5;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    CAPTURE(seed);
    auto corpus = generate_corpus(100 + seed, 6, WorldConfig{});
    std::vector<Instance> lab(corpus.begin(), corpus.begin() + 3);
    std::vector<Instance> unl(corpus.begin() + 3, corpus.end());

    LinearModel ma = make_model(Task::kA, WorldConfig{});
    randomize(ma, seed, 0.3);
    std::vector<ExampleA> la = gold_examples_a(lab);
    std::vector<ExampleA> pa;
    for (const Instance& z : unl) {
      ExampleA ex{&z, predict_a(ma, z).arguments, {}};
      ex.predicate_mask.assign(z.predicates.size(), true);
      ex.predicate_mask.back() = z.predicates.size() == 1;
      pa.push_back(ex);
    }
    LinearModel mb = make_model(Task::kB, WorldConfig{});
    randomize(mb, seed + 50, 0.3);
    std::vector<ExampleB> lb = gold_examples_b(lab);
    std::vector<ExampleB> pb;
    for (const Instance& z : unl) pb.push_back({&z, canonical_target(predict_b(mb, z).decisions)});

    auto check_task = [&](LinearModel m, auto objective_fn, const auto& labeled,
                          const auto& pseudo) {
      const double lambda = 0.7;
      Objective obj = objective_fn(m, labeled, pseudo, lambda);
      // Every coordinate with a nonzero analytic gradient, plus a sample
      // of the rest (which must have a zero numeric gradient).
      std::vector<std::size_t> coords;
      Rng pick(seed * 7);
      for (std::size_t i = 0; i < m.weights.size(); ++i) {
        if (obj.gradient.weights[i] != 0.0 || pick.uniform_index(2000) == 0) coords.push_back(i);
      }
      double worst = 0.0;
      for (std::size_t i : coords) {
        const double w0 = m.weights[i];
        m.weights[i] = w0 + h;
        const double up = objective_fn(m, labeled, pseudo, lambda).loss;
        m.weights[i] = w0 - h;
        const double down = objective_fn(m, labeled, pseudo, lambda).loss;
        m.weights[i] = w0;
        worst = std::max(worst, rel_err(obj.gradient.weights[i], (up - down) / (2 * h)));
      }
      for (std::size_t i = 0; i < m.bias.size(); ++i) {
        const double b0 = m.bias[i];
        m.bias[i] = b0 + h;
        const double up = objective_fn(m, labeled, pseudo, lambda).loss;
        m.bias[i] = b0 - h;
        const double down = objective_fn(m, labeled, pseudo, lambda).loss;
        m.bias[i] = b0;
        worst = std::max(worst, rel_err(obj.gradient.bias[i], (up - down) / (2 * h)));
      }
      CHECK(worst < 1e-4);
      CHECK(coords.size() > 20);
    };
    check_task(ma, objective_a, la, pa);
    check_task(mb, objective_b, lb, pb);
  }
}

TEST_CASE("lambda = 0 removes the pseudo term") {
  auto corpus = generate_corpus(21, 8, WorldConfig{});
  std::vector<Instance> lab(corpus.begin(), corpus.begin() + 4);
  std::vector<Instance> unl(corpus.begin() + 4, corpus.end());
  LinearModel m = make_model(Task::kB, WorldConfig{});
  randomize(m, 5, 0.5);
  std::vector<ExampleB> pseudo;
  for (const Instance& z : unl) pseudo.push_back({&z, canonical_target(predict_b(m, z).decisions)});
  Objective with = objective_b(m, gold_examples_b(lab), pseudo, 0.0);
  Objective without = objective_b(m, gold_examples_b(lab), {}, 0.0);
  CHECK(with.loss == without.loss);
  CHECK(with.gradient.weights == without.gradient.weights);
  CHECK(with.gradient.bias == without.gradient.bias);
}

TEST_CASE("training reduces the loss and is seed-deterministic") {
  auto corpus = generate_corpus(31, 50, WorldConfig{});
  TrainConfig cfg;
  for (Task task : {Task::kA, Task::kB}) {
    LinearModel m = make_model(task, WorldConfig{});
    TrainResult r1 = task == Task::kA ? train_epochs(m, gold_examples_a(corpus), {}, cfg, 50, 9)
                                      : train_epochs(m, gold_examples_b(corpus), {}, cfg, 50, 9);
    TrainResult r2 = task == Task::kA ? train_epochs(m, gold_examples_a(corpus), {}, cfg, 50, 9)
                                      : train_epochs(m, gold_examples_b(corpus), {}, cfg, 50, 9);
    REQUIRE(r1.loss_trace.size() == 50);
    CHECK(r1.loss_trace.back() < r1.loss_trace.front());
    for (double l : r1.loss_trace) CHECK(std::isfinite(l));
    CHECK(r1.model == r2.model);
    CHECK(r1.loss_trace == r2.loss_trace);
  }
  CHECK_THROWS_AS(train_epochs(make_model(Task::kA, WorldConfig{}), std::vector<ExampleA>{}, {},
                               cfg, 1, 1),
                  std::invalid_argument);
}

TEST_CASE("TrainConfig validation") {
  TrainConfig c;
  CHECK_NOTHROW(c.validate());
  c.learning_rate = 0.0;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c = TrainConfig{};
  c.lambda = -1.0;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c = TrainConfig{};
  c.batch_size = 0;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
}

TEST_CASE("model shape checks") {
  LinearModel m = make_model(Task::kA, WorldConfig{});
  CHECK_NOTHROW(m.check());
  m.weights[3] = std::nan("");
  CHECK_THROWS_AS(m.check(), std::invalid_argument);
  LinearModel other = make_model(Task::kA, 5, 3);
  CHECK(other.space.version() == make_model(Task::kA, WorldConfig{}).space.version());
  CHECK(other.n_features() != make_model(Task::kA, WorldConfig{}).n_features());
}
