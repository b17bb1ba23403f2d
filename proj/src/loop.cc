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

#include "friendlab/loop.h"

#include <exception>
#include <mutex>
#include <stdexcept>

#include "friendlab/metrics.h"

namespace friendlab {
namespace {

// Runs body(i) for i in [0, n) in parallel; the first exception thrown by
// any iteration is rethrown on the calling thread.
template <typename Body>
void parallel_for(std::int64_t n, Body body) {
  std::exception_ptr error;
  std::mutex mu;
#pragma omp parallel for schedule(dynamic, 8)
  for (std::int64_t i = 0; i < n; ++i) {
    try {
      body(i);
    } catch (...) {
      std::lock_guard<std::mutex> lock(mu);
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
}

PoolLabel label_one(const LinearModel& ma, const LinearModel& mb, const Instance& z,
                    const SelectorConfig& sel, const Predictors& pr) {
  PoolLabel out;
  out.pred_a = pr.a(ma, z);
  out.pred_b = pr.b(mb, z);
  out.match = match_instance(out.pred_a, out.pred_b, z);
  out.record = select(out.match, out.pred_a, out.pred_b, sel, z.id);
  return out;
}

bool frozen(const LoopConfig& cfg, Task task) {
  return (task == Task::kA && cfg.mode == LoopMode::kFrozenFriendA) ||
         (task == Task::kB && cfg.mode == LoopMode::kFrozenFriendB);
}

struct ErrorTally {
  std::size_t wrong = 0, total = 0;
  std::optional<double> rate() const {
    if (total == 0) return std::nullopt;
    return static_cast<double>(wrong) / static_cast<double>(total);
  }
};

template <typename Example>
LinearModel update(const LinearModel& current, Task task, const LoopConfig& cfg,
                   const std::vector<Example>& labeled, const std::vector<Example>& pseudo,
                   int iteration, std::uint64_t seed) {
  LinearModel start = cfg.retrain_policy == RetrainPolicy::kContinue
                          ? current
                          : make_model(task, current.space.n_entities,
                                       current.space.n_predicates);
  return train_epochs(std::move(start), labeled, pseudo, cfg.train,
                      cfg.train.epochs_per_iteration,
                      iteration_seed(seed, iteration, task))
      .model;
}

void check_inputs(const std::vector<Instance>& labeled_a,
                  const std::vector<Instance>& labeled_b, const LoopConfig& cfg) {
  cfg.validate();
  if (labeled_a.empty() || labeled_b.empty()) {
    throw std::invalid_argument("labeled sets must be nonempty");
  }
}

}  // namespace

std::string_view mode_name(LoopMode mode) {
  switch (mode) {
    case LoopMode::kFriend: return "friend";
    case LoopMode::kSelfTrain: return "self-train";
    case LoopMode::kFrozenFriendA: return "frozen-friend-a";
    case LoopMode::kFrozenFriendB: return "frozen-friend-b";
  }
  return "?";
}

LoopMode parse_mode(std::string_view name) {
  if (name == "friend") return LoopMode::kFriend;
  if (name == "self-train" || name == "self_train") return LoopMode::kSelfTrain;
  if (name == "frozen-friend-a" || name == "frozen_friend_a") return LoopMode::kFrozenFriendA;
  if (name == "frozen-friend-b" || name == "frozen_friend_b") return LoopMode::kFrozenFriendB;
  throw std::invalid_argument("unknown mode: " + std::string(name));
}

std::string_view policy_name(RetrainPolicy p) {
  return p == RetrainPolicy::kContinue ? "continue" : "reinit";
}

RetrainPolicy parse_policy(std::string_view name) {
  if (name == "continue") return RetrainPolicy::kContinue;
  if (name == "reinit") return RetrainPolicy::kReinit;
  throw std::invalid_argument("unknown retrain policy: " + std::string(name));
}

void LoopConfig::validate() const {
  if (max_iterations < 1) throw std::invalid_argument("max_iterations must be >= 1");
  if (pretrain_epochs < 1) throw std::invalid_argument("pretrain_epochs must be >= 1");
  if (n_entities < 1 || n_predicates < 1) throw std::invalid_argument("model sizes must be >= 1");
  selector.validate();
  train.validate();
  if (mode == LoopMode::kSelfTrain && selector_weights_explicit &&
      (selector.alpha != 1.0 || selector.beta != 1.0)) {
    throw std::invalid_argument("self-train mode requires alpha = beta = 1");
  }
}

SelectorConfig LoopConfig::effective_selector() const {
  SelectorConfig s = selector;
  if (mode == LoopMode::kSelfTrain) s.alpha = s.beta = 1.0;
  return s;
}

std::uint64_t pretrain_seed(std::uint64_t seed, Task task) {
  return derive_seed(seed, task == Task::kA ? 0xa0 : 0xb0);
}

std::uint64_t iteration_seed(std::uint64_t seed, int iteration, Task task) {
  return derive_seed(derive_seed(seed, static_cast<std::uint64_t>(iteration)),
                     task == Task::kA ? 0xa1 : 0xb1);
}

std::vector<PoolLabel> label_pool(const LinearModel& ma, const LinearModel& mb,
                                  const std::vector<Instance>& pool,
                                  const SelectorConfig& sel, const Predictors& pr) {
  std::vector<PoolLabel> out(pool.size());
  parallel_for(static_cast<std::int64_t>(pool.size()),
               [&](std::int64_t i) { out[i] = label_one(ma, mb, pool[i], sel, pr); });
  return out;
}

std::vector<PoolLabel> label_pool_serial(const LinearModel& ma, const LinearModel& mb,
                                         const std::vector<Instance>& pool,
                                         const SelectorConfig& sel,
                                         const Predictors& pr) {
  std::vector<PoolLabel> out;
  out.reserve(pool.size());
  for (const Instance& z : pool) out.push_back(label_one(ma, mb, z, sel, pr));
  return out;
}

DevMetrics evaluate_a(const LinearModel& model, const std::vector<Instance>& dev) {
  std::vector<SpanCounts> counts(dev.size());
  parallel_for(static_cast<std::int64_t>(dev.size()), [&](std::int64_t i) {
    if (!dev[i].gold_a) throw std::invalid_argument("dev instance lacks gold_a");
    counts[i] = span_counts(predict_a(model, dev[i]).arguments, *dev[i].gold_a);
  });
  SpanCounts total;
  for (const SpanCounts& c : counts) total += c;
  const PRF prf = total.prf();
  DevMetrics m;
  m.precision_a = prf.precision;
  m.recall_a = prf.recall;
  m.f1_a = prf.f1;
  return m;
}

DevMetrics evaluate_b(const LinearModel& model, const std::vector<Instance>& dev) {
  std::vector<TokenSeq> hyps(dev.size());
  parallel_for(static_cast<std::int64_t>(dev.size()), [&](std::int64_t i) {
    if (!dev[i].gold_b) throw std::invalid_argument("dev instance lacks gold_b");
    hyps[i] = predict_b(model, dev[i]).rewrite;
  });
  RewriteScores scores;
  for (std::size_t i = 0; i < dev.size(); ++i) scores.add(hyps[i], *dev[i].gold_b);
  DevMetrics m;
  m.em_b = scores.em();
  m.wer_b = scores.wer();
  m.rouge_l_b = scores.rouge_l();
  return m;
}

DevMetrics evaluate(const LinearModel& ma, const LinearModel& mb,
                    const std::vector<Instance>& dev_a, const std::vector<Instance>& dev_b) {
  DevMetrics m = evaluate_a(ma, dev_a);
  DevMetrics b = evaluate_b(mb, dev_b);
  m.em_b = b.em_b;
  m.wer_b = b.wer_b;
  m.rouge_l_b = b.rouge_l_b;
  return m;
}

LoopResult run(const std::vector<Instance>& labeled_a,
               const std::vector<Instance>& labeled_b,
               const std::vector<Instance>& unlabeled,
               const std::vector<Instance>& dev_a, const std::vector<Instance>& dev_b,
               const LoopConfig& cfg, std::uint64_t seed, const Predictors& predictors) {
  check_inputs(labeled_a, labeled_b, cfg);
  if (unlabeled.empty()) throw std::invalid_argument("unlabeled pool must be nonempty");
  const std::vector<ExampleA> gold_a = gold_examples_a(labeled_a);
  const std::vector<ExampleB> gold_b = gold_examples_b(labeled_b);
  const SelectorConfig selector = cfg.effective_selector();

  LoopResult res;
  res.model_a = train_epochs(make_model(Task::kA, cfg.n_entities,
                                        cfg.n_predicates),
                             gold_a, {}, cfg.train, cfg.pretrain_epochs,
                             pretrain_seed(seed, Task::kA))
                    .model;
  res.model_b = train_epochs(make_model(Task::kB, cfg.n_entities,
                                        cfg.n_predicates),
                             gold_b, {}, cfg.train, cfg.pretrain_epochs,
                             pretrain_seed(seed, Task::kB))
                    .model;
  IterationReport first;
  first.pool_size = static_cast<int>(unlabeled.size());
  first.dev = evaluate(res.model_a, res.model_b, dev_a, dev_b);
  res.reports.push_back(first);

  for (int it = 1; it <= cfg.max_iterations; ++it) {
    // Pseudo sets are rebuilt from scratch every iteration.
    const std::vector<PoolLabel> labels =
        label_pool(res.model_a, res.model_b, unlabeled, selector, predictors);
    std::vector<ExampleA> pseudo_a;
    std::vector<ExampleB> pseudo_b;
    ErrorTally sel_a, sel_b, pool_a, pool_b;
    bool pool_has_gold = true;
    for (std::size_t i = 0; i < unlabeled.size(); ++i) {
      const Instance& z = unlabeled[i];
      const PoolLabel& lab = labels[i];
      pool_has_gold = pool_has_gold && z.gold_a && z.gold_b;
      if (lab.record.q_a) {
        ExampleA ex{&z, lab.pred_a.arguments, {}};
        if (selector.per_predicate) ex.predicate_mask = lab.record.predicate_pass;
        pseudo_a.push_back(std::move(ex));
      }
      if (lab.record.q_b) {
        pseudo_b.push_back({&z, derive_rewrite_target(z, lab.pred_b.rewrite)});
      }
      if (!pool_has_gold) continue;
      for (std::size_t k = 0; k < z.predicates.size(); ++k) {
        const bool wrong = !(lab.pred_a.arguments[k] == (*z.gold_a)[k]);
        pool_a.wrong += wrong;
        ++pool_a.total;
        const bool admitted = lab.record.q_a && (!selector.per_predicate ||
                                                 lab.record.predicate_pass[k]);
        if (admitted) {
          sel_a.wrong += wrong;
          ++sel_a.total;
        }
      }
      const bool wrong_b = !exact_match(lab.pred_b.rewrite, *z.gold_b);
      pool_b.wrong += wrong_b;
      ++pool_b.total;
      if (lab.record.q_b) {
        sel_b.wrong += wrong_b;
        ++sel_b.total;
      }
    }

    IterationReport rep;
    rep.iteration = it;
    rep.pool_size = static_cast<int>(unlabeled.size());
    rep.selected_count_a = static_cast<int>(pseudo_a.size());
    rep.selected_count_b = static_cast<int>(pseudo_b.size());
    if (pool_has_gold) {
      rep.oracle_pseudo_error_a = sel_a.rate();
      rep.oracle_pseudo_error_b = sel_b.rate();
      rep.pool_pseudo_error_a = pool_a.rate();
      rep.pool_pseudo_error_b = pool_b.rate();
    }

    // Sequential critical section: each model has a single writer.
    if (!frozen(cfg, Task::kA)) {
      res.model_a = update(res.model_a, Task::kA, cfg, gold_a, pseudo_a, it, seed);
    }
    if (!frozen(cfg, Task::kB)) {
      res.model_b = update(res.model_b, Task::kB, cfg, gold_b, pseudo_b, it, seed);
    }
    rep.dev = evaluate(res.model_a, res.model_b, dev_a, dev_b);
    res.reports.push_back(rep);
  }
  return res;
}

LoopResult run_supervised(const std::vector<Instance>& labeled_a,
                          const std::vector<Instance>& labeled_b,
                          const std::vector<Instance>& dev_a,
                          const std::vector<Instance>& dev_b, const LoopConfig& cfg,
                          std::uint64_t seed) {
  check_inputs(labeled_a, labeled_b, cfg);
  const std::vector<ExampleA> gold_a = gold_examples_a(labeled_a);
  const std::vector<ExampleB> gold_b = gold_examples_b(labeled_b);
  LoopResult res;
  res.model_a = train_epochs(make_model(Task::kA, cfg.n_entities,
                                        cfg.n_predicates),
                             gold_a, {}, cfg.train, cfg.pretrain_epochs,
                             pretrain_seed(seed, Task::kA))
                    .model;
  res.model_b = train_epochs(make_model(Task::kB, cfg.n_entities,
                                        cfg.n_predicates),
                             gold_b, {}, cfg.train, cfg.pretrain_epochs,
                             pretrain_seed(seed, Task::kB))
                    .model;
  IterationReport first;
  first.dev = evaluate(res.model_a, res.model_b, dev_a, dev_b);
  res.reports.push_back(first);
  const std::vector<ExampleA> no_a;
  const std::vector<ExampleB> no_b;
  for (int it = 1; it <= cfg.max_iterations; ++it) {
    if (!frozen(cfg, Task::kA)) {
      res.model_a = update(res.model_a, Task::kA, cfg, gold_a, no_a, it, seed);
    }
    if (!frozen(cfg, Task::kB)) {
      res.model_b = update(res.model_b, Task::kB, cfg, gold_b, no_b, it, seed);
    }
    IterationReport rep;
    rep.iteration = it;
    rep.dev = evaluate(res.model_a, res.model_b, dev_a, dev_b);
    res.reports.push_back(rep);
  }
  return res;
}

}  // namespace friendlab
