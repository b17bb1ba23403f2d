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

// Two-task friend-training loop. Both models are pretrained on their own
// labeled sets; every iteration labels the whole unlabeled pool, matches
// the two pseudo-labels, selects per task and retrains each non-frozen
// model on labeled plus freshly selected pseudo data.

#ifndef FRIENDLAB_LOOP_H_
#define FRIENDLAB_LOOP_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "friendlab/datagen.h"
#include "friendlab/matcher.h"
#include "friendlab/models.h"
#include "friendlab/selector.h"

namespace friendlab {

enum class LoopMode { kFriend, kSelfTrain, kFrozenFriendA, kFrozenFriendB };
std::string_view mode_name(LoopMode mode);
// Accepts "friend", "self-train"/"self_train", "frozen-friend-a", ...
LoopMode parse_mode(std::string_view name);

enum class RetrainPolicy { kContinue, kReinit };
std::string_view policy_name(RetrainPolicy policy);
RetrainPolicy parse_policy(std::string_view name);

struct LoopConfig {
  int max_iterations = 5;
  LoopMode mode = LoopMode::kFriend;
  SelectorConfig selector;
  TrainConfig train;
  RetrainPolicy retrain_policy = RetrainPolicy::kContinue;
  int pretrain_epochs = 100;
  // Vocabulary sizes of the feature space; must match the corpus world.
  int n_entities = 20;
  int n_predicates = 10;
  // Set when alpha or beta came from user configuration. Self-training
  // forces both to 1 and rejects explicit other values.
  bool selector_weights_explicit = false;

  void validate() const;
  // Selector actually used: self-training overrides alpha = beta = 1.
  SelectorConfig effective_selector() const;
};

struct DevMetrics {
  double precision_a = 0.0, recall_a = 0.0, f1_a = 0.0;
  double em_b = 0.0, wer_b = 0.0, rouge_l_b = 0.0;
};

struct IterationReport {
  int iteration = 0;  // 0 = after pretraining
  int selected_count_a = 0;
  int selected_count_b = 0;
  int pool_size = 0;
  // Fraction of wrong pseudo-labels among the selected ones (task A:
  // argument sets vs hidden gold per predicate; task B: non-exact
  // rewrites). Absent when nothing was selected or the pool lacks gold.
  std::optional<double> oracle_pseudo_error_a;
  std::optional<double> oracle_pseudo_error_b;
  // Same measure over the whole predicted pool.
  std::optional<double> pool_pseudo_error_a;
  std::optional<double> pool_pseudo_error_b;
  DevMetrics dev;
};

// Everything the selector and the reports need for one pool instance.
struct PoolLabel {
  TaskAPrediction pred_a;
  TaskBPrediction pred_b;
  MatchResult match;
  SelectionRecord record;
};

using PredictorA = std::function<TaskAPrediction(const LinearModel&, const Instance&)>;
using PredictorB = std::function<TaskBPrediction(const LinearModel&, const Instance&)>;

struct Predictors {
  PredictorA a = predict_a;
  PredictorB b = predict_b;
};

// Labels, matches and selects every pool instance. Instances are
// independent, so the parallel kernel writes each slot exactly once.
std::vector<PoolLabel> label_pool(const LinearModel& model_a, const LinearModel& model_b,
                                  const std::vector<Instance>& pool,
                                  const SelectorConfig& selector,
                                  const Predictors& predictors = {});
std::vector<PoolLabel> label_pool_serial(const LinearModel& model_a,
                                         const LinearModel& model_b,
                                         const std::vector<Instance>& pool,
                                         const SelectorConfig& selector,
                                         const Predictors& predictors = {});

DevMetrics evaluate(const LinearModel& model_a, const LinearModel& model_b,
                    const std::vector<Instance>& dev_a, const std::vector<Instance>& dev_b);
// Single-task halves of `evaluate`; the other task's fields stay zero.
DevMetrics evaluate_a(const LinearModel& model, const std::vector<Instance>& dev);
DevMetrics evaluate_b(const LinearModel& model, const std::vector<Instance>& dev);

struct LoopResult {
  LinearModel model_a;
  LinearModel model_b;
  std::vector<IterationReport> reports;
};

// Throws std::invalid_argument on empty labeled or unlabeled sets and on
// contradictory configuration.
LoopResult run(const std::vector<Instance>& labeled_a,
               const std::vector<Instance>& labeled_b,
               const std::vector<Instance>& unlabeled,
               const std::vector<Instance>& dev_a, const std::vector<Instance>& dev_b,
               const LoopConfig& cfg, std::uint64_t seed,
               const Predictors& predictors = {});

// Labeled-only reference with the exact training schedule of `run`
// (same pretraining, same per-iteration seeds and epochs, no pseudo data).
LoopResult run_supervised(const std::vector<Instance>& labeled_a,
                          const std::vector<Instance>& labeled_b,
                          const std::vector<Instance>& dev_a,
                          const std::vector<Instance>& dev_b, const LoopConfig& cfg,
                          std::uint64_t seed);

// Seeds used for pretraining and per-iteration updates.
std::uint64_t pretrain_seed(std::uint64_t seed, Task task);
std::uint64_t iteration_seed(std::uint64_t seed, int iteration, Task task);

}  // namespace friendlab

#endif  // FRIENDLAB_LOOP_H_
