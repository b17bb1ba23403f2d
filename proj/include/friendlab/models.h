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

// Surrogate task models. Task A is a per-token BIO labeler conditioned on
// a predicate; task B rewrites the last utterance with keep/delete
// decisions plus one optional context span inserted before each slot.
// Both are linear-softmax models over sparse binary features.

#ifndef FRIENDLAB_MODELS_H_
#define FRIENDLAB_MODELS_H_

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "friendlab/core.h"
#include "friendlab/datagen.h"

namespace friendlab {

enum class Task { kA, kB };
std::string_view task_name(Task task);

// Identifies the featurization a model was trained with.
struct FeatureSpace {
  Task task = Task::kA;
  int n_entities = 20;
  int n_predicates = 10;

  std::string version() const;
  int dimension() const;
  friend bool operator==(const FeatureSpace&, const FeatureSpace&) = default;
};

struct Feature {
  int index = 0;
  double value = 1.0;
};
using FeatureVector = std::vector<Feature>;

// labels x features weight matrix plus one bias per label.
struct LinearModel {
  FeatureSpace space;
  std::vector<std::string> labels;
  std::vector<double> weights;  // row-major, labels.size() * n_features()
  std::vector<double> bias;

  int n_features() const { return space.dimension(); }
  int n_labels() const { return static_cast<int>(labels.size()); }
  double& w(int label, int feature) { return weights[label * n_features() + feature]; }
  double w(int label, int feature) const {
    return weights[label * n_features() + feature];
  }
  double score(int label, const FeatureVector& fv) const;
  // Throws std::invalid_argument on shape mismatch or non-finite weights.
  void check() const;

  friend bool operator==(const LinearModel&, const LinearModel&) = default;
};

// Task A label order; ties in decoding resolve to the earliest label.
inline constexpr std::array<const char*, 7> kBioLabels = {
    "O", "B-ARG0", "I-ARG0", "B-ARG1", "I-ARG1", "B-ARG2", "I-ARG2"};
inline constexpr int kBioLabelCount = 7;
// Task B rows: keep/delete classifier, then start and end span scorers.
inline constexpr int kKeep = 0, kDelete = 1, kStart = 2, kEnd = 3;

LinearModel make_model(Task task, int n_entities, int n_predicates);
LinearModel make_model(Task task, const WorldConfig& world);

struct TaskAPrediction {
  std::vector<ArgumentSet> arguments;  // one per predicate
  std::vector<Score> confidence;       // one per predicate
  // [predicate][flattened dialogue token][label]
  std::vector<std::vector<std::array<double, kBioLabelCount>>> token_probs;
  // Per predicate, per role (canonical order): product of token probs.
  std::vector<std::array<std::optional<double>, kRoleCount>> argument_confidence;
};

// Keep flags for every last-utterance token, and one (start, end) pair per
// insertion slot: slots 0..L-1 sit before token j, slot L before the end
// of the utterance. start > end means no insertion. Positions index the
// flattened dialogue.
struct RewriteDecisions {
  std::vector<bool> keep;
  std::vector<int> start;
  std::vector<int> end;
  friend bool operator==(const RewriteDecisions&, const RewriteDecisions&) = default;
};

// Non-insertion encoding used for training targets.
inline constexpr int kNoInsertStart = 1;
inline constexpr int kNoInsertEnd = 0;

struct TaskBPrediction {
  TokenSeq rewrite;
  Score confidence;
  RewriteDecisions decisions;
  std::vector<std::array<double, 2>> keep_probs;   // [token][keep, delete]
  std::vector<std::vector<double>> start_probs;    // [slot][position]
  std::vector<std::vector<double>> end_probs;      // [slot][position]
};

TaskAPrediction predict_a(const LinearModel& model, const Instance& instance);
// Throws std::invalid_argument("no context") on single-utterance input.
TaskBPrediction predict_b(const LinearModel& model, const Instance& instance);

// Applies decisions to the instance.
TokenSeq assemble_rewrite(const Instance& instance, const RewriteDecisions& d);

// Finds the canonical decisions that turn the last utterance into
// `rewrite`: most kept tokens, then fewest insertions, then earliest
// insertion slot; inserted runs come from the latest context occurrence.
// Non-insertion slots carry the (kNoInsertStart, kNoInsertEnd) encoding.
// Throws std::invalid_argument if no decision sequence yields `rewrite`.
RewriteDecisions derive_rewrite_target(const Instance& instance,
                                       const TokenSeq& rewrite);
// Canonicalizes decoded decisions: realized insertions are kept as-is,
// non-insertions are mapped to the sentinel encoding.
RewriteDecisions canonical_target(const RewriteDecisions& decoded);

struct TrainConfig {
  double learning_rate = 0.1;
  int batch_size = 16;
  int epochs_per_iteration = 3;
  double lambda = 1.0;

  void validate() const;
};

// One training example. `predicate_mask` (task A only) restricts the loss
// to the selected predicates; empty means all.
struct ExampleA {
  const Instance* instance = nullptr;
  std::vector<ArgumentSet> target;
  std::vector<bool> predicate_mask;
};
struct ExampleB {
  const Instance* instance = nullptr;
  RewriteDecisions target;
};

// BIO label index per flattened dialogue token for one predicate.
std::vector<int> bio_targets(const Instance& instance, const ArgumentSet& args);

// Dense gradient with the model's shape.
struct Gradient {
  std::vector<double> weights;
  std::vector<double> bias;
};

struct Objective {
  double loss = 0.0;
  Gradient gradient;
};

// Cross-entropy of one example and its gradient accumulated into `grad`
// scaled by `scale`.
double example_loss_a(const LinearModel& model, const ExampleA& ex,
                      Gradient* grad, double scale);
double example_loss_b(const LinearModel& model, const ExampleB& ex,
                      Gradient* grad, double scale);

// L = sum_labeled CE + lambda * sum_pseudo CE and its exact gradient.
Objective objective_a(const LinearModel& model, const std::vector<ExampleA>& labeled,
                      const std::vector<ExampleA>& pseudo, double lambda);
Objective objective_b(const LinearModel& model, const std::vector<ExampleB>& labeled,
                      const std::vector<ExampleB>& pseudo, double lambda);

struct TrainResult {
  LinearModel model;
  std::vector<double> loss_trace;  // mean weighted loss per example, per epoch
};

// Minibatch gradient descent on the combined objective. Each batch step
// is w -= lr * mean_i(weight_i * grad CE_i), weight 1 for labeled and
// lambda for pseudo examples. Shuffling is a function of `seed` only.
// Throws std::invalid_argument when both sets are empty.
TrainResult train_epochs(LinearModel model, const std::vector<ExampleA>& labeled,
                         const std::vector<ExampleA>& pseudo, const TrainConfig& cfg,
                         int epochs, std::uint64_t seed);
TrainResult train_epochs(LinearModel model, const std::vector<ExampleB>& labeled,
                         const std::vector<ExampleB>& pseudo, const TrainConfig& cfg,
                         int epochs, std::uint64_t seed);

// Gold examples from annotated instances. Throw if gold is missing.
std::vector<ExampleA> gold_examples_a(const std::vector<Instance>& corpus);
std::vector<ExampleB> gold_examples_b(const std::vector<Instance>& corpus);

}  // namespace friendlab

#endif  // FRIENDLAB_MODELS_H_
