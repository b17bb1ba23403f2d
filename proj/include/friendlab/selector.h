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

#ifndef FRIENDLAB_SELECTOR_H_
#define FRIENDLAB_SELECTOR_H_

#include <string>
#include <vector>

#include "friendlab/core.h"
#include "friendlab/matcher.h"
#include "friendlab/models.h"

namespace friendlab {

struct SelectorConfig {
  double alpha = 0.2;  // weight of task-A confidence against m_k
  double beta = 0.2;   // weight of task-B confidence against m'
  double threshold_a = 0.6;
  double threshold_b = 0.6;
  // Task A normally admits an instance only when every predicate passes.
  // When set, passing predicates are admitted individually.
  bool per_predicate = false;

  // Throws std::invalid_argument, e.g. "threshold out of [0,1]".
  void validate() const;
};

struct SelectionRecord {
  std::string instance_id;
  std::vector<Score> s;              // per predicate
  Score r;
  std::vector<bool> predicate_pass;  // s_k >= threshold_a
  bool q_a = false;
  bool q_b = false;
};

// alpha * confidence + (1 - alpha) * m_k
Score score_predicate(Score confidence, Score m_k, double alpha);
// beta * confidence + (1 - beta) * m'
Score score_rewrite(Score confidence, Score m_prime, double beta);

SelectionRecord select(const MatchResult& match, const TaskAPrediction& pred_a,
                       const TaskBPrediction& pred_b, const SelectorConfig& cfg,
                       std::string instance_id = {});

}  // namespace friendlab

#endif  // FRIENDLAB_SELECTOR_H_
