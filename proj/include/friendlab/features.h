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

// Hand-crafted sparse features for the two surrogate models.
//
// Task A (token i, predicate p):
//   token identity; token class x location (relative position within the
//   predicate's utterance clipped to +-5, else context distance 1..4+);
//   the same conjoined with the predicate's left and right neighbour
//   status (entity / pronoun / gap); token identity x predicate identity;
//   context recency rank x neighbour status; same-utterance flag.
//
// Task B keep/delete (token j): token identity; class trigram.
// Task B span scorers (candidate i, slot j): slot pattern x candidate
//   location x class; slot pattern x recency rank; slot pattern x
//   sentinel position (0, 1, other); candidate identity x governing
//   predicate x slot side; slot side x recency rank.

#ifndef FRIENDLAB_FEATURES_H_
#define FRIENDLAB_FEATURES_H_

#include <vector>

#include "friendlab/datagen.h"
#include "friendlab/models.h"

namespace friendlab {

// Flattened dialogue with per-token attributes precomputed.
struct DialogueView {
  std::vector<int> utterance;  // utterance index per flat token
  std::vector<int> position;   // position within its utterance
  std::vector<int> cls;        // TokenClass as int
  std::vector<int> token_id;   // vocabulary id, unknown bucket for OOV
  std::vector<int> recency;    // 1 = latest context entity, 0 = not one
  int last_begin = 0;          // flat index of the last utterance
  int last_length = 0;
  int n_utterances = 0;

  int size() const { return static_cast<int>(utterance.size()); }
};

DialogueView make_view(const Instance& instance, const FeatureSpace& space);

int vocabulary_size(const FeatureSpace& space);
// Predicate vocabulary id in [0, n_predicates], n_predicates = unknown.
int predicate_id(const FeatureSpace& space, const std::string& token);

FeatureVector features_a(const FeatureSpace& space, const DialogueView& view,
                         int predicate_flat, int predicate, int token);

enum class SlotSide { kNone = 0, kSubject = 1, kObject = 2 };

struct SlotInfo {
  int pattern = 0;    // current class (or end) x previous class (or start)
  SlotSide side = SlotSide::kNone;
  int governor = -1;  // predicate vocabulary id when side != kNone
};

SlotInfo slot_info(const FeatureSpace& space, const DialogueView& view,
                   const Instance& instance, int slot);
FeatureVector keep_features(const FeatureSpace& space, const DialogueView& view, int j);
FeatureVector pair_features(const FeatureSpace& space, const DialogueView& view,
                            const SlotInfo& slot, int candidate);

}  // namespace friendlab

#endif  // FRIENDLAB_FEATURES_H_
