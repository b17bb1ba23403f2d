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

// Translation matcher. Both pseudo-labels are mapped into the space of
// argument sets: task A output is used as is, task B output is labeled by
// the fixed sentence-level labeler. Agreement per predicate is the
// normalized edit distance between canonical argument concatenations; the
// utterance score is their geometric mean.

#ifndef FRIENDLAB_MATCHER_H_
#define FRIENDLAB_MATCHER_H_

#include <span>
#include <vector>

#include "friendlab/core.h"
#include "friendlab/datagen.h"
#include "friendlab/models.h"

namespace friendlab {

struct MatchResult {
  std::vector<Score> per_predicate;
  Score overall;
};

// Tokens of the present roles in canonical order, read from `utterances`.
// Throws std::invalid_argument for spans outside the utterances.
TokenSeq canonical_concat(const ArgumentSet& args,
                          std::span<const TokenSeq> utterances);
TokenSeq canonical_concat(const ArgumentSet& args, const Instance& instance);

// Arguments the sentence-level labeler extracts from `rewrite` for each
// predicate of `instance`. The k-th predicate is located at the r-th
// left-to-right occurrence of its token, where r counts earlier
// predicates with the same token; a missing predicate yields an empty set.
std::vector<ArgumentSet> translate_rewrite(const TokenSeq& rewrite,
                                           const Instance& instance);

MatchResult match_arguments(const std::vector<ArgumentSet>& task_a,
                            const TokenSeq& rewrite, const Instance& instance);
MatchResult match_instance(const TaskAPrediction& pred_a,
                           const TaskBPrediction& pred_b, const Instance& instance);

}  // namespace friendlab

#endif  // FRIENDLAB_MATCHER_H_
