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

// Evaluation metrics. Corpus-level scores are micro-averaged: counts are
// summed over the corpus before dividing.

#ifndef FRIENDLAB_METRICS_H_
#define FRIENDLAB_METRICS_H_

#include <cstddef>
#include <vector>

#include "friendlab/core.h"
#include "friendlab/datagen.h"

namespace friendlab {

struct PRF {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

// Argument counts; an argument is correct when predicate index, role and
// span all match.
struct SpanCounts {
  std::size_t correct = 0;
  std::size_t predicted = 0;
  std::size_t gold = 0;

  SpanCounts& operator+=(const SpanCounts& o) {
    correct += o.correct;
    predicted += o.predicted;
    gold += o.gold;
    return *this;
  }
  // Empty vs empty scores 1/1/1; empty predictions against nonempty gold
  // score 0/0/0.
  PRF prf() const;
};

SpanCounts span_counts(const std::vector<ArgumentSet>& predicted,
                       const std::vector<ArgumentSet>& gold);
PRF span_prf(const std::vector<ArgumentSet>& predicted,
             const std::vector<ArgumentSet>& gold);

// Token edit distance over reference length. Throws on empty reference.
double wer(const TokenSeq& hyp, const TokenSeq& ref);
// Balanced LCS F-measure; 0 when either side is empty.
double rouge_l(const TokenSeq& hyp, const TokenSeq& ref);
bool exact_match(const TokenSeq& hyp, const TokenSeq& ref);

// Corpus accumulators for task B.
struct RewriteScores {
  std::size_t sentences = 0;
  std::size_t exact = 0;
  std::size_t edits = 0;
  std::size_t ref_tokens = 0;
  double rouge_sum = 0.0;

  void add(const TokenSeq& hyp, const TokenSeq& ref);
  double em() const;
  double wer() const;       // summed edits / summed reference tokens
  double rouge_l() const;   // mean sentence score
};

}  // namespace friendlab

#endif  // FRIENDLAB_METRICS_H_
