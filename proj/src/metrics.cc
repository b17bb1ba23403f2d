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

#include <stdexcept>

namespace friendlab {

PRF SpanCounts::prf() const {
  PRF out;
  if (predicted == 0 && gold == 0) return {1.0, 1.0, 1.0};
  out.precision = predicted == 0 ? 0.0 : static_cast<double>(correct) / predicted;
  out.recall = gold == 0 ? 0.0 : static_cast<double>(correct) / gold;
  double denom = out.precision + out.recall;
  out.f1 = denom > 0.0 ? 2.0 * out.precision * out.recall / denom : 0.0;
  return out;
}

SpanCounts span_counts(const std::vector<ArgumentSet>& predicted,
                       const std::vector<ArgumentSet>& gold) {
  if (predicted.size() != gold.size()) {
    throw std::invalid_argument("span_prf: predicate count mismatch");
  }
  SpanCounts c;
  for (std::size_t k = 0; k < gold.size(); ++k) {
    for (int r = 0; r < kRoleCount; ++r) {
      const auto& p = predicted[k].get(static_cast<Role>(r));
      const auto& g = gold[k].get(static_cast<Role>(r));
      c.predicted += p.has_value();
      c.gold += g.has_value();
      c.correct += p && g && *p == *g;
    }
  }
  return c;
}

PRF span_prf(const std::vector<ArgumentSet>& predicted,
             const std::vector<ArgumentSet>& gold) {
  return span_counts(predicted, gold).prf();
}

double wer(const TokenSeq& hyp, const TokenSeq& ref) {
  if (ref.empty()) throw std::invalid_argument("wer: empty reference");
  return static_cast<double>(edit_distance(hyp, ref)) / static_cast<double>(ref.size());
}

double rouge_l(const TokenSeq& hyp, const TokenSeq& ref) {
  if (hyp.empty() || ref.empty()) return 0.0;
  double lcs = static_cast<double>(lcs_length(hyp, ref));
  double p = lcs / static_cast<double>(hyp.size());
  double r = lcs / static_cast<double>(ref.size());
  return p + r > 0.0 ? 2.0 * p * r / (p + r) : 0.0;
}

bool exact_match(const TokenSeq& hyp, const TokenSeq& ref) { return hyp == ref; }

void RewriteScores::add(const TokenSeq& hyp, const TokenSeq& ref) {
  ++sentences;
  exact += exact_match(hyp, ref);
  edits += edit_distance(hyp, ref);
  ref_tokens += ref.size();
  rouge_sum += friendlab::rouge_l(hyp, ref);
}

double RewriteScores::em() const {
  return sentences ? static_cast<double>(exact) / sentences : 0.0;
}

double RewriteScores::wer() const {
  return ref_tokens ? static_cast<double>(edits) / ref_tokens : 0.0;
}

double RewriteScores::rouge_l() const {
  return sentences ? rouge_sum / sentences : 0.0;
}

}  // namespace friendlab
