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

#include "friendlab/matcher.h"

#include <stdexcept>

namespace friendlab {

TokenSeq canonical_concat(const ArgumentSet& args,
                          std::span<const TokenSeq> utterances) {
  TokenSeq out;
  for (int r = 0; r < kRoleCount; ++r) {
    const auto& s = args.get(static_cast<Role>(r));
    if (!s) continue;
    if (s->utterance_index < 0 ||
        s->utterance_index >= static_cast<int>(utterances.size())) {
      throw std::invalid_argument("invalid span: utterance index");
    }
    const TokenSeq& toks = utterances[s->utterance_index];
    if (s->start < 0 || s->start > s->end || s->end >= static_cast<int>(toks.size())) {
      throw std::invalid_argument("invalid span: token range");
    }
    out.insert(out.end(), toks.begin() + s->start, toks.begin() + s->end + 1);
  }
  return out;
}

TokenSeq canonical_concat(const ArgumentSet& args, const Instance& inst) {
  std::vector<TokenSeq> utts;
  utts.reserve(inst.utterances.size());
  for (const Utterance& u : inst.utterances) utts.push_back(u.tokens);
  return canonical_concat(args, utts);
}

std::vector<ArgumentSet> translate_rewrite(const TokenSeq& rewrite, const Instance& inst) {
  std::vector<ArgumentSet> out;
  out.reserve(inst.predicates.size());
  for (std::size_t k = 0; k < inst.predicates.size(); ++k) {
    const std::string& token = inst.predicate_token(k);
    int rank = 0;
    for (std::size_t q = 0; q < k; ++q) rank += inst.predicate_token(q) == token;
    int found = -1;
    for (int i = 0; i < static_cast<int>(rewrite.size()); ++i) {
      if (rewrite[i] == token && rank-- == 0) {
        found = i;
        break;
      }
    }
    if (found < 0) {
      out.emplace_back();
      continue;
    }
    const int idx[] = {found};
    out.push_back(oracle_labeler(rewrite, idx).front());
  }
  return out;
}

MatchResult match_arguments(const std::vector<ArgumentSet>& task_a,
                            const TokenSeq& rewrite, const Instance& inst) {
  if (inst.predicates.empty()) throw std::invalid_argument("no predicates");
  if (task_a.size() != inst.predicates.size()) {
    throw std::invalid_argument("task A prediction arity mismatch");
  }
  const std::vector<ArgumentSet> task_b = translate_rewrite(rewrite, inst);
  const std::vector<TokenSeq> rewrite_utts = {rewrite};

  MatchResult result;
  for (std::size_t k = 0; k < task_a.size(); ++k) {
    TokenSeq a = canonical_concat(task_a[k], inst);
    TokenSeq b = canonical_concat(task_b[k], rewrite_utts);
    result.per_predicate.push_back(norm_edit_distance_score(a, b));
  }
  result.overall = geometric_mean(result.per_predicate);
  return result;
}

MatchResult match_instance(const TaskAPrediction& pred_a, const TaskBPrediction& pred_b,
                           const Instance& inst) {
  return match_arguments(pred_a.arguments, pred_b.rewrite, inst);
}

}  // namespace friendlab
