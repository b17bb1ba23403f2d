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

#include "friendlab/selector.h"

#include <algorithm>
#include <stdexcept>

namespace friendlab {
namespace {

bool in_unit(double x) { return x >= 0.0 && x <= 1.0; }

Score blend(Score confidence, Score match, double weight) {
  double v = weight * confidence.value() + (1.0 - weight) * match.value();
  // Convex combination of two values in [0,1]; clamp rounding only.
  return Score(std::clamp(v, 0.0, 1.0));
}

}  // namespace

void SelectorConfig::validate() const {
  if (!in_unit(alpha)) throw std::invalid_argument("alpha out of [0,1]");
  if (!in_unit(beta)) throw std::invalid_argument("beta out of [0,1]");
  if (!in_unit(threshold_a) || !in_unit(threshold_b)) {
    throw std::invalid_argument("threshold out of [0,1]");
  }
}

Score score_predicate(Score confidence, Score m_k, double alpha) {
  if (!in_unit(alpha)) throw std::invalid_argument("alpha out of [0,1]");
  return blend(confidence, m_k, alpha);
}

Score score_rewrite(Score confidence, Score m_prime, double beta) {
  if (!in_unit(beta)) throw std::invalid_argument("beta out of [0,1]");
  return blend(confidence, m_prime, beta);
}

SelectionRecord select(const MatchResult& match, const TaskAPrediction& pred_a,
                       const TaskBPrediction& pred_b, const SelectorConfig& cfg,
                       std::string instance_id) {
  if (match.per_predicate.size() != pred_a.confidence.size()) {
    throw std::invalid_argument("select: inconsistent predicate counts");
  }
  SelectionRecord rec;
  rec.instance_id = std::move(instance_id);
  bool all_pass = !match.per_predicate.empty();
  for (std::size_t k = 0; k < match.per_predicate.size(); ++k) {
    Score s = score_predicate(pred_a.confidence[k], match.per_predicate[k], cfg.alpha);
    bool pass = s.value() >= cfg.threshold_a;
    rec.s.push_back(s);
    rec.predicate_pass.push_back(pass);
    all_pass = all_pass && pass;
  }
  rec.q_a = cfg.per_predicate
                ? std::find(rec.predicate_pass.begin(), rec.predicate_pass.end(), true) !=
                      rec.predicate_pass.end()
                : all_pass;
  rec.r = score_rewrite(pred_b.confidence, match.overall, cfg.beta);
  rec.q_b = rec.r.value() >= cfg.threshold_b;
  return rec;
}

}  // namespace friendlab
