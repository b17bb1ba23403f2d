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

#include "friendlab/features.h"

#include <algorithm>
#include <charconv>

namespace friendlab {
namespace {

constexpr int kClasses = 5;        // TokenClass values
constexpr int kEdgeClass = 5;      // sentence boundary in class n-grams
constexpr int kBoundedClasses = 6;
constexpr int kLocations = 15;     // 11 relative positions + 4 distances
constexpr int kStatuses = 3;       // entity, pronoun, gap
constexpr int kRecency = 8;        // 0 = none, 1..7 (7 = 7+)
constexpr int kPatterns = kBoundedClasses * kBoundedClasses;
constexpr int kCandLocations = 5;  // context distance 1..4+, last utterance
constexpr int kSides = 3;

int parse_index(const std::string& token) {
  int value = -1;
  auto res = std::from_chars(token.data() + 1, token.data() + token.size(), value);
  return res.ec == std::errc() ? value : -1;
}

// Block layout for task A.
struct LayoutA {
  int vocab, preds;
  int tok, cls_loc, cls_loc_left, cls_loc_right, lex, rec_left, rec_right, same, dim;

  explicit LayoutA(const FeatureSpace& s)
      : vocab(vocabulary_size(s)), preds(s.n_predicates + 1) {
    tok = 0;
    cls_loc = tok + vocab;
    cls_loc_left = cls_loc + kClasses * kLocations;
    cls_loc_right = cls_loc_left + kClasses * kLocations * kStatuses;
    lex = cls_loc_right + kClasses * kLocations * kStatuses;
    rec_left = lex + vocab * preds;
    rec_right = rec_left + kRecency * kStatuses;
    same = rec_right + kRecency * kStatuses;
    dim = same + 1;
  }
};

// Block layout for task B: keep block followed by the pair block.
struct LayoutB {
  int vocab, preds;
  int keep_tok, keep_tri, pat_loc, pat_rec, pat_sent, lex, side_rec, dim;

  explicit LayoutB(const FeatureSpace& s)
      : vocab(vocabulary_size(s)), preds(s.n_predicates + 1) {
    keep_tok = 0;
    keep_tri = keep_tok + vocab;
    pat_loc = keep_tri + kBoundedClasses * kBoundedClasses * kBoundedClasses;
    pat_rec = pat_loc + kPatterns * kCandLocations * kClasses;
    pat_sent = pat_rec + kPatterns * kRecency;
    lex = pat_sent + kPatterns * 3;
    side_rec = lex + vocab * preds * 2;
    dim = side_rec + kSides * kRecency;
  }
};

int status_of(const DialogueView& v, int flat) {
  if (flat < v.last_begin || flat >= v.last_begin + v.last_length) return 2;
  switch (static_cast<TokenClass>(v.cls[flat])) {
    case TokenClass::kEntity: return 0;
    case TokenClass::kPronoun: return 1;
    default: return 2;
  }
}

int class_at(const DialogueView& v, int j) {
  if (j < 0 || j >= v.last_length) return kEdgeClass;
  return v.cls[v.last_begin + j];
}

}  // namespace

int vocabulary_size(const FeatureSpace& s) {
  return s.n_entities + s.n_predicates + 1 + kFillerCount + 1;
}

int predicate_id(const FeatureSpace& s, const std::string& token) {
  if (classify_token(token) != TokenClass::kPredicate) return s.n_predicates;
  int k = parse_index(token);
  return k >= 0 && k < s.n_predicates ? k : s.n_predicates;
}

int FeatureSpace::dimension() const {
  return task == Task::kA ? LayoutA(*this).dim : LayoutB(*this).dim;
}

DialogueView make_view(const Instance& inst, const FeatureSpace& s) {
  DialogueView v;
  v.n_utterances = static_cast<int>(inst.utterances.size());
  const int unknown = vocabulary_size(s) - 1;
  for (int u = 0; u < v.n_utterances; ++u) {
    const TokenSeq& toks = inst.utterances[u].tokens;
    if (u == v.n_utterances - 1) {
      v.last_begin = v.size();
      v.last_length = static_cast<int>(toks.size());
    }
    for (int p = 0; p < static_cast<int>(toks.size()); ++p) {
      TokenClass c = classify_token(toks[p]);
      int id = unknown;
      int k = c == TokenClass::kPronoun || c == TokenClass::kUnknown ? -1
                                                                      : parse_index(toks[p]);
      switch (c) {
        case TokenClass::kEntity:
          if (k >= 0 && k < s.n_entities) id = k;
          break;
        case TokenClass::kPredicate:
          if (k >= 0 && k < s.n_predicates) id = s.n_entities + k;
          break;
        case TokenClass::kPronoun:
          id = s.n_entities + s.n_predicates;
          break;
        case TokenClass::kFiller:
          if (k >= 0 && k < kFillerCount) id = s.n_entities + s.n_predicates + 1 + k;
          break;
        case TokenClass::kUnknown:
          break;
      }
      v.utterance.push_back(u);
      v.position.push_back(p);
      v.cls.push_back(static_cast<int>(c));
      v.token_id.push_back(id);
      v.recency.push_back(0);
    }
  }
  int rank = 0;
  for (int i = v.last_begin - 1; i >= 0; --i) {
    if (v.cls[i] == static_cast<int>(TokenClass::kEntity)) {
      v.recency[i] = std::min(++rank, kRecency - 1);
    }
  }
  return v;
}

FeatureVector features_a(const FeatureSpace& s, const DialogueView& v,
                         int pred_flat, int pred, int i) {
  const LayoutA lay(s);
  const int cls = v.cls[i];
  int loc;
  const bool same = v.utterance[i] == v.utterance[pred_flat];
  if (same) {
    loc = std::clamp(i - pred_flat, -5, 5) + 5;
  } else {
    loc = 11 + std::min(v.utterance[pred_flat] - v.utterance[i], 4) - 1;
  }
  const int left = status_of(v, pred_flat - 1);
  const int right = status_of(v, pred_flat + 1);
  const int cl = cls * kLocations + loc;

  FeatureVector fv;
  fv.reserve(9);
  fv.push_back({lay.tok + v.token_id[i]});
  fv.push_back({lay.cls_loc + cl});
  fv.push_back({lay.cls_loc_left + cl * kStatuses + left});
  fv.push_back({lay.cls_loc_right + cl * kStatuses + right});
  if (cls == static_cast<int>(TokenClass::kEntity)) {
    fv.push_back({lay.lex + v.token_id[i] * lay.preds + pred});
  }
  fv.push_back({lay.rec_left + v.recency[i] * kStatuses + left});
  fv.push_back({lay.rec_right + v.recency[i] * kStatuses + right});
  if (same) fv.push_back({lay.same});
  return fv;
}

SlotInfo slot_info(const FeatureSpace& s, const DialogueView& v,
                   const Instance& inst, int j) {
  const int cur = class_at(v, j);
  const int prev = class_at(v, j - 1);
  const int next = class_at(v, j + 1);
  constexpr int kEnt = static_cast<int>(TokenClass::kEntity);
  constexpr int kPred = static_cast<int>(TokenClass::kPredicate);
  constexpr int kPrn = static_cast<int>(TokenClass::kPronoun);
  const TokenSeq& last = inst.last_utterance();

  SlotInfo info;
  info.pattern = cur * kBoundedClasses + prev;
  auto govern = [&](int at, SlotSide side) {
    info.side = side;
    info.governor = predicate_id(s, last[at]);
  };
  if (cur == kPrn) {
    if (prev == kPred) {
      govern(j - 1, SlotSide::kObject);
    } else if (next == kPred) {
      govern(j + 1, SlotSide::kSubject);
    }
  } else if (cur == kPred && prev != kEnt && prev != kPrn) {
    govern(j, SlotSide::kSubject);
  } else if (prev == kPred && cur != kEnt && cur != kPrn) {
    govern(j - 1, SlotSide::kObject);
  }
  return info;
}

FeatureVector keep_features(const FeatureSpace& s, const DialogueView& v, int j) {
  const LayoutB lay(s);
  const int tri = (class_at(v, j) * kBoundedClasses + class_at(v, j - 1)) *
                      kBoundedClasses + class_at(v, j + 1);
  return {{lay.keep_tok + v.token_id[v.last_begin + j]}, {lay.keep_tri + tri}};
}

FeatureVector pair_features(const FeatureSpace& s, const DialogueView& v,
                            const SlotInfo& slot, int i) {
  const LayoutB lay(s);
  const int last_utt = v.n_utterances - 1;
  const int loc = v.utterance[i] == last_utt
                      ? 4
                      : std::min(last_utt - v.utterance[i], 4) - 1;
  const int sentinel = i == 0 ? 0 : (i == 1 ? 1 : 2);
  const int side = static_cast<int>(slot.side);

  FeatureVector fv;
  fv.reserve(5);
  fv.push_back({lay.pat_loc + (slot.pattern * kCandLocations + loc) * kClasses + v.cls[i]});
  fv.push_back({lay.pat_rec + slot.pattern * kRecency + v.recency[i]});
  fv.push_back({lay.pat_sent + slot.pattern * 3 + sentinel});
  if (slot.side != SlotSide::kNone &&
      v.cls[i] == static_cast<int>(TokenClass::kEntity)) {
    fv.push_back({lay.lex + (v.token_id[i] * lay.preds + slot.governor) * 2 + side - 1});
  }
  fv.push_back({lay.side_rec + side * kRecency + v.recency[i]});
  return fv;
}

}  // namespace friendlab
