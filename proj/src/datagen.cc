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

#include "friendlab/datagen.h"

#include <cctype>
#include <cstdio>
#include <stdexcept>

namespace friendlab {
namespace {

constexpr std::array<std::string_view, kRoleCount> kRoleNames = {
    "ARG0", "ARG1", "ARG2", "ARG3", "ARG4", "ARGM-TMP", "ARGM-LOC", "ARGM-PRP"};

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

// Position of a token in the flattened dialogue.
struct Mention {
  int utterance;
  int position;
  int entity;
};

int random_entity_of_type(const WorldConfig& cfg, int type, Rng& rng) {
  // Entities of type t are t, t + T, t + 2T, ...
  int count = (cfg.n_entities - 1 - type) / cfg.n_entity_types + 1;
  return type + cfg.n_entity_types * static_cast<int>(rng.uniform_index(count));
}

}  // namespace

TokenClass classify_token(std::string_view token) {
  if (token == kPronoun) return TokenClass::kPronoun;
  if (token.size() >= 2) {
    std::string_view rest = token.substr(1);
    if (token[0] == 'E' && all_digits(rest)) return TokenClass::kEntity;
    if (token[0] == 'v' && all_digits(rest)) return TokenClass::kPredicate;
    if (token[0] == 'f' && all_digits(rest)) return TokenClass::kFiller;
  }
  return TokenClass::kUnknown;
}

bool is_entity(std::string_view token) {
  return classify_token(token) == TokenClass::kEntity;
}

std::string_view role_name(Role role) {
  return kRoleNames[static_cast<int>(role)];
}

Role parse_role(std::string_view name) {
  for (int r = 0; r < kRoleCount; ++r) {
    if (kRoleNames[r] == name) return static_cast<Role>(r);
  }
  throw std::invalid_argument("unknown role: " + std::string(name));
}

bool ArgumentSet::empty() const { return size() == 0; }

int ArgumentSet::size() const {
  int n = 0;
  for (const auto& s : spans_) n += s.has_value();
  return n;
}

const std::string& Instance::predicate_token(std::size_t k) const {
  const PredicateRef& p = predicates.at(k);
  return utterances.at(p.utterance_index).tokens.at(p.token_index);
}

void validate_instance(const Instance& inst) {
  auto fail = [&](const std::string& what) {
    throw std::invalid_argument("instance " + inst.id + ": " + what);
  };
  if (inst.utterances.empty()) fail("no utterances");
  for (const Utterance& u : inst.utterances) {
    if (u.tokens.empty()) fail("empty utterance");
    for (const std::string& t : u.tokens) {
      if (t.empty()) fail("empty token");
      for (char c : t) {
        if (std::isspace(static_cast<unsigned char>(c))) fail("token has whitespace");
      }
    }
  }
  if (inst.predicates.empty()) fail("no predicates");
  const int last = static_cast<int>(inst.utterances.size()) - 1;
  for (const PredicateRef& p : inst.predicates) {
    if (p.utterance_index != last) fail("predicate outside last utterance");
    if (p.token_index < 0 ||
        p.token_index >= static_cast<int>(inst.last_utterance().size())) {
      fail("predicate index out of range");
    }
  }
  if (inst.gold_a) {
    if (inst.gold_a->size() != inst.predicates.size()) fail("gold_a arity");
    for (const ArgumentSet& args : *inst.gold_a) {
      for (int r = 0; r < kRoleCount; ++r) {
        const auto& s = args.get(static_cast<Role>(r));
        if (!s) continue;
        if (s->utterance_index < 0 || s->utterance_index > last) fail("span utterance");
        int len = static_cast<int>(inst.utterances[s->utterance_index].tokens.size());
        if (s->start < 0 || s->start > s->end || s->end >= len) fail("span range");
      }
    }
  }
}

void WorldConfig::validate() const {
  auto fail = [](const std::string& what) {
    throw std::invalid_argument("world config: " + what);
  };
  if (n_entities < 1 || n_entities > 100) fail("n_entities out of [1,100]");
  if (n_predicates < 1) fail("n_predicates < 1");
  if (min_context_utterances < 2) fail("min_context_utterances < 2");
  if (max_context_utterances < min_context_utterances) {
    fail("max_context_utterances < min_context_utterances");
  }
  if (!(pronoun_rate >= 0.0 && pronoun_rate <= 1.0)) fail("pronoun_rate out of [0,1]");
  if (!(ellipsis_rate >= 0.0 && ellipsis_rate <= 1.0)) fail("ellipsis_rate out of [0,1]");
  if (pronoun_rate + ellipsis_rate > 1.0) fail("pronoun_rate + ellipsis_rate > 1");
  if (!(filler_rate >= 0.0 && filler_rate <= 1.0)) fail("filler_rate out of [0,1]");
  if (max_predicates_last < 1) fail("max_predicates_last < 1");
  if (n_entity_types < 1 || n_entity_types > n_entities) {
    fail("n_entity_types out of [1,n_entities]");
  }
  if (n_entity_types == 1 && n_entities < 2) fail("need two entities");
}

std::string entity_token(int index) {
  char buf[8];
  std::snprintf(buf, sizeof(buf), "E%02d", index);
  return buf;
}

std::string predicate_token(int index) { return "v" + std::to_string(index); }

std::string filler_token(int index) { return "f" + std::to_string(index); }

int entity_type(const WorldConfig& cfg, int entity) {
  return entity % cfg.n_entity_types;
}

int subject_type(const WorldConfig& cfg, int predicate) {
  return predicate % cfg.n_entity_types;
}

int object_type(const WorldConfig& cfg, int predicate) {
  const int t = cfg.n_entity_types;
  if (t == 1) return 0;
  return (predicate + 1 + (predicate / t) % (t - 1)) % t;
}

std::vector<Instance> generate_corpus(std::uint64_t seed, int n,
                                      const WorldConfig& cfg) {
  if (n < 1) throw std::invalid_argument("generate_corpus: n < 1");
  cfg.validate();

  std::vector<Instance> corpus;
  corpus.reserve(n);
  for (int i = 0; i < n; ++i) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(i)));
    Instance inst;
    inst.id = std::to_string(seed) + "-" + std::to_string(i);

    std::vector<Mention> mentions;  // context entities in dialogue order
    const int n_ctx = rng.uniform_int(cfg.min_context_utterances,
                                      cfg.max_context_utterances);
    for (int u = 0; u < n_ctx; ++u) {
      Utterance utt;
      utt.speaker = u % 2 == 0 ? Speaker::kA : Speaker::kB;
      if (rng.bernoulli(cfg.filler_rate)) {
        utt.tokens.push_back(filler_token(rng.uniform_int(0, kFillerCount - 1)));
      }
      int verb = rng.uniform_int(0, cfg.n_predicates - 1);
      int subj = random_entity_of_type(cfg, subject_type(cfg, verb), rng);
      int obj = random_entity_of_type(cfg, object_type(cfg, verb), rng);
      if (cfg.n_entity_types == 1) {
        while (obj == subj) obj = rng.uniform_int(0, cfg.n_entities - 1);
      }
      mentions.push_back({u, static_cast<int>(utt.tokens.size()), subj});
      utt.tokens.push_back(entity_token(subj));
      utt.tokens.push_back(predicate_token(verb));
      mentions.push_back({u, static_cast<int>(utt.tokens.size()), obj});
      utt.tokens.push_back(entity_token(obj));
      inst.utterances.push_back(std::move(utt));
    }

    Utterance last;
    last.speaker = n_ctx % 2 == 0 ? Speaker::kA : Speaker::kB;
    TokenSeq rewrite;
    std::vector<ArgumentSet> gold;
    GenerationTrace trace;
    const int n_pred = rng.uniform_int(1, cfg.max_predicates_last);
    for (int k = 0; k < n_pred; ++k) {
      if (k > 0 || rng.bernoulli(cfg.filler_rate)) {
        std::string f = filler_token(rng.uniform_int(0, kFillerCount - 1));
        last.tokens.push_back(f);
        rewrite.push_back(f);
      }
      const int verb = rng.uniform_int(0, cfg.n_predicates - 1);
      std::array<SlotTrace, 2> slot_trace;
      std::array<std::optional<Span>, 2> slot_span;
      std::array<std::string, 2> slot_token;   // surface token, empty if elided
      std::array<std::string, 2> slot_entity;  // resolved entity token
      for (int side = 0; side < 2; ++side) {
        int type = side == 0 ? subject_type(cfg, verb) : object_type(cfg, verb);
        const Mention* antecedent = nullptr;
        for (auto it = mentions.rbegin(); it != mentions.rend(); ++it) {
          if (entity_type(cfg, it->entity) == type) {
            antecedent = &*it;
            break;
          }
        }
        SlotTrace& st = slot_trace[side];
        st.eligible = antecedent != nullptr;
        if (st.eligible) {
          double u = rng.uniform01();
          if (u < cfg.pronoun_rate) {
            st.realization = SlotRealization::kPronoun;
          } else if (u < cfg.pronoun_rate + cfg.ellipsis_rate) {
            st.realization = SlotRealization::kElided;
          }
        }
        if (st.realization == SlotRealization::kExplicit) {
          slot_entity[side] = entity_token(random_entity_of_type(cfg, type, rng));
          slot_token[side] = slot_entity[side];
        } else {
          slot_entity[side] = entity_token(antecedent->entity);
          slot_span[side] = Span{antecedent->utterance, antecedent->position,
                                 antecedent->position};
          if (st.realization == SlotRealization::kPronoun) {
            slot_token[side] = std::string(kPronoun);
          }
        }
      }
      const int last_index = n_ctx;
      auto emit_slot = [&](int side) {
        if (!slot_token[side].empty()) {
          int pos = static_cast<int>(last.tokens.size());
          last.tokens.push_back(slot_token[side]);
          if (!slot_span[side]) slot_span[side] = Span{last_index, pos, pos};
        }
        rewrite.push_back(slot_entity[side]);
      };
      emit_slot(0);
      inst.predicates.push_back({last_index, static_cast<int>(last.tokens.size())});
      last.tokens.push_back(predicate_token(verb));
      rewrite.push_back(predicate_token(verb));
      emit_slot(1);

      ArgumentSet args;
      args.set(Role::kArg0, *slot_span[0]);
      args.set(Role::kArg1, *slot_span[1]);
      gold.push_back(args);
      trace.slots.push_back(slot_trace);
    }
    inst.utterances.push_back(std::move(last));
    inst.gold_a = std::move(gold);
    inst.gold_b = std::move(rewrite);
    inst.trace = std::move(trace);
    corpus.push_back(std::move(inst));
  }
  return corpus;
}

std::vector<ArgumentSet> oracle_labeler(std::span<const std::string> utterance,
                                        std::span<const int> predicates,
                                        int utterance_index) {
  const int n = static_cast<int>(utterance.size());
  std::vector<ArgumentSet> out;
  out.reserve(predicates.size());
  for (int p : predicates) {
    if (p < 0 || p >= n) throw std::out_of_range("oracle_labeler: predicate index");
    ArgumentSet args;
    if (p - 1 >= 0 && is_entity(utterance[p - 1])) {
      args.set(Role::kArg0, Span{utterance_index, p - 1, p - 1});
    }
    if (p + 1 < n && is_entity(utterance[p + 1])) {
      args.set(Role::kArg1, Span{utterance_index, p + 1, p + 1});
    }
    out.push_back(args);
  }
  return out;
}

}  // namespace friendlab
